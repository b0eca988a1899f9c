#include <doctest.h>

#include "properties.hpp"

TEST_CASE("property suites") {
    for (const auto& p : irk::props::all_properties()) {
        CAPTURE(p.detail);
        CHECK_MESSAGE(p.passed, p.name);
    }
}
