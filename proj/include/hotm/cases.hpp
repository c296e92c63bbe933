#pragma once

#include "hotm/constants.hpp"
#include "hotm/elements/states.hpp"
#include "hotm/errors.hpp"

namespace hotm {

// Catalog of the reference scenarios: initial osculating classical elements
// (always starting on the equatorial plane) and the perturbations enabled.
struct TestCase {
    int id = 0;
    elements::CoeState coe{};
    bool j3j4 = false;
    bool drag = false;
    const char* label = "";
};

inline TestCase test_case(int id) {
    const double d = kDegToRad;
    switch (id) {
        case 1: return {1, {6878.1363, 0.01, 30 * d, 30 * d, 30 * d, 330 * d}, false, false, "LEO J2"};
        case 2: return {2, {6878.1363, 0.01, 0.0, 30 * d, 30 * d, 330 * d}, false, false, "LEO J2 equatorial"};
        case 3: return {3, {6878.1363, 0.01, 63.4499 * d, 30 * d, 30 * d, 330 * d}, false, false, "LEO J2 critical"};
        case 4: return {4, {6878.1363, 0.01, 90 * d, 30 * d, 30 * d, 330 * d}, false, false, "LEO J2 polar"};
        case 5: return {5, {26561.7438, 0.7411188, 63.4428 * d, 30 * d, 270 * d, 90 * d}, false, false, "HEO J2 critical"};
        case 6: return {6, {26561.7438, 0.7411188, 30 * d, 30 * d, 270 * d, 90 * d}, false, false, "HEO J2"};
        case 7: return {7, {7178.1363, 0.001, 30 * d, 30 * d, 30 * d, 330 * d}, true, false, "LEO J2-J4"};
        case 8: return {8, {6878.1363, 0.01, 30 * d, 30 * d, 30 * d, 330 * d}, true, true, "LEO J2-J4 drag"};
        case 9: return {9, {6878.1363, 0.0, 97.42 * d, 0.0, 0.0, 0.0}, true, false, "fixed point J2-J4"};
        default: throw ConfigError("unknown test case id " + std::to_string(id));
    }
}

} // namespace hotm
