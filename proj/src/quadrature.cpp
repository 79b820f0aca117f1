#include "ucfem/quadrature.hpp"

#include <cmath>

namespace ucfem {

namespace {

// Strang-Fix / Dunavant degree-4 rule.
constexpr double d4_a1 = 0.445948490915964886318329253883;
constexpr double d4_w1 = 0.223381589678011465944092807060;
constexpr double d4_a2 = 0.091576213509770743459571463402;
constexpr double d4_w2 = 0.109951743655321867389240526273;

constexpr std::array<TriangleQuadPoint, 6> degree4{{
    {{d4_a1, d4_a1, 1.0 - 2.0 * d4_a1}, d4_w1},
    {{d4_a1, 1.0 - 2.0 * d4_a1, d4_a1}, d4_w1},
    {{1.0 - 2.0 * d4_a1, d4_a1, d4_a1}, d4_w1},
    {{d4_a2, d4_a2, 1.0 - 2.0 * d4_a2}, d4_w2},
    {{d4_a2, 1.0 - 2.0 * d4_a2, d4_a2}, d4_w2},
    {{1.0 - 2.0 * d4_a2, d4_a2, d4_a2}, d4_w2},
}};

// Radon's degree-5 rule: a = (6 -+ sqrt15)/21, w = (155 -+ sqrt15)/1200.
std::array<TriangleQuadPoint, 7> make_degree5() {
    const double s15 = std::sqrt(15.0);
    const double a = (6.0 - s15) / 21.0, wa = (155.0 - s15) / 1200.0;
    const double b = (6.0 + s15) / 21.0, wb = (155.0 + s15) / 1200.0;
    return {{
        {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 40.0},
        {{a, a, 1.0 - 2.0 * a}, wa},
        {{a, 1.0 - 2.0 * a, a}, wa},
        {{1.0 - 2.0 * a, a, a}, wa},
        {{b, b, 1.0 - 2.0 * b}, wb},
        {{b, 1.0 - 2.0 * b, b}, wb},
        {{1.0 - 2.0 * b, b, b}, wb},
    }};
}

const std::array<TriangleQuadPoint, 7> degree5 = make_degree5();

const std::array<SegmentQuadPoint, 3> gauss3{{
    {0.5 - 0.5 * std::sqrt(0.6), 5.0 / 18.0},
    {0.5, 8.0 / 18.0},
    {0.5 + 0.5 * std::sqrt(0.6), 5.0 / 18.0},
}};

} // namespace

std::span<const TriangleQuadPoint> triangle_rule_degree4() { return degree4; }
std::span<const TriangleQuadPoint> triangle_rule_degree5() { return degree5; }
std::span<const SegmentQuadPoint> segment_rule_gauss3() { return gauss3; }

} // namespace ucfem
