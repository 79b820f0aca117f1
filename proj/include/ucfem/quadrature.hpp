#pragma once

#include <array>
#include <span>

#include "ucfem/geometry.hpp"

namespace ucfem {

/// Quadrature node in barycentric coordinates; weights of a rule sum to 1
/// and are scaled by the element area at use.
struct TriangleQuadPoint {
    std::array<double, 3> bary;
    double weight;
};

/// 6-point rule, exact for polynomials of degree 4.
std::span<const TriangleQuadPoint> triangle_rule_degree4();
/// 7-point rule, exact for polynomials of degree 5.
std::span<const TriangleQuadPoint> triangle_rule_degree5();

/// Point on a segment, parameter t in [0, 1]; weights sum to 1.
struct SegmentQuadPoint {
    double t;
    double weight;
};

/// 3-point Gauss-Legendre, exact for degree 5.
std::span<const SegmentQuadPoint> segment_rule_gauss3();

inline Vec2 map_barycentric(const std::array<Vec2, 3>& c, const std::array<double, 3>& b) {
    return {b[0] * c[0].x + b[1] * c[1].x + b[2] * c[2].x, b[0] * c[0].y + b[1] * c[1].y + b[2] * c[2].y};
}

} // namespace ucfem
