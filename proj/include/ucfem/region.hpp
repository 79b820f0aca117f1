#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ucfem/geometry.hpp"
#include "ucfem/mesh.hpp"

namespace ucfem {

struct Disk {
    Vec2 center;
    double radius = 0.0;
};

struct Rectangle {
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
};

/// A subset of the unit square given as a union of disks and rectangles.
///
/// Elements belong to a region when their barycenter does; a disk is therefore
/// resolved as a polygonal union of elements.
class RegionSpec {
public:
    using Shape = std::variant<Disk, Rectangle>;

    RegionSpec() = default;
    RegionSpec(Disk d) : RegionSpec(std::vector<Shape>{d}) {}
    RegionSpec(Rectangle r) : RegionSpec(std::vector<Shape>{r}) {}
    explicit RegionSpec(std::vector<Shape> shapes);

    static RegionSpec unit_square() { return Rectangle{0.0, 1.0, 0.0, 1.0}; }

    bool contains(Vec2 p) const;
    const std::vector<Shape>& shapes() const noexcept { return shapes_; }

    /// Bounding box clipped to the unit square.
    Rectangle bounds() const;
    std::string describe() const;

    /// Indices of the triangles whose barycenter lies in the region, ascending.
    std::vector<Index> select_elements(const Mesh& mesh) const;

private:
    std::vector<Shape> shapes_;
};

} // namespace ucfem
