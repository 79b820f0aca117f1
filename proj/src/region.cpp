#include "ucfem/region.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ucfem/errors.hpp"

namespace ucfem {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Rectangle shape_box(const RegionSpec::Shape& s) {
    return std::visit(overloaded{[](const Disk& d) {
                                     return Rectangle{d.center.x - d.radius, d.center.x + d.radius,
                                                      d.center.y - d.radius, d.center.y + d.radius};
                                 },
                                 [](const Rectangle& r) { return r; }},
                      s);
}

} // namespace

RegionSpec::RegionSpec(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {
    if (shapes_.empty())
        throw InvalidArgument("RegionSpec: a region needs at least one shape");
    for (const auto& s : shapes_) {
        const Rectangle b = shape_box(s);
        if (!(b.x_lo < b.x_hi) || !(b.y_lo < b.y_hi))
            throw InvalidArgument("RegionSpec: degenerate shape");
        if (b.x_hi <= 0.0 || b.x_lo >= 1.0 || b.y_hi <= 0.0 || b.y_lo >= 1.0)
            throw InvalidArgument("RegionSpec: shape does not meet the unit square");
    }
}

bool RegionSpec::contains(Vec2 p) const {
    return std::any_of(shapes_.begin(), shapes_.end(), [p](const Shape& s) {
        return std::visit(overloaded{[p](const Disk& d) {
                                         const Vec2 r = p - d.center;
                                         return dot(r, r) < d.radius * d.radius;
                                     },
                                     [p](const Rectangle& r) {
                                         return p.x > r.x_lo && p.x < r.x_hi && p.y > r.y_lo && p.y < r.y_hi;
                                     }},
                          s);
    });
}

Rectangle RegionSpec::bounds() const {
    Rectangle out{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
                  std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (const auto& s : shapes_) {
        const Rectangle b = shape_box(s);
        out.x_lo = std::min(out.x_lo, b.x_lo);
        out.x_hi = std::max(out.x_hi, b.x_hi);
        out.y_lo = std::min(out.y_lo, b.y_lo);
        out.y_hi = std::max(out.y_hi, b.y_hi);
    }
    out.x_lo = std::clamp(out.x_lo, 0.0, 1.0);
    out.x_hi = std::clamp(out.x_hi, 0.0, 1.0);
    out.y_lo = std::clamp(out.y_lo, 0.0, 1.0);
    out.y_hi = std::clamp(out.y_hi, 0.0, 1.0);
    return out;
}

std::string RegionSpec::describe() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < shapes_.size(); ++k) {
        if (k)
            os << " u ";
        std::visit(overloaded{[&os](const Disk& d) {
                                  os << "B((" << d.center.x << ',' << d.center.y << ")," << d.radius << ')';
                              },
                              [&os](const Rectangle& r) {
                                  os << '(' << r.x_lo << ',' << r.x_hi << ")x(" << r.y_lo << ',' << r.y_hi << ')';
                              }},
                   shapes_[k]);
    }
    return os.str();
}

std::vector<Index> RegionSpec::select_elements(const Mesh& mesh) const {
    std::vector<Index> out;
    for (const auto& t : mesh.triangles())
        if (contains(mesh.barycenter(t)))
            out.push_back(t.index);
    return out;
}

} // namespace ucfem
