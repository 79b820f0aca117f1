#include "ucfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <utility>

#include "ucfem/errors.hpp"

namespace ucfem {

namespace {

struct EdgeUse {
    Index tri;
    Index opposite; // vertex of tri not on the edge
};

Vec2 unit_normal(Vec2 a, Vec2 b) {
    const Vec2 t = b - a;
    const double len = norm(t);
    return {t.y / len, -t.x / len};
}

} // namespace

Mesh Mesh::build(int n) {
    if (n < 2)
        throw InvalidArgument("build_mesh: need at least 2 divisions per side, got " + std::to_string(n));

    Mesh m;
    m.n_ = n;
    m.h_ = std::sqrt(2.0) / n;

    const int np = n + 1;
    m.nodes_.reserve(static_cast<std::size_t>(np) * np);
    for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i)
            m.nodes_.push_back({m.nodes_.size(), {static_cast<double>(i) / n, static_cast<double>(j) / n}});

    auto id = [np](int i, int j) { return static_cast<Index>(j) * np + static_cast<Index>(i); };

    m.triangles_.reserve(2 * static_cast<std::size_t>(n) * n);
    auto add_tri = [&m](Index a, Index b, Index c) {
        Triangle t;
        t.index = m.triangles_.size();
        t.vertices = {a, b, c};
        const auto pts = m.corners(t);
        t.area = 0.5 * cross(pts[1] - pts[0], pts[2] - pts[0]);
        m.triangles_.push_back(t);
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            if (has_rising_diagonal(i, j)) {
                add_tri(a, b, c);
                add_tri(a, c, d);
            } else {
                add_tri(a, b, d);
                add_tri(b, c, d);
            }
        }
    }

    // Ordered map keeps face numbering deterministic.
    std::map<std::pair<Index, Index>, std::vector<EdgeUse>> edges;
    for (const auto& t : m.triangles_) {
        for (int k = 0; k < 3; ++k) {
            Index u = t.vertices[(k + 1) % 3], v = t.vertices[(k + 2) % 3];
            if (u > v)
                std::swap(u, v);
            edges[{u, v}].push_back({t.index, t.vertices[k]});
        }
    }

    for (const auto& [key, uses] : edges) {
        const Vec2 a = m.point(key.first), b = m.point(key.second);
        const double len = norm(b - a);
        Vec2 nrm = unit_normal(a, b);
        if (uses.size() == 2) {
            // Orient away from the left triangle's opposite vertex.
            if (dot(nrm, m.point(uses[0].opposite) - a) > 0.0)
                nrm = -1.0 * nrm;
            m.faces_.push_back({m.faces_.size(), {key.first, key.second}, len, uses[0].tri, uses[1].tri, nrm});
        } else {
            if (dot(nrm, m.point(uses[0].opposite) - a) > 0.0)
                nrm = -1.0 * nrm;
            m.boundary_.push_back(
                {m.boundary_.size(), {key.first, key.second}, len, uses[0].tri, nrm, BoundaryKind::unclassified});
        }
    }
    return m;
}

std::array<Vec2, 3> Mesh::corners(const Triangle& t) const {
    return {point(t.vertices[0]), point(t.vertices[1]), point(t.vertices[2])};
}

Vec2 Mesh::barycenter(const Triangle& t) const {
    const auto c = corners(t);
    return {(c[0].x + c[1].x + c[2].x) / 3.0, (c[0].y + c[1].y + c[2].y) / 3.0};
}

Mesh Mesh::classify_boundary(Vec2 beta) const {
    if (!std::isfinite(beta.x) || !std::isfinite(beta.y))
        throw InvalidArgument("classify_boundary: convection field is not finite");
    if (beta.x == 0.0 && beta.y == 0.0)
        throw InvalidArgument("classify_boundary: zero convection field has no inflow direction");

    Mesh out = *this;
    for (auto& e : out.boundary_) {
        const double bn = dot(beta, e.outward_normal);
        e.kind = bn < 0.0 ? BoundaryKind::inflow : bn > 0.0 ? BoundaryKind::outflow : BoundaryKind::tangential;
    }
    return out;
}

void Mesh::write_dump(std::ostream& out) const {
    out.precision(17);
    out << n_ << ' ' << nodes_.size() << ' ' << triangles_.size() << '\n';
    for (const auto& nd : nodes_)
        out << nd.index << ' ' << nd.p.x << ' ' << nd.p.y << '\n';
    for (const auto& t : triangles_)
        out << t.index << ' ' << t.vertices[0] << ' ' << t.vertices[1] << ' ' << t.vertices[2] << '\n';
}

void Mesh::write_dump(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open mesh dump '" + path + "' for writing");
    write_dump(out);
    if (!out)
        throw IoError("failed writing mesh dump '" + path + "'");
}

std::array<Vec2, 3> p1_gradients(const std::array<Vec2, 3>& c) {
    const double det = cross(c[1] - c[0], c[2] - c[0]);
    return {Vec2{(c[1].y - c[2].y) / det, (c[2].x - c[1].x) / det},
            Vec2{(c[2].y - c[0].y) / det, (c[0].x - c[2].x) / det},
            Vec2{(c[0].y - c[1].y) / det, (c[1].x - c[0].x) / det}};
}

} // namespace ucfem
