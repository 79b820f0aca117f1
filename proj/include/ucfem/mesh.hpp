#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ucfem/geometry.hpp"

namespace ucfem {

using Index = std::size_t;

struct Node {
    Index index = 0;
    Vec2 p;
};

struct Triangle {
    Index index = 0;
    std::array<Index, 3> vertices{}; // counterclockwise
    double area = 0.0;
};

struct InteriorFace {
    Index index = 0;
    std::array<Index, 2> endpoints{};
    double length = 0.0;
    Index left_tri = 0;
    Index right_tri = 0;
    Vec2 normal; // unit, pointing from left_tri into right_tri
};

enum class BoundaryKind { unclassified, inflow, outflow, tangential };

struct BoundaryEdge {
    Index index = 0;
    std::array<Index, 2> endpoints{};
    double length = 0.0;
    Index owner_tri = 0;
    Vec2 outward_normal;
    BoundaryKind kind = BoundaryKind::unclassified;
};

/// Structured triangulation of the unit square with n cells per side.
///
/// Cell (i, j) spans [i/n, (i+1)/n] x [j/n, (j+1)/n] and is split by one
/// diagonal: lower-left to upper-right when i + j is even, upper-left to
/// lower-right otherwise. Node (i, j) has index j * (n + 1) + i.
/// Immutable after construction.
class Mesh {
public:
    static Mesh build(int n);

    int divisions() const noexcept { return n_; }
    /// Maximum element diameter, sqrt(2)/n.
    double h() const noexcept { return h_; }
    /// Width of one grid cell, 1/n. This is the h reported by experiments.
    double cell_width() const noexcept { return 1.0 / n_; }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
    const std::vector<InteriorFace>& interior_faces() const noexcept { return faces_; }
    const std::vector<BoundaryEdge>& boundary_edges() const noexcept { return boundary_; }

    std::size_t num_nodes() const noexcept { return nodes_.size(); }
    std::size_t num_triangles() const noexcept { return triangles_.size(); }

    Vec2 point(Index node) const { return nodes_[node].p; }
    std::array<Vec2, 3> corners(const Triangle& t) const;
    Vec2 barycenter(const Triangle& t) const;

    /// True when cell (i, j) carries the lower-left to upper-right diagonal.
    static bool has_rising_diagonal(int i, int j) noexcept { return (i + j) % 2 == 0; }

    /// Copy of this mesh with every boundary edge labelled by the sign of beta.n.
    Mesh classify_boundary(Vec2 beta) const;

    void write_dump(std::ostream& out) const;
    void write_dump(const std::string& path) const;

private:
    int n_ = 0;
    double h_ = 0.0;
    std::vector<Node> nodes_;
    std::vector<Triangle> triangles_;
    std::vector<InteriorFace> faces_;
    std::vector<BoundaryEdge> boundary_;
};

inline Mesh build_mesh(int n) { return Mesh::build(n); }
inline Mesh classify_boundary(const Mesh& mesh, Vec2 beta) { return mesh.classify_boundary(beta); }

/// Gradients of the three P1 basis functions on a triangle (constant per element).
std::array<Vec2, 3> p1_gradients(const std::array<Vec2, 3>& corners);

} // namespace ucfem
