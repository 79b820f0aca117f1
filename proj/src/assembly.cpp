#include "ucfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <utility>

#include "ucfem/errors.hpp"
#include "ucfem/quadrature.hpp"

namespace ucfem {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(std::size_t n, const Triplets& t) {
    SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

void add(Triplets& t, Index i, Index j, double v) {
    t.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
}

void add_stiffness(const Mesh& mesh, double scale, Triplets& out) {
    for (const auto& tri : mesh.triangles()) {
        const auto g = p1_gradients(mesh.corners(tri));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                add(out, tri.vertices[a], tri.vertices[b], scale * tri.area * dot(g[a], g[b]));
    }
}

// Per interior face: the (up to four) nodes of the two neighbours and the normal
// gradient jump of each basis function.
struct FaceJumps {
    std::array<Index, 4> nodes{};
    std::array<double, 4> jump{};
    int count = 0;
};

FaceJumps face_jumps(const Mesh& mesh, const InteriorFace& f) {
    FaceJumps fj;
    auto accumulate = [&](const Triangle& t, double sign) {
        const auto g = p1_gradients(mesh.corners(t));
        for (int a = 0; a < 3; ++a) {
            const Index v = t.vertices[a];
            int slot = 0;
            while (slot < fj.count && fj.nodes[slot] != v)
                ++slot;
            if (slot == fj.count) {
                fj.nodes[slot] = v;
                fj.jump[slot] = 0.0;
                ++fj.count;
            }
            fj.jump[slot] += sign * dot(g[a], f.normal);
        }
    };
    accumulate(mesh.triangles()[f.left_tri], 1.0);
    accumulate(mesh.triangles()[f.right_tri], -1.0);
    return fj;
}

void add_jump_penalty(const Mesh& mesh, const ProblemConfig& c, double scale, Triplets& out) {
    const double bn = c.beta_norm();
    for (const auto& f : mesh.interior_faces()) {
        const double hf = f.length;
        const double weight = scale * c.gamma * hf * hf * (c.mu + bn * hf);
        const FaceJumps fj = face_jumps(mesh, f);
        for (int a = 0; a < fj.count; ++a)
            for (int b = 0; b < fj.count; ++b)
                add(out, fj.nodes[a], fj.nodes[b], weight * fj.jump[a] * fj.jump[b]);
    }
}

void add_element_mass(const Triangle& t, double scale, Triplets& out) {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            add(out, t.vertices[a], t.vertices[b], scale * t.area / 12.0 * (a == b ? 2.0 : 1.0));
}

} // namespace

void ProblemConfig::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw InvalidArgument("ProblemConfig: diffusion coefficient must be positive and finite");
    if (!std::isfinite(beta.x) || !std::isfinite(beta.y) || !(beta_norm() > 0.0))
        throw InvalidArgument("ProblemConfig: convection field must be finite and nonzero");
    if (!(gamma >= 0.0) || !(gamma_star >= 0.0))
        throw InvalidArgument("ProblemConfig: stabilization constants must be nonnegative");
    if (!(zeta >= 0.0 && zeta <= 2.0))
        throw InvalidArgument("ProblemConfig: data penalty exponent must lie in [0, 2]");
}

SparseMatrix assemble_a(const Mesh& mesh, const ProblemConfig& c) {
    c.validate();
    Triplets t;
    t.reserve(mesh.num_triangles() * 9 * 2 + mesh.boundary_edges().size() * 6);

    for (const auto& tri : mesh.triangles()) {
        const auto g = p1_gradients(mesh.corners(tri));
        for (int j = 0; j < 3; ++j) {
            const double conv = dot(c.beta, g[j]) * tri.area / 3.0;
            for (int i = 0; i < 3; ++i)
                add(t, tri.vertices[i], tri.vertices[j], conv + c.mu * tri.area * dot(g[i], g[j]));
        }
    }

    // -<mu grad(phi_j).n, phi_i> on each boundary edge; grad from the owner element.
    for (const auto& e : mesh.boundary_edges()) {
        const Triangle& tri = mesh.triangles()[e.owner_tri];
        const auto g = p1_gradients(mesh.corners(tri));
        for (int j = 0; j < 3; ++j) {
            const double flux = -c.mu * dot(g[j], e.outward_normal) * e.length / 2.0;
            for (const Index i : e.endpoints)
                add(t, i, tri.vertices[j], flux);
        }
    }
    return from_triplets(mesh.num_nodes(), t);
}

SparseMatrix assemble_s_Omega(const Mesh& mesh, const ProblemConfig& c) {
    c.validate();
    Triplets t;
    t.reserve(mesh.interior_faces().size() * 16);
    add_jump_penalty(mesh, c, 1.0, t);
    return from_triplets(mesh.num_nodes(), t);
}

SparseMatrix assemble_s_star(const Mesh& mesh, const ProblemConfig& c) {
    c.validate();
    Triplets t;
    t.reserve(mesh.interior_faces().size() * 16 + mesh.num_triangles() * 9 + mesh.boundary_edges().size() * 4);
    const double bn = c.beta_norm();
    for (const auto& e : mesh.boundary_edges()) {
        const double w = c.gamma_star * (bn + c.mu / e.length) * e.length / 6.0;
        const auto [p, q] = e.endpoints;
        add(t, p, p, 2.0 * w);
        add(t, q, q, 2.0 * w);
        add(t, p, q, w);
        add(t, q, p, w);
    }
    add_stiffness(mesh, c.gamma_star * c.mu, t);
    add_jump_penalty(mesh, c, c.gamma_star, t);
    return from_triplets(mesh.num_nodes(), t);
}

double data_penalty_coefficient(const ProblemConfig& c, double h) {
    return c.beta_norm() / h + c.mu * std::pow(h, -c.zeta);
}

SparseMatrix assemble_s_omega(const Mesh& mesh, const ProblemConfig& c) {
    c.validate();
    const auto elements = c.omega.select_elements(mesh);
    if (elements.empty())
        throw EmptyRegionError("s_omega: no element barycenter lies in the data region " + c.omega.describe());
    const double coef = data_penalty_coefficient(c, mesh.cell_width());
    Triplets t;
    t.reserve(elements.size() * 9);
    for (const Index k : elements)
        add_element_mass(mesh.triangles()[k], coef, t);
    return from_triplets(mesh.num_nodes(), t);
}

SparseMatrix assemble_mass(const Mesh& mesh) {
    Triplets t;
    t.reserve(mesh.num_triangles() * 9);
    for (const auto& tri : mesh.triangles())
        add_element_mass(tri, 1.0, t);
    return from_triplets(mesh.num_nodes(), t);
}

Vector assemble_load(const Mesh& mesh, const ProblemConfig& c, const ExactSolution& exact) {
    c.validate();
    Vector f = Vector::Zero(static_cast<Eigen::Index>(mesh.num_nodes()));
    const auto rule = triangle_rule_degree4();
    for (const auto& tri : mesh.triangles()) {
        const auto corners = mesh.corners(tri);
        for (const auto& q : rule) {
            const double fw = exact.source(map_barycentric(corners, q.bary), c.mu, c.beta) * q.weight * tri.area;
            for (int a = 0; a < 3; ++a)
                f[static_cast<Eigen::Index>(tri.vertices[a])] += fw * q.bary[a];
        }
    }
    return f;
}

Vector assemble_data_rhs(const Mesh& mesh, const ProblemConfig& c, const NodalData& data) {
    if (data.size() != mesh.num_nodes())
        throw InvalidDataError("data rhs: expected " + std::to_string(mesh.num_nodes()) + " nodal entries, got " +
                               std::to_string(data.size()));
    const SparseMatrix s = assemble_s_omega(mesh, c);
    Vector d = Vector::Zero(static_cast<Eigen::Index>(mesh.num_nodes()));
    for (const Index k : c.omega.select_elements(mesh)) {
        for (const Index v : mesh.triangles()[k].vertices) {
            if (!data[v])
                throw InvalidDataError("data rhs: node " + std::to_string(v) + " of data element " +
                                       std::to_string(k) + " has no value");
            d[static_cast<Eigen::Index>(v)] = *data[v];
        }
    }
    return s * d;
}

Vector interpolate(const Mesh& mesh, const ExactSolution& exact) {
    Vector u(static_cast<Eigen::Index>(mesh.num_nodes()));
    for (const auto& nd : mesh.nodes())
        u[static_cast<Eigen::Index>(nd.index)] = exact.value(nd.p);
    return u;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    out.precision(17);
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(m, r); it; ++it)
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

void write_matrix_market(const std::string& path, const SparseMatrix& m) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open matrix dump '" + path + "' for writing");
    write_matrix_market(out, m);
}

} // namespace ucfem
