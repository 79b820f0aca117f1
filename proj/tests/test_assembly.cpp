#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ucfem/assembly.hpp"
#include "ucfem/errors.hpp"
#include "ucfem/quadrature.hpp"

using namespace ucfem;

namespace {

double max_abs_diff(const oracle::Dense& a, const oracle::Dense& b) { return (a - b).cwiseAbs().maxCoeff(); }

ProblemConfig make(double mu, Vec2 beta, RegionSpec omega = Rectangle{0.0, 0.2, 0.4, 0.6}) {
    ProblemConfig c;
    c.mu = mu;
    c.beta = beta;
    c.omega = std::move(omega);
    return c;
}

} // namespace

TEST_CASE("quadrature rules integrate polynomials exactly") {
    const std::array<Vec2, 3> c{Vec2{0.1, 0.2}, Vec2{0.9, 0.3}, Vec2{0.4, 0.8}};
    auto poly = [](Vec2 p, int d) { return std::pow(p.x, d - d / 2) * std::pow(p.y, d / 2) + 1.0; };
    for (int d = 0; d <= 5; ++d) {
        const double ref = oracle::integrate_triangle(c, [&](Vec2 p) { return poly(p, d); });
        const double area = oracle::area(c);
        double q5 = 0.0;
        for (const auto& q : triangle_rule_degree5())
            q5 += q.weight * poly(map_barycentric(c, q.bary), d);
        CHECK(q5 * area == doctest::Approx(ref).epsilon(1e-13));
        if (d <= 4) {
            double q4 = 0.0;
            for (const auto& q : triangle_rule_degree4())
                q4 += q.weight * poly(map_barycentric(c, q.bary), d);
            CHECK(q4 * area == doctest::Approx(ref).epsilon(1e-13));
        }
        double s = 0.0;
        for (const auto& q : segment_rule_gauss3())
            s += q.weight * std::pow(q.t, d);
        CHECK(s == doctest::Approx(1.0 / (d + 1)).epsilon(1e-14));
    }
}

TEST_CASE("local P1 stiffness and convection on the reference triangle") {
    const std::array<Vec2, 3> c{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
    const auto g = p1_gradients(c);
    const double area = 0.5;
    const double expected[3][3] = {{2, -1, -1}, {-1, 1, 0}, {-1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(area * dot(g[i], g[j]) == doctest::Approx(0.5 * expected[i][j]));
    // beta = (1, 0) against grad phi_0 = (-1, -1): -|K|/3 per test function
    for (int i = 0; i < 3; ++i)
        CHECK(dot(Vec2{1.0, 0.0}, g[0]) * area / 3.0 == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("a_h matches brute-force quadrature assembly") {
    for (int n : {2, 3}) {
        const Mesh mesh = build_mesh(n);
        const auto c = make(1e-2, {1.0, 0.0});
        CHECK(max_abs_diff(oracle::dense(assemble_a(mesh, c)), oracle::a_form(mesh, c)) < 1e-12);
        const auto c2 = make(0.7, {-0.3, 1.2});
        CHECK(max_abs_diff(oracle::dense(assemble_a(mesh, c2)), oracle::a_form(mesh, c2)) < 1e-12);
    }
}

TEST_CASE("a_h annihilates constants") {
    // a(1, w) = 0 since every term of the form carries a derivative of the trial function
    const Mesh mesh = build_mesh(6);
    const SparseMatrix a = assemble_a(mesh, make(0.3, {1.0, 0.5}));
    const Vector ones = Vector::Ones(static_cast<Eigen::Index>(mesh.num_nodes()));
    CHECK((a * ones).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gradient jump penalty") {
    const Mesh mesh = build_mesh(4);
    const auto c = make(1e-2, {1.0, 0.0});
    const SparseMatrix s = assemble_s_Omega(mesh, c);

    SUBCASE("matches brute-force face loop on n = 2") {
        const Mesh m2 = build_mesh(2);
        CHECK(max_abs_diff(oracle::dense(assemble_s_Omega(m2, c)), oracle::s_interior_form(m2, c)) < 1e-12);
    }
    SUBCASE("linear functions have no jumps") {
        Vector v(static_cast<Eigen::Index>(mesh.num_nodes()));
        for (const auto& node : mesh.nodes())
            v[static_cast<Eigen::Index>(node.index)] = 0.3 - 1.7 * node.p.x + 2.5 * node.p.y;
        CHECK(std::abs(v.dot(s * v)) < 1e-12);
    }
    SUBCASE("single diagonal face by hand") {
        // Cell (0, 0) has the rising diagonal; nodes (h, 0) and (0, h) only meet across it.
        // Both basis functions jump by sqrt(2)/h in the normal derivative, and h_F = sqrt(2) h:
        // gamma h_F (mu + |beta| h_F) (2/h^2) h_F = 4 gamma (mu + sqrt(2) |beta| h).
        const double h = 0.25;
        const double expected = 4.0 * c.gamma * (c.mu + std::sqrt(2.0) * h);
        CHECK(s.coeff(1, 5) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(s.coeff(5, 1) == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("symmetric positive semidefinite") {
        const oracle::Dense d = oracle::dense(s);
        CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
        std::mt19937_64 rng(7);
        std::normal_distribution<double> nd;
        for (int k = 0; k < 50; ++k) {
            Vector v(d.rows());
            for (auto& x : v)
                x = nd(rng);
            CHECK(v.dot(s * v) >= -1e-12);
        }
    }
}

TEST_CASE("dual stabilizer") {
    const auto c = make(1e-2, {1.0, 0.0});
    SUBCASE("matches brute-force assembly on n = 2") {
        const Mesh m2 = build_mesh(2);
        CHECK(max_abs_diff(oracle::dense(assemble_s_star(m2, c)), oracle::s_star_form(m2, c)) < 1e-12);
        auto c3 = c;
        c3.gamma_star = 2.5;
        c3.gamma = 0.1;
        CHECK(max_abs_diff(oracle::dense(assemble_s_star(m2, c3)), oracle::s_star_form(m2, c3)) < 1e-12);
    }
    SUBCASE("zero constant gives the zero matrix") {
        auto c0 = c;
        c0.gamma_star = 0.0;
        CHECK(assemble_s_star(build_mesh(3), c0).cwiseAbs().sum() == 0.0);
    }
    SUBCASE("constants only see the boundary mass") {
        for (int n : {4, 8}) {
            const Mesh mesh = build_mesh(n);
            const SparseMatrix s = assemble_s_star(mesh, c);
            const Vector ones = Vector::Ones(static_cast<Eigen::Index>(mesh.num_nodes()));
            const double h = 1.0 / n;
            CHECK(ones.dot(s * ones) == doctest::Approx(c.gamma_star * (1.0 + c.mu / h) * 4.0).epsilon(1e-13));
        }
    }
    SUBCASE("symmetric") {
        const oracle::Dense d = oracle::dense(assemble_s_star(build_mesh(5), c));
        CHECK((d - d.transpose()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(Eigen::SelfAdjointEigenSolver<oracle::Dense>(d).eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("data term") {
    SUBCASE("penalty coefficient") {
        const auto c = make(1e-2, {1.0, 0.0});
        CHECK(data_penalty_coefficient(c, 1.0 / 64) == doctest::Approx(104.96).epsilon(1e-14));
        auto c1 = c;
        c1.zeta = 1.0;
        CHECK(data_penalty_coefficient(c1, 1.0 / 64) == doctest::Approx(64.64).epsilon(1e-14));
    }
    SUBCASE("whole square gives the scaled mass matrix") {
        const Mesh mesh = build_mesh(6);
        const auto c = make(1e-2, {1.0, 0.0}, RegionSpec::unit_square());
        const double coef = data_penalty_coefficient(c, 1.0 / 6);
        const oracle::Dense s = oracle::dense(assemble_s_omega(mesh, c));
        const oracle::Dense mass = oracle::dense(assemble_mass(mesh));
        CHECK((s - coef * mass).cwiseAbs().maxCoeff() < 1e-12 * coef);
        CHECK(s.sum() == doctest::Approx(coef).epsilon(1e-13));
        CHECK(mass.sum() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("side strip selects the 2x2 cell block") {
        const Mesh mesh = build_mesh(10);
        const auto c = make(1e-2, {1.0, 0.0});
        const double coef = data_penalty_coefficient(c, 0.1);
        const oracle::Dense s = oracle::dense(assemble_s_omega(mesh, c));
        CHECK(max_abs_diff(s, oracle::region_mass(mesh, c.omega, coef)) < 1e-12 * coef);
        // Eight triangles of area 1/200
        CHECK(s.sum() == doctest::Approx(coef * 8.0 / 200.0).epsilon(1e-13));
        for (Eigen::Index i = 0; i < s.rows(); ++i) {
            const Vec2 p = mesh.point(static_cast<Index>(i));
            const bool in_block = p.x <= 0.2 + 1e-12 && p.y >= 0.4 - 1e-12 && p.y <= 0.6 + 1e-12;
            if (!in_block)
                CHECK(s.row(i).cwiseAbs().sum() == 0.0);
        }
    }
    SUBCASE("empty data set is rejected") {
        const Mesh mesh = build_mesh(4);
        const auto c = make(1e-2, {1.0, 0.0}, Disk{{0.3, 0.3}, 0.01});
        CHECK_THROWS_AS(assemble_s_omega(mesh, c), EmptyRegionError);
    }
}

TEST_CASE("load vector") {
    SUBCASE("constant source gives the lumped areas") {
        const Mesh mesh = build_mesh(5);
        const auto c = make(0.37, {1.0, 0.0});
        const Vector f = assemble_load(mesh, c, ExactSolution::linear(0.0, 1.0, 0.0));
        Vector expected = Vector::Zero(f.size());
        for (const auto& t : mesh.triangles())
            for (const Index v : t.vertices)
                expected[static_cast<Eigen::Index>(v)] += t.area / 3.0;
        CHECK((f - expected).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(f.sum() == doctest::Approx(1.0));
    }
    SUBCASE("product sine matches a high-order oracle") {
        // The six-point rule is only degree 4, so agreement is limited by how well
        // the mesh resolves sin(5 pi x): about 0.2% at n = 8, far below 1e-6 at n = 64.
        const auto c = make(1.0, {1.0, 0.0});
        const auto u = ExactSolution::product_sine();
        const double a = 5.0 * std::numbers::pi;
        auto source = [&](Vec2 p) {
            return 2.0 * (2.0 * a * a * std::sin(a * p.x) * std::sin(a * p.y) + a * std::cos(a * p.x) * std::sin(a * p.y));
        };
        for (const auto& [n, tol] : {std::pair{8, 5e-3}, std::pair{64, 1e-6}}) {
            const Mesh mesh = build_mesh(n);
            const Vector f = assemble_load(mesh, c, u);
            const Eigen::VectorXd ref = oracle::load(mesh, source);
            CHECK((f - ref).norm() <= tol * ref.norm());
        }
    }
    SUBCASE("layer solution assembles") {
        const Mesh mesh = build_mesh(64);
        const Vector f = assemble_load(mesh, make(1e-6, {1.0, 0.0}), ExactSolution::layer());
        CHECK(f.allFinite());
        CHECK(f.size() == 65 * 65);
    }
}

TEST_CASE("data right-hand side") {
    const Mesh mesh = build_mesh(8);
    const auto c = make(1e-2, {1.0, 0.0}, Disk{{0.5, 0.5}, 0.2});
    const SparseMatrix s = assemble_s_omega(mesh, c);

    SUBCASE("linear data gives S_omega times the nodal values") {
        const auto u = ExactSolution::linear(1.0, 2.0, 3.0);
        NodalData data(mesh.num_nodes());
        Vector nodal = interpolate(mesh, u);
        for (std::size_t k = 0; k < data.size(); ++k)
            data[k] = nodal[static_cast<Eigen::Index>(k)];
        const Vector g = assemble_data_rhs(mesh, c, data);
        CHECK((g - s * nodal).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("zero data") {
        const NodalData data(mesh.num_nodes(), 0.0);
        CHECK(assemble_data_rhs(mesh, c, data).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("single element with unit data") {
        const Triangle& t = mesh.triangles()[17];
        const auto cs = make(1e-2, {1.0, 0.0}, Disk{mesh.barycenter(t), 0.01});
        NodalData data(mesh.num_nodes());
        for (const Index v : t.vertices)
            data[v] = 1.0;
        const Vector g = assemble_data_rhs(mesh, cs, data);
        const double coef = data_penalty_coefficient(cs, 1.0 / 8);
        for (const Index v : t.vertices)
            CHECK(g[static_cast<Eigen::Index>(v)] == doctest::Approx(coef * t.area / 3.0).epsilon(1e-14));
        CHECK(g.cwiseAbs().sum() == doctest::Approx(coef * t.area).epsilon(1e-14));
    }
    SUBCASE("missing values on data elements are reported") {
        const NodalData empty(mesh.num_nodes());
        CHECK_THROWS_AS(assemble_data_rhs(mesh, c, empty), InvalidDataError);
        const NodalData short_data(3, 1.0);
        CHECK_THROWS_AS(assemble_data_rhs(mesh, c, short_data), InvalidDataError);
    }
}

TEST_CASE("configuration validation") {
    auto c = make(1e-2, {1.0, 0.0});
    CHECK_NOTHROW(c.validate());
    auto bad = c;
    bad.mu = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = c;
    bad.beta = {0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = c;
    bad.zeta = 2.5;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = c;
    bad.gamma = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("matrix market output") {
    SparseMatrix m(2, 3);
    m.insert(0, 1) = 1.5;
    m.insert(1, 2) = -2.0;
    std::ostringstream out;
    write_matrix_market(out, m);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "%%MatrixMarket matrix coordinate real general");
    int r = 0, cols = 0, nnz = 0;
    in >> r >> cols >> nnz;
    CHECK(r == 2);
    CHECK(cols == 3);
    CHECK(nnz == 2);
    int i = 0, j = 0;
    double v = 0;
    in >> i >> j >> v;
    CHECK(i == 1);
    CHECK(j == 2);
    CHECK(v == 1.5);
    CHECK_THROWS_AS(write_matrix_market(std::string("/nonexistent-dir/m.mtx"), m), IoError);
}
