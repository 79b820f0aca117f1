#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "ucfem/assembly.hpp"
#include "ucfem/errors.hpp"
#include "ucfem/saddle_solver.hpp"

using namespace ucfem;

namespace {

struct Problem {
    Mesh mesh;
    ProblemConfig config;
    SaddleSystem system;
};

Problem make_problem(int n, double mu, const RegionSpec& omega, const ExactSolution& u) {
    ProblemConfig c;
    c.mu = mu;
    c.omega = omega;
    Mesh mesh = build_mesh(n).classify_boundary(c.beta);
    NodalData data(mesh.num_nodes());
    for (const auto& node : mesh.nodes())
        data[node.index] = u.value(node.p);
    SaddleSystem sys = build_system(assemble_a(mesh, c), assemble_s_Omega(mesh, c) + assemble_s_omega(mesh, c),
                                    assemble_s_star(mesh, c), assemble_load(mesh, c, u), assemble_data_rhs(mesh, c, data));
    return {std::move(mesh), c, std::move(sys)};
}

SparseMatrix identity(Eigen::Index n) {
    SparseMatrix m(n, n);
    m.setIdentity();
    return m;
}

} // namespace

TEST_CASE("block layout") {
    const Problem p = make_problem(2, 1e-2, Rectangle{0.0, 0.5, 0.0, 0.5}, ExactSolution::product_sine());
    CHECK(p.system.size() == 18);
    CHECK(p.system.block_size() == 9);
    const Eigen::MatrixXd m(p.system.matrix());
    CHECK(m.rows() == 18);
    CHECK(m.cols() == 18);
    const Eigen::MatrixXd a(p.system.a()), s(p.system.s()), ss(p.system.s_star());
    CHECK((m.topLeftCorner(9, 9) - a).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.topRightCorner(9, 9) + ss).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.bottomLeftCorner(9, 9) - s).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.bottomRightCorner(9, 9) - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() > 0.0);

    const Vector rhs = p.system.rhs();
    CHECK((rhs.head(9) - p.system.f()).norm() == 0.0);
    CHECK((rhs.tail(9) - p.system.g()).norm() == 0.0);
}

TEST_CASE("zero stabilizers leave a block-diagonal matrix") {
    const Mesh mesh = build_mesh(3);
    ProblemConfig c;
    const SparseMatrix a = assemble_a(mesh, c);
    const auto n = a.rows();
    const SparseMatrix zero(n, n);
    const SaddleSystem sys = build_system(a, zero, zero, Vector::Zero(n), Vector::Zero(n));
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    expected.topLeftCorner(n, n) = Eigen::MatrixXd(a);
    expected.bottomRightCorner(n, n) = Eigen::MatrixXd(a).transpose();
    CHECK((Eigen::MatrixXd(sys.matrix()) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
    const SparseMatrix i3 = identity(3), i4 = identity(4);
    CHECK_THROWS_AS(build_system(i3, i4, i3, Vector::Zero(3), Vector::Zero(3)), InvalidArgument);
    CHECK_THROWS_AS(build_system(i3, i3, i3, Vector::Zero(4), Vector::Zero(3)), InvalidArgument);
    SparseMatrix rect(3, 4);
    CHECK_THROWS_AS(build_system(rect, i3, i3, Vector::Zero(3), Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("linear solutions are reproduced exactly") {
    const auto u = ExactSolution::linear(1.0, 2.0, 3.0);
    for (double mu : {1.0, 1e-2, 1e-6}) {
        const Problem p = make_problem(8, mu, Rectangle{0.0, 0.2, 0.4, 0.6}, u);
        const Solution sol = solve(p.system);
        const Vector nodal = interpolate(p.mesh, u);
        CHECK((sol.u_h - nodal).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(sol.z_h.cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(sol.residual_norm <= 1e-8 * p.system.rhs().norm());
    }
}

TEST_CASE("zero right-hand side gives zero") {
    Problem p = make_problem(4, 1e-2, Disk{{0.5, 0.5}, 0.2}, ExactSolution::product_sine());
    const auto n = p.system.block_size();
    const SaddleSystem zero_rhs = build_system(p.system.a(), p.system.s(), p.system.s_star(), Vector::Zero(n),
                                               Vector::Zero(n));
    const Solution sol = solve(zero_rhs);
    CHECK(sol.u_h.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sol.z_h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sparse solve agrees with a dense factorization") {
    const Problem p = make_problem(16, 1e-6, Disk{{0.5, 0.5}, 0.1}, ExactSolution::product_sine());
    const Solution sol = solve(p.system);
    const Eigen::MatrixXd m(p.system.matrix());
    const Vector x = m.fullPivLu().solve(p.system.rhs());
    const auto n = p.system.block_size();
    CHECK((sol.u_h - x.head(n)).norm() <= 1e-8 * x.head(n).norm());
    CHECK((sol.z_h - x.tail(n)).norm() <= 1e-8 * std::max(x.head(n).norm(), x.tail(n).norm()));
}

TEST_CASE("factorization solves with the matrix and its transpose") {
    const Problem p = make_problem(5, 1e-2, Rectangle{0.0, 0.2, 0.4, 0.6}, ExactSolution::product_sine());
    const SaddleFactorization lu(p.system);
    const Eigen::MatrixXd m(p.system.matrix());
    const Vector b = Vector::LinSpaced(m.rows(), -1.0, 2.0);
    CHECK((m * lu.solve(b) - b).norm() <= 1e-9 * b.norm() * m.norm());
    CHECK((m.transpose() * lu.solve_transposed(b) - b).norm() <= 1e-9 * b.norm() * m.norm());
}

TEST_CASE("singular and non-finite systems are reported") {
    const auto n = Eigen::Index{4};
    const SparseMatrix zero(n, n);
    CHECK_THROWS_AS(solve(build_system(zero, zero, zero, Vector::Ones(n), Vector::Ones(n))), SingularSystemError);

    SparseMatrix bad = identity(n);
    bad.coeffRef(1, 1) = std::nan("");
    CHECK_THROWS_AS(solve(build_system(bad, zero, zero, Vector::Ones(n), Vector::Ones(n))), SingularSystemError);
}

TEST_CASE("condition number estimate") {
    SUBCASE("identity") {
        const auto n = Eigen::Index{6};
        const SparseMatrix zero(n, n);
        const SaddleSystem sys = build_system(identity(n), zero, zero, Vector::Zero(n), Vector::Zero(n));
        CHECK(condition_number(sys) == doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("diagonal with known spread") {
        const auto n = Eigen::Index{5};
        SparseMatrix d(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            d.insert(i, i) = std::pow(10.0, static_cast<double>(i));
        const SparseMatrix zero(n, n);
        const SaddleSystem sys = build_system(d, zero, zero, Vector::Zero(n), Vector::Zero(n));
        CHECK(condition_number(sys) == doctest::Approx(1e4).epsilon(1e-3));
    }
    SUBCASE("matches a dense SVD on small meshes") {
        for (int n : {4, 8}) {
            const Problem p = make_problem(n, 1e-2, Rectangle{0.0, 0.2, 0.4, 0.6}, ExactSolution::product_sine());
            const Eigen::MatrixXd m(p.system.matrix());
            const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
            const double dense = sv(0) / sv(sv.size() - 1);
            CHECK(condition_number(p.system) == doctest::Approx(dense).epsilon(0.05));
        }
    }
    SUBCASE("iteration budget exhaustion keeps the last estimate") {
        const Problem p = make_problem(8, 1e-2, Rectangle{0.0, 0.2, 0.4, 0.6}, ExactSolution::product_sine());
        ConditionOptions opts;
        opts.max_iterations = 1;
        opts.tol = 1e-15;
        try {
            condition_number(p.system, opts);
            FAIL("expected the estimate to fail");
        } catch (const EstimationFailure& e) {
            CHECK(e.last_estimate() > 0.0);
        }
    }
}
