#pragma once

#include <memory>

#include "ucfem/assembly.hpp"

namespace ucfem {

/// Primal-dual system
///
///     [ A   -S_* ] [u]   [F]
///     [ S    A^T ] [z] = [G]
///
/// where the first block row tests the PDE constraint and the second the
/// optimality condition for the primal variable. S = s_Omega + s_omega.
class SaddleSystem {
public:
    SaddleSystem(SparseMatrix a, SparseMatrix s, SparseMatrix s_star, Vector f, Vector g);

    Eigen::Index block_size() const noexcept { return a_.rows(); }
    Eigen::Index size() const noexcept { return 2 * a_.rows(); }

    const SparseMatrix& a() const noexcept { return a_; }
    const SparseMatrix& s() const noexcept { return s_; }
    const SparseMatrix& s_star() const noexcept { return s_star_; }
    const Vector& f() const noexcept { return f_; }
    const Vector& g() const noexcept { return g_; }

    const SparseMatrix& matrix() const noexcept { return m_; }
    Vector rhs() const;

private:
    SparseMatrix a_, s_, s_star_;
    Vector f_, g_;
    SparseMatrix m_;
};

inline SaddleSystem build_system(SparseMatrix a, SparseMatrix s, SparseMatrix s_star, Vector f, Vector g) {
    return SaddleSystem(std::move(a), std::move(s), std::move(s_star), std::move(f), std::move(g));
}

struct Solution {
    Vector u_h;
    Vector z_h;
    double residual_norm = 0.0;
};

/// Sparse LU factorization of a saddle system (partial pivoting, COLAMD ordering).
/// Not safe to share across threads.
class SaddleFactorization {
public:
    explicit SaddleFactorization(const SaddleSystem& system);
    ~SaddleFactorization();
    SaddleFactorization(SaddleFactorization&&) noexcept;
    SaddleFactorization& operator=(SaddleFactorization&&) noexcept;

    Vector solve(const Vector& b) const;
    Vector solve_transposed(const Vector& b) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Direct solve followed by iterative refinement until the residual is at most
/// 1e-8 of the right-hand side (at most three refinement steps).
/// Throws SingularSystemError when the factorization breaks down.
Solution solve(const SaddleSystem& system);

struct ConditionOptions {
    double tol = 1e-4;
    int max_iterations = 10000;
};

/// Estimate of the Euclidean condition number sigma_max / sigma_min, by power
/// iteration on M^T M and inverse iteration through the LU factors.
/// Throws EstimationFailure when either iteration does not settle.
double condition_number(const SaddleSystem& system, ConditionOptions options = {});

} // namespace ucfem
