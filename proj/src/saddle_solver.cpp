#include "ucfem/saddle_solver.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/SparseLU>

#include "ucfem/errors.hpp"

namespace ucfem {

namespace {

void check_block(const SparseMatrix& m, Eigen::Index n, const char* name) {
    if (m.rows() != n || m.cols() != n)
        throw InvalidArgument(std::string("build_system: block ") + name + " is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
}

// Deterministic, non-degenerate start vector for the extreme value iterations.
Vector start_vector(Eigen::Index n) {
    Vector x(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (Eigen::Index i = 0; i < n; ++i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        x[i] = 1.0 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    return x.normalized();
}

} // namespace

SaddleSystem::SaddleSystem(SparseMatrix a, SparseMatrix s, SparseMatrix s_star, Vector f, Vector g)
    : a_(std::move(a)), s_(std::move(s)), s_star_(std::move(s_star)), f_(std::move(f)), g_(std::move(g)) {
    const Eigen::Index n = a_.rows();
    check_block(a_, n, "A");
    check_block(s_, n, "S");
    check_block(s_star_, n, "S_star");
    if (f_.size() != n || g_.size() != n)
        throw InvalidArgument("build_system: right-hand side blocks must have length " + std::to_string(n));

    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(2 * a_.nonZeros() + s_.nonZeros() + s_star_.nonZeros()));
    for (Eigen::Index r = 0; r < n; ++r) {
        for (SparseMatrix::InnerIterator it(a_, r); it; ++it) {
            t.emplace_back(it.row(), it.col(), it.value());
            t.emplace_back(n + it.col(), n + it.row(), it.value());
        }
        for (SparseMatrix::InnerIterator it(s_star_, r); it; ++it)
            t.emplace_back(it.row(), n + it.col(), -it.value());
        for (SparseMatrix::InnerIterator it(s_, r); it; ++it)
            t.emplace_back(n + it.row(), it.col(), it.value());
    }
    m_.resize(2 * n, 2 * n);
    m_.setFromTriplets(t.begin(), t.end());
    m_.makeCompressed();
}

Vector SaddleSystem::rhs() const {
    Vector b(size());
    b << f_, g_;
    return b;
}

struct SaddleFactorization::Impl {
    Eigen::SparseMatrix<double, Eigen::ColMajor> m;
    Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor>, Eigen::COLAMDOrdering<int>> lu;
};

SaddleFactorization::SaddleFactorization(const SaddleSystem& system) : impl_(std::make_unique<Impl>()) {
    impl_->m = system.matrix();
    if (!Eigen::Map<const Vector>(impl_->m.valuePtr(), impl_->m.nonZeros()).allFinite())
        throw SingularSystemError("saddle system contains non-finite entries");
    impl_->lu.analyzePattern(impl_->m);
    impl_->lu.factorize(impl_->m);
    if (impl_->lu.info() != Eigen::Success)
        throw SingularSystemError("sparse LU of the saddle system failed: " + impl_->lu.lastErrorMessage());
}

SaddleFactorization::~SaddleFactorization() = default;
SaddleFactorization::SaddleFactorization(SaddleFactorization&&) noexcept = default;
SaddleFactorization& SaddleFactorization::operator=(SaddleFactorization&&) noexcept = default;

Vector SaddleFactorization::solve(const Vector& b) const {
    Vector x = impl_->lu.solve(b);
    if (!x.allFinite())
        throw SingularSystemError("sparse LU solve produced non-finite values");
    return x;
}

Vector SaddleFactorization::solve_transposed(const Vector& b) const {
    Vector x = impl_->lu.transpose().solve(b);
    if (!x.allFinite())
        throw SingularSystemError("transposed sparse LU solve produced non-finite values");
    return x;
}

Solution solve(const SaddleSystem& system) {
    const SaddleFactorization lu(system);
    const Vector b = system.rhs();
    const double target = 1e-8 * b.norm();

    Vector x = lu.solve(b);
    Vector r = b - system.matrix() * x;
    x += lu.solve(r);
    r = b - system.matrix() * x;
    for (int extra = 0; extra < 2 && r.norm() > target; ++extra) {
        x += lu.solve(r);
        r = b - system.matrix() * x;
    }

    const Eigen::Index n = system.block_size();
    return {x.head(n), x.tail(n), r.norm()};
}

double condition_number(const SaddleSystem& system, ConditionOptions options) {
    const SparseMatrix& m = system.matrix();
    const SparseMatrix mt = m.transpose();
    const Eigen::Index n = system.size();

    // Largest eigenvalue of M^T M.
    double lambda_max = 0.0;
    {
        Vector x = start_vector(n);
        bool settled = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            const Vector y = mt * (m * x);
            const double rayleigh = x.dot(y);
            const double change = std::abs(rayleigh - lambda_max);
            lambda_max = rayleigh;
            x = y / y.norm();
            if (it > 0 && change <= options.tol * std::abs(rayleigh)) {
                settled = true;
                break;
            }
        }
        if (!settled)
            throw EstimationFailure("power iteration for sigma_max did not converge", std::sqrt(lambda_max));
    }

    // Largest eigenvalue of (M^T M)^-1 = M^-1 M^-T.
    const SaddleFactorization lu(system);
    double inv_lambda_min = 0.0;
    {
        Vector x = start_vector(n);
        bool settled = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            const Vector w = lu.solve_transposed(x);
            const Vector y = lu.solve(w);
            const double rayleigh = w.squaredNorm(); // x^T M^-1 M^-T x
            const double change = std::abs(rayleigh - inv_lambda_min);
            inv_lambda_min = rayleigh;
            x = y / y.norm();
            if (it > 0 && change <= options.tol * std::abs(rayleigh)) {
                settled = true;
                break;
            }
        }
        if (!settled)
            throw EstimationFailure("inverse iteration for sigma_min did not converge",
                                    std::sqrt(lambda_max * inv_lambda_min));
    }
    return std::sqrt(lambda_max * inv_lambda_min);
}

} // namespace ucfem
