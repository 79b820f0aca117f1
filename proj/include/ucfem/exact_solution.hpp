#pragma once

#include <string>

#include "ucfem/geometry.hpp"

namespace ucfem {

/// Reference solutions of -mu*lap(u) + beta.grad(u) = f with pointwise u, grad u, lap u.
class ExactSolution {
public:
    enum class Kind { product_sine, layer, linear };

    /// u = 2 sin(5 pi x) sin(5 pi y); unit L2 norm on the unit square.
    static ExactSolution product_sine() { return ExactSolution(Kind::product_sine); }
    /// u = sin(3 pi x) + tanh(100 (y - 1/2)); internal layer at y = 1/2.
    static ExactSolution layer() { return ExactSolution(Kind::layer); }
    /// u = a + b x + c y.
    static ExactSolution linear(double a, double b, double c) {
        ExactSolution e(Kind::linear);
        e.a_ = a;
        e.b_ = b;
        e.c_ = c;
        return e;
    }

    Kind kind() const noexcept { return kind_; }
    std::string name() const;

    double value(Vec2 p) const;
    Vec2 gradient(Vec2 p) const;
    double laplacian(Vec2 p) const;

    /// Source term f = -mu lap(u) + beta.grad(u).
    double source(Vec2 p, double mu, Vec2 beta) const {
        return -mu * laplacian(p) + dot(beta, gradient(p));
    }

private:
    explicit ExactSolution(Kind k) : kind_(k) {}

    Kind kind_;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
};

} // namespace ucfem
