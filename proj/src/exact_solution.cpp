#include "ucfem/exact_solution.hpp"

#include <cmath>
#include <numbers>

namespace ucfem {

namespace {
constexpr double pi = std::numbers::pi;
}

std::string ExactSolution::name() const {
    switch (kind_) {
    case Kind::product_sine:
        return "product_sine";
    case Kind::layer:
        return "layer";
    case Kind::linear:
        return "linear";
    }
    return "unknown";
}

double ExactSolution::value(Vec2 p) const {
    switch (kind_) {
    case Kind::product_sine:
        return 2.0 * std::sin(5.0 * pi * p.x) * std::sin(5.0 * pi * p.y);
    case Kind::layer:
        return std::sin(3.0 * pi * p.x) + std::tanh(100.0 * (p.y - 0.5));
    case Kind::linear:
        return a_ + b_ * p.x + c_ * p.y;
    }
    return 0.0;
}

Vec2 ExactSolution::gradient(Vec2 p) const {
    switch (kind_) {
    case Kind::product_sine: {
        const double k = 5.0 * pi;
        return {2.0 * k * std::cos(k * p.x) * std::sin(k * p.y), 2.0 * k * std::sin(k * p.x) * std::cos(k * p.y)};
    }
    case Kind::layer: {
        const double t = std::tanh(100.0 * (p.y - 0.5));
        return {3.0 * pi * std::cos(3.0 * pi * p.x), 100.0 * (1.0 - t * t)};
    }
    case Kind::linear:
        return {b_, c_};
    }
    return {};
}

double ExactSolution::laplacian(Vec2 p) const {
    switch (kind_) {
    case Kind::product_sine: {
        const double k = 5.0 * pi;
        return -2.0 * k * k * value(p);
    }
    case Kind::layer: {
        // d2/dy2 tanh(a s) = -2 a^2 tanh (1 - tanh^2)
        const double t = std::tanh(100.0 * (p.y - 0.5));
        return -9.0 * pi * pi * std::sin(3.0 * pi * p.x) - 2.0 * 1.0e4 * t * (1.0 - t * t);
    }
    case Kind::linear:
        return 0.0;
    }
    return 0.0;
}

} // namespace ucfem
