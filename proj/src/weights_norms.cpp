#include "ucfem/weights_norms.hpp"

#include <algorithm>
#include <cmath>

#include "ucfem/errors.hpp"
#include "ucfem/quadrature.hpp"

namespace ucfem {

std::string to_string(WeightDirection d) { return d == WeightDirection::downstream ? "downstream" : "upstream"; }

double WeightSpec::margin() const { return 3.0 * lambda * std::sqrt(h) * std::log(1.0 / h); }

double WeightField::psi1(Vec2 p) const {
    const double sign = spec_.direction == WeightDirection::downstream ? 1.0 : -1.0;
    return sign * std::exp(-std::abs(p.x - spec_.data_side_x));
}

double WeightField::psi2(double y) const {
    const double scale = spec_.lambda * std::sqrt(spec_.h);
    if (y > spec_.y_ring_hi)
        return std::exp((spec_.y_ring_hi - y) / scale);
    if (y <= spec_.y_ring_lo)
        return std::exp((y - spec_.y_ring_lo) / scale);
    return 1.0;
}

Vec2 WeightField::gradient(Vec2 p) const {
    const double p1 = psi1(p);
    const double p2 = psi2(p.y);
    // d/dx exp(-|x - x_s|) = -exp(..) moving away from x_s = 0, +exp(..) towards x_s = 1.
    const double dpsi1 = spec_.data_side_x == 0.0 ? -p1 : p1;
    const double scale = spec_.lambda * std::sqrt(spec_.h);
    double dpsi2 = 0.0;
    if (p.y > spec_.y_ring_hi)
        dpsi2 = -p2 / scale;
    else if (p.y <= spec_.y_ring_lo)
        dpsi2 = p2 / scale;
    return {dpsi1 * p2, p1 * dpsi2};
}

WeightField build_weight(const ProblemConfig& config, double h, double lambda) {
    config.validate();
    if (config.beta.y != 0.0)
        throw InvalidArgument("build_weight: convection must be aligned with the x-axis");
    if (!(h > 0.0 && h < 1.0))
        throw InvalidArgument("build_weight: mesh size must lie in (0, 1)");
    if (!(lambda > 0.0))
        throw InvalidArgument("build_weight: lambda must be positive");

    const Rectangle box = config.omega.bounds();
    const bool left = box.x_lo <= 0.0;
    const bool right = box.x_hi >= 1.0;

    WeightSpec spec;
    spec.lambda = lambda;
    spec.h = h;
    spec.beta1 = config.beta.x;
    spec.data_side_x = (right && !left) ? 1.0 : 0.0;
    const double inflow_x = config.beta.x > 0.0 ? 0.0 : 1.0;
    spec.direction = spec.data_side_x == inflow_x ? WeightDirection::downstream : WeightDirection::upstream;
    spec.y_lo = box.y_lo;
    spec.y_hi = box.y_hi;

    const double m = spec.margin();
    if (m >= 0.5 * (spec.y_hi - spec.y_lo))
        throw WeightConstructionError("build_weight: crosswind margin " + std::to_string(m) +
                                      " does not fit in the characteristic strip [" + std::to_string(spec.y_lo) +
                                      ", " + std::to_string(spec.y_hi) + "]; refine the mesh or lower lambda");
    spec.y_ring_lo = spec.y_lo + m;
    spec.y_ring_hi = spec.y_hi - m;
    return WeightField(spec);
}

namespace {

template <class Integrand>
double integrate_region(const Mesh& mesh, const RegionSpec& region, Integrand&& integrand) {
    const auto elements = region.select_elements(mesh);
    if (elements.empty())
        throw EmptyRegionError("no element barycenter lies in region " + region.describe());
    double sum = 0.0;
    for (const Index k : elements)
        sum += integrand(mesh.triangles()[k]);
    return sum;
}

} // namespace

double l2_error(const Mesh& mesh, const Vector& u_h, const ExactSolution& exact, const RegionSpec& region) {
    const auto rule = triangle_rule_degree5();
    const double sq = integrate_region(mesh, region, [&](const Triangle& t) {
        const auto c = mesh.corners(t);
        double s = 0.0;
        for (const auto& q : rule) {
            double uh = 0.0;
            for (int a = 0; a < 3; ++a)
                uh += q.bary[a] * u_h[static_cast<Eigen::Index>(t.vertices[a])];
            const double e = uh - exact.value(map_barycentric(c, q.bary));
            s += q.weight * e * e;
        }
        return s * t.area;
    });
    return std::sqrt(sq);
}

double h1_semi_error(const Mesh& mesh, const Vector& u_h, const ExactSolution& exact, const RegionSpec& region) {
    const auto rule = triangle_rule_degree5();
    const double sq = integrate_region(mesh, region, [&](const Triangle& t) {
        const auto c = mesh.corners(t);
        const auto g = p1_gradients(c);
        Vec2 grad_h{};
        for (int a = 0; a < 3; ++a)
            grad_h = grad_h + u_h[static_cast<Eigen::Index>(t.vertices[a])] * g[a];
        double s = 0.0;
        for (const auto& q : rule) {
            const Vec2 e = grad_h - exact.gradient(map_barycentric(c, q.bary));
            s += q.weight * dot(e, e);
        }
        return s * t.area;
    });
    return std::sqrt(sq);
}

double l2_norm(const Mesh& mesh, const Vector& v) {
    double sq = 0.0;
    for (const auto& t : mesh.triangles()) {
        const auto& vx = t.vertices;
        double local = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                local += (a == b ? 2.0 : 1.0) * v[static_cast<Eigen::Index>(vx[a])] * v[static_cast<Eigen::Index>(vx[b])];
        sq += local * t.area / 12.0;
    }
    return std::sqrt(std::max(sq, 0.0));
}

double triple_norm(const Mesh& mesh, const Vector& v, const WeightField& weight, const ProblemConfig& config,
                   WeightDirection direction) {
    if (direction != weight.direction())
        throw InvalidArgument("triple_norm: requested " + to_string(direction) + " norm with a " +
                              to_string(weight.direction()) + " weight");
    if ((config.beta.x > 0.0) != (weight.spec().beta1 > 0.0))
        throw InvalidArgument("triple_norm: weight was built for the opposite convection direction");

    const bool down = direction == WeightDirection::downstream;
    const double bn = config.beta_norm();
    const auto rule = triangle_rule_degree5();

    double sq = 0.0;
    for (const auto& t : mesh.triangles()) {
        const auto c = mesh.corners(t);
        const auto g = p1_gradients(c);
        Vec2 grad{};
        for (int a = 0; a < 3; ++a)
            grad = grad + v[static_cast<Eigen::Index>(t.vertices[a])] * g[a];
        const double diffusive = down ? config.mu * dot(grad, grad) : 0.0;
        double s = 0.0;
        for (const auto& q : rule) {
            double vq = 0.0;
            for (int a = 0; a < 3; ++a)
                vq += q.bary[a] * v[static_cast<Eigen::Index>(t.vertices[a])];
            const double phi = std::abs(weight.value(map_barycentric(c, q.bary)));
            s += q.weight * (bn * vq * vq + diffusive) * phi;
        }
        sq += s * t.area;
    }

    for (const auto& e : mesh.boundary_edges()) {
        const double flux = dot(config.beta, e.outward_normal);
        if (down ? !(flux > 0.0) : !(flux < 0.0))
            continue;
        const Vec2 a = mesh.point(e.endpoints[0]), b = mesh.point(e.endpoints[1]);
        const double va = v[static_cast<Eigen::Index>(e.endpoints[0])];
        const double vb = v[static_cast<Eigen::Index>(e.endpoints[1])];
        double s = 0.0;
        for (const auto& q : segment_rule_gauss3()) {
            const double vq = (1.0 - q.t) * va + q.t * vb;
            s += q.weight * vq * vq * std::abs(weight.value(a + q.t * (b - a)));
        }
        sq += std::abs(flux) * s * e.length;
    }
    return std::sqrt(sq);
}

double stab_norm(const Vector& u, const Vector& z, const SparseMatrix& s, const SparseMatrix& s_star) {
    if (u.size() != s.rows() || z.size() != s_star.rows())
        throw InvalidArgument("stab_norm: vector length does not match the stabilizer dimension");
    const double su = u.dot(s * u);
    const double sz = z.dot(s_star * z);
    const double scale = u.cwiseAbs().dot(s.cwiseAbs() * u.cwiseAbs()) +
                         z.cwiseAbs().dot(s_star.cwiseAbs() * z.cwiseAbs());
    const double q = su + sz;
    if (q < -1e-12 * std::max(1.0, scale))
        throw AssemblyDefectError("stab_norm: negative stabilization form " + std::to_string(q));
    return std::sqrt(std::max(q, 0.0));
}

} // namespace ucfem
