#pragma once

#include <string>

#include "ucfem/assembly.hpp"

namespace ucfem {

/// Which side of the data set the weight favours. Downstream means the data
/// set touches the inflow boundary and the weight is positive; upstream means
/// it touches the outflow boundary and the weight is negative.
enum class WeightDirection { downstream, upstream };

std::string to_string(WeightDirection d);

struct WeightSpec {
    WeightDirection direction = WeightDirection::downstream;
    double lambda = 1.0;
    double h = 0.0;
    /// Boundary x-coordinate the data set touches; the weight decays away from it.
    double data_side_x = 0.0;
    double beta1 = 1.0;
    /// Characteristic strip through the data set, [y_lo, y_hi].
    double y_lo = 0.0, y_hi = 1.0;
    /// Stability strip after removing the crosswind layer on both sides.
    double y_ring_lo = 0.0, y_ring_hi = 1.0;

    /// Width of the removed crosswind layer, 3 lambda sqrt(h) ln(1/h).
    double margin() const;
};

/// phi = psi1 * psi2 with psi1 = +-exp(-distance to the data side) and psi2 = 1 on
/// the stability strip, decaying like exp(-dist/(lambda sqrt h)) across it.
/// beta.grad(phi) = -|beta| |phi| wherever phi is differentiable.
class WeightField {
public:
    explicit WeightField(WeightSpec spec) : spec_(spec) {}

    const WeightSpec& spec() const noexcept { return spec_; }
    WeightDirection direction() const noexcept { return spec_.direction; }

    double psi1(Vec2 p) const;
    double psi2(double y) const;
    double value(Vec2 p) const { return psi1(p) * psi2(p.y); }
    /// On the kink lines y = y_ring_lo / y_ring_hi the one-sided gradient from below is returned.
    Vec2 gradient(Vec2 p) const;

    RegionSpec stability_region() const { return Rectangle{0.0, 1.0, spec_.y_ring_lo, spec_.y_ring_hi}; }

private:
    WeightSpec spec_;
};

/// Builds the weight for a data set touching x = 0 or x = 1 (an interior data set
/// is treated as touching x = 0). The characteristic strip is the y-extent of the
/// data set. Throws WeightConstructionError when the crosswind margin reaches
/// half the strip width.
WeightField build_weight(const ProblemConfig& config, double h, double lambda = 1.0);

/// (sum over region elements of int_K (u_h - u)^2)^(1/2), degree-5 quadrature.
double l2_error(const Mesh& mesh, const Vector& u_h, const ExactSolution& exact, const RegionSpec& region);
/// Same with |grad u_h - grad u|^2.
double h1_semi_error(const Mesh& mesh, const Vector& u_h, const ExactSolution& exact, const RegionSpec& region);
/// L2 norm of a P1 function over the whole domain.
double l2_norm(const Mesh& mesh, const Vector& v);

/// Weighted triple norm. Downstream: |beta| v^2 phi + mu |grad v|^2 phi over the
/// domain plus |beta.n| v^2 phi on the outflow boundary. Upstream: |beta| v^2 |phi|
/// plus |beta.n| v^2 |phi| on the inflow boundary.
/// Throws InvalidArgument when direction differs from the weight's.
double triple_norm(const Mesh& mesh, const Vector& v, const WeightField& weight, const ProblemConfig& config,
                   WeightDirection direction);

/// (u^T S u + z^T S_* z)^(1/2). Throws AssemblyDefectError on a negative form.
double stab_norm(const Vector& u, const Vector& z, const SparseMatrix& s, const SparseMatrix& s_star);

struct NormReport {
    double l2_region = 0.0;
    double h1_semi_region = 0.0;
    double triple_weighted = 0.0;
    double stab_norm = 0.0;
    RegionSpec region_used;
};

} // namespace ucfem
