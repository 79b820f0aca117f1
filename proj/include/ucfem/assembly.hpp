#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ucfem/exact_solution.hpp"
#include "ucfem/mesh.hpp"
#include "ucfem/region.hpp"

namespace ucfem {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Physical and stabilization parameters of one data assimilation problem.
struct ProblemConfig {
    double mu = 1.0;
    Vec2 beta{1.0, 0.0};
    double gamma = 1e-5;     // gradient jump penalty
    double gamma_star = 1.0; // dual stabilizer
    double zeta = 2.0;       // exponent of the diffusive part of the data penalty
    RegionSpec omega;        // data set

    double beta_norm() const { return norm(beta); }
    /// Throws InvalidArgument unless mu > 0, |beta| > 0, gamma, gamma_star >= 0 and zeta in [0, 2].
    void validate() const;
};

/// Convection-diffusion form with the boundary consistency term:
/// (beta.grad v, w) + (mu grad v, grad w) - <mu grad v.n, w>. Entry (i, j) = a(phi_j, phi_i).
SparseMatrix assemble_a(const Mesh& mesh, const ProblemConfig& config);

/// Gradient jump penalty over interior faces, gamma h_F^2 (mu + |beta| h_F) [grad.n]^2 per face.
SparseMatrix assemble_s_Omega(const Mesh& mesh, const ProblemConfig& config);

/// Dual stabilizer gamma_* ( <(|beta| + mu/h_E) v, w>_bdry + (mu grad v, grad w) + s_Omega(v, w) ).
SparseMatrix assemble_s_star(const Mesh& mesh, const ProblemConfig& config);

/// Scalar in front of the data-set mass matrix: |beta|/h + mu h^-zeta with h = 1/n.
double data_penalty_coefficient(const ProblemConfig& config, double h);

/// Scaled mass matrix over the elements whose barycenter lies in config.omega.
/// Throws EmptyRegionError when no element qualifies.
SparseMatrix assemble_s_omega(const Mesh& mesh, const ProblemConfig& config);

/// Consistent P1 mass matrix over the whole mesh.
SparseMatrix assemble_mass(const Mesh& mesh);

/// F_i = (f, phi_i) with f = -mu lap(u) + beta.grad(u), degree-4 quadrature.
Vector assemble_load(const Mesh& mesh, const ProblemConfig& config, const ExactSolution& exact);

/// Nodal data: one entry per mesh node, set at least on every node of every data element.
using NodalData = std::vector<std::optional<double>>;

/// G = S_omega * d with d the nodal data extended by zero.
/// Throws InvalidDataError when a node of a data element has no value.
Vector assemble_data_rhs(const Mesh& mesh, const ProblemConfig& config, const NodalData& data);

/// Nodal interpolant of the exact solution.
Vector interpolate(const Mesh& mesh, const ExactSolution& exact);

void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market(const std::string& path, const SparseMatrix& m);

} // namespace ucfem
