#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucfem/assembly.hpp"
#include "ucfem/saddle_solver.hpp"

namespace ucfem {

enum class Case { disk, side_down, side_up, layer };

std::string to_string(Case c);
/// Accepts both "side_down" and "side-down" spellings.
Case parse_case(std::string_view name);

/// Nodal data perturbation uniform in [-h^p, h^p]; no exponent means clean data.
struct NoiseSpec {
    std::optional<double> exponent;

    static NoiseSpec none() { return {}; }
    static NoiseSpec power(double p);
    /// "none", "h2", "h" or "h05".
    static NoiseSpec parse(std::string_view name);
    bool active() const noexcept { return exponent.has_value(); }
};

struct MeasurementRegion {
    Rectangle box;
    bool downstream = true;
};

/// Data set, reference solution and error measurement rectangles of a case.
struct CaseGeometry {
    RegionSpec omega;
    ExactSolution exact;
    std::vector<MeasurementRegion> regions;
};

/// Measurement rectangles are labelled down/up from the sign of beta1.
CaseGeometry case_geometry(Case c, double beta1);

struct ExperimentPlan {
    Case experiment = Case::side_down;
    std::vector<int> mesh_sizes;
    std::vector<double> mus;
    double beta1 = 1.0;
    NoiseSpec noise;
    std::uint64_t seed = 20200617;
    double gamma = 1e-5;
    double gamma_star = 1.0;
    double zeta = 2.0;
    bool condition_estimate = false;
    /// When false, wall_time_ms is written as 0 so repeated runs give identical bytes.
    bool record_wall_time = true;
    std::optional<ExactSolution> exact_override;
    std::string output_path;

    /// Throws InvalidArgument unless sizes are ascending and >= 2, all mu > 0 and beta1 != 0.
    void validate() const;
};

struct ExperimentRow {
    Case experiment = Case::side_down;
    int n = 0;
    double h = 0.0;
    double mu = 0.0;
    double peclet = 0.0;
    NoiseSpec noise;
    std::uint64_t seed = 0;
    std::optional<double> l2_down, l2_up, h1_down, h1_up;
    double l2_global = 0.0;
    double triple_norm = 0.0;
    double stab_norm = 0.0;
    double z_l2 = 0.0;
    std::optional<double> cond_estimate;
    double wall_time_ms = 0.0;
    bool failed = false;
    std::string failure;

    /// Field lookup by CSV column name; empty when the row has no such value.
    std::optional<double> field(std::string_view name) const;
};

/// Everything one run produced; the mesh and solution are present unless the run failed.
struct RunOutput {
    ExperimentRow row;
    std::optional<Mesh> mesh;
    std::optional<Solution> solution;
    Vector exact_nodal;
};

/// Nodal data on every node of every data element: u(node) + delta with delta
/// drawn from a counter-based generator keyed by (seed, n, node index).
NodalData inject_noise(const Mesh& mesh, const RegionSpec& omega, const ExactSolution& exact, const NoiseSpec& spec,
                       std::uint64_t seed, int n);

/// Uniform value in [-1, 1) for a (seed, n, node) key.
double counter_uniform(std::uint64_t seed, std::uint64_t n, std::uint64_t node);

ProblemConfig make_config(const ExperimentPlan& plan, double mu, const CaseGeometry& geometry);

/// One mesh/mu run. Module errors are caught and reported as a failed row.
RunOutput run_single(const ExperimentPlan& plan, int n, double mu);

/// All (mu, n) runs of a plan, mu-major, in plan order.
std::vector<ExperimentRow> run_case(const ExperimentPlan& plan,
                                    const std::function<void(const RunOutput&)>& on_run = {});

/// Least-squares slope of log(error) against log(h) over the `levels` finest
/// usable rows (0 = all). Nonpositive or missing values are skipped.
/// Throws InsufficientDataError with fewer than 3 usable distinct mesh sizes.
double fit_rate(std::span<const ExperimentRow> rows, std::string_view field, int levels = 3);

inline constexpr std::string_view csv_header =
    "case,n,h,mu,peclet,noise_exponent,seed,l2_down,l2_up,h1_down,h1_up,l2_global,triple_norm,stab_norm,z_l2,"
    "cond_estimate,wall_time_ms";

void write_csv(std::ostream& out, std::span<const ExperimentRow> rows);
/// Throws IoError naming the path on failure.
void emit_csv(std::span<const ExperimentRow> rows, const std::string& path);

/// "nodes" header line, then "idx u_h z_h u_exact" per node.
void write_solution_dump(const std::string& path, const RunOutput& run);

} // namespace ucfem
