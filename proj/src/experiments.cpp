#include "ucfem/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>

#include "ucfem/errors.hpp"
#include "ucfem/weights_norms.hpp"

namespace ucfem {

std::string to_string(Case c) {
    switch (c) {
    case Case::disk:
        return "disk";
    case Case::side_down:
        return "side_down";
    case Case::side_up:
        return "side_up";
    case Case::layer:
        return "layer";
    }
    return "unknown";
}

Case parse_case(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    for (const Case c : {Case::disk, Case::side_down, Case::side_up, Case::layer})
        if (s == to_string(c))
            return c;
    throw InvalidArgument("unknown case '" + std::string(name) + "'");
}

NoiseSpec NoiseSpec::power(double p) {
    if (p != 2.0 && p != 1.0 && p != 0.5)
        throw InvalidArgument("noise exponent must be one of 2, 1, 0.5");
    return NoiseSpec{p};
}

NoiseSpec NoiseSpec::parse(std::string_view name) {
    if (name == "none")
        return none();
    if (name == "h2")
        return power(2.0);
    if (name == "h")
        return power(1.0);
    if (name == "h05")
        return power(0.5);
    throw InvalidArgument("unknown noise level '" + std::string(name) + "' (expected none, h2, h or h05)");
}

CaseGeometry case_geometry(Case c, double beta1) {
    if (beta1 == 0.0 || !std::isfinite(beta1))
        throw InvalidArgument("case_geometry: beta1 must be finite and nonzero");

    CaseGeometry g{RegionSpec::unit_square(), ExactSolution::product_sine(), {}};
    std::vector<Rectangle> boxes;
    switch (c) {
    case Case::disk:
        g.omega = Disk{{0.5, 0.5}, 0.1};
        boxes = {{0.6, 1.0, 0.45, 0.55}, {0.0, 0.4, 0.45, 0.55}};
        break;
    case Case::side_down:
        g.omega = Rectangle{0.0, 0.2, 0.4, 0.6};
        boxes = {{0.2, 1.0, 0.45, 0.55}};
        break;
    case Case::side_up:
        g.omega = Rectangle{0.8, 1.0, 0.4, 0.6};
        boxes = {{0.0, 0.8, 0.45, 0.55}};
        break;
    case Case::layer:
        g.exact = ExactSolution::layer();
        g.omega = RegionSpec(std::vector<RegionSpec::Shape>{Rectangle{0.1, 0.3, 0.25, 0.4}, Rectangle{0.1, 0.3, 0.6, 0.75},
                                                            Rectangle{0.7, 0.9, 0.25, 0.4}, Rectangle{0.7, 0.9, 0.6, 0.75}});
        boxes = {{0.5, 1.0, 0.4, 0.6}, {0.0, 0.5, 0.4, 0.6}};
        break;
    }

    const Rectangle data_box = g.omega.bounds();
    const double data_center = 0.5 * (data_box.x_lo + data_box.x_hi);
    for (const auto& b : boxes) {
        const double offset = 0.5 * (b.x_lo + b.x_hi) - data_center;
        g.regions.push_back({b, offset * beta1 > 0.0});
    }
    return g;
}

void ExperimentPlan::validate() const {
    if (mesh_sizes.empty())
        throw InvalidArgument("plan: no mesh sizes");
    if (mus.empty())
        throw InvalidArgument("plan: no diffusion coefficients");
    for (std::size_t k = 0; k < mesh_sizes.size(); ++k) {
        if (mesh_sizes[k] < 2)
            throw InvalidArgument("plan: mesh sizes must be at least 2");
        if (k > 0 && mesh_sizes[k] <= mesh_sizes[k - 1])
            throw InvalidArgument("plan: mesh sizes must be strictly ascending");
    }
    for (const double mu : mus)
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw InvalidArgument("plan: diffusion coefficients must be positive");
    if (beta1 == 0.0 || !std::isfinite(beta1))
        throw InvalidArgument("plan: beta1 must be finite and nonzero");
}

std::optional<double> ExperimentRow::field(std::string_view name) const {
    if (name == "l2_down")
        return l2_down;
    if (name == "l2_up")
        return l2_up;
    if (name == "h1_down")
        return h1_down;
    if (name == "h1_up")
        return h1_up;
    if (name == "l2_global")
        return l2_global;
    if (name == "triple_norm")
        return triple_norm;
    if (name == "stab_norm")
        return stab_norm;
    if (name == "z_l2")
        return z_l2;
    if (name == "cond_estimate")
        return cond_estimate;
    if (name == "wall_time_ms")
        return wall_time_ms;
    throw InvalidArgument("unknown row field '" + std::string(name) + "'");
}

double counter_uniform(std::uint64_t seed, std::uint64_t n, std::uint64_t node) {
    // splitmix64 finalizer over a combined key
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    const std::uint64_t bits = mix(mix(mix(seed) ^ n) ^ node);
    return 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
}

NodalData inject_noise(const Mesh& mesh, const RegionSpec& omega, const ExactSolution& exact, const NoiseSpec& spec,
                       std::uint64_t seed, int n) {
    const double amplitude = spec.active() ? std::pow(1.0 / n, *spec.exponent) : 0.0;
    NodalData data(mesh.num_nodes());
    for (const Index k : omega.select_elements(mesh)) {
        for (const Index v : mesh.triangles()[k].vertices) {
            if (data[v])
                continue;
            double value = exact.value(mesh.point(v));
            if (spec.active())
                value += amplitude * counter_uniform(seed, static_cast<std::uint64_t>(n), v);
            data[v] = value;
        }
    }
    return data;
}

ProblemConfig make_config(const ExperimentPlan& plan, double mu, const CaseGeometry& geometry) {
    ProblemConfig c;
    c.mu = mu;
    c.beta = {plan.beta1, 0.0};
    c.gamma = plan.gamma;
    c.gamma_star = plan.gamma_star;
    c.zeta = plan.zeta;
    c.omega = geometry.omega;
    return c;
}

namespace {

// Lambda for the diagnostic weight: 1 when it fits, otherwise small enough that the
// crosswind margin takes a quarter of the characteristic strip.
double diagnostic_lambda(const RegionSpec& omega, double h) {
    const Rectangle b = omega.bounds();
    const double fit = 0.25 * (b.y_hi - b.y_lo) / (3.0 * std::sqrt(h) * std::log(1.0 / h));
    return std::min(1.0, fit);
}

} // namespace

RunOutput run_single(const ExperimentPlan& plan, int n, double mu) {
    const auto start = std::chrono::steady_clock::now();
    RunOutput out;
    ExperimentRow& row = out.row;
    row.experiment = plan.experiment;
    row.n = n;
    row.h = 1.0 / n;
    row.mu = mu;
    row.peclet = std::abs(plan.beta1) * row.h / mu;
    row.noise = plan.noise;
    row.seed = plan.seed;

    try {
        CaseGeometry geometry = case_geometry(plan.experiment, plan.beta1);
        if (plan.exact_override)
            geometry.exact = *plan.exact_override;
        const ProblemConfig config = make_config(plan, mu, geometry);
        config.validate();

        Mesh mesh = build_mesh(n).classify_boundary(config.beta);
        const SparseMatrix a = assemble_a(mesh, config);
        const SparseMatrix s_interior = assemble_s_Omega(mesh, config);
        const SparseMatrix s_data = assemble_s_omega(mesh, config);
        const SparseMatrix s = s_interior + s_data;
        const SparseMatrix s_star = assemble_s_star(mesh, config);
        const Vector f = assemble_load(mesh, config, geometry.exact);
        const NodalData data = inject_noise(mesh, config.omega, geometry.exact, plan.noise, plan.seed, n);
        const Vector g = assemble_data_rhs(mesh, config, data);

        const SaddleSystem system = build_system(a, s, s_star, f, g);
        Solution sol = solve(system);

        for (const auto& region : geometry.regions) {
            const double l2 = l2_error(mesh, sol.u_h, geometry.exact, region.box);
            const double h1 = h1_semi_error(mesh, sol.u_h, geometry.exact, region.box);
            if (region.downstream) {
                row.l2_down = l2;
                row.h1_down = h1;
            } else {
                row.l2_up = l2;
                row.h1_up = h1;
            }
        }
        row.l2_global = l2_error(mesh, sol.u_h, geometry.exact, RegionSpec::unit_square());

        out.exact_nodal = interpolate(mesh, geometry.exact);
        const Vector discrete_error = out.exact_nodal - sol.u_h;
        const WeightField weight = build_weight(config, row.h, diagnostic_lambda(config.omega, row.h));
        row.triple_norm = ucfem::triple_norm(mesh, discrete_error, weight, config, weight.direction());
        row.stab_norm = ucfem::stab_norm(discrete_error, sol.z_h, s, s_star);
        row.z_l2 = l2_norm(mesh, sol.z_h);

        if (plan.condition_estimate) {
            try {
                row.cond_estimate = condition_number(system);
            } catch (const EstimationFailure& e) {
                std::cerr << "warning: n=" << n << " mu=" << mu << ": " << e.what() << " (last estimate "
                          << e.last_estimate() << ")\n";
            }
        }
        out.mesh = std::move(mesh);
        out.solution = std::move(sol);
    } catch (const std::exception& e) {
        row.failed = true;
        row.failure = e.what();
    }

    if (plan.record_wall_time)
        row.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<ExperimentRow> run_case(const ExperimentPlan& plan, const std::function<void(const RunOutput&)>& on_run) {
    plan.validate();
    std::vector<ExperimentRow> rows;
    rows.reserve(plan.mus.size() * plan.mesh_sizes.size());
    for (const double mu : plan.mus) {
        for (const int n : plan.mesh_sizes) {
            RunOutput run = run_single(plan, n, mu);
            if (on_run)
                on_run(run);
            rows.push_back(std::move(run.row));
        }
    }
    return rows;
}

double fit_rate(std::span<const ExperimentRow> rows, std::string_view field, int levels) {
    std::map<double, double> by_h; // ascending h
    for (const auto& r : rows) {
        if (r.failed)
            continue;
        const auto v = r.field(field);
        if (!v || !std::isfinite(*v) || !(*v > 0.0))
            continue;
        if (!by_h.emplace(r.h, *v).second)
            throw InvalidArgument("fit_rate: duplicate mesh size h=" + std::to_string(r.h));
    }
    if (by_h.size() < 3)
        throw InsufficientDataError("fit_rate: need at least 3 usable points for '" + std::string(field) + "', got " +
                                    std::to_string(by_h.size()));

    const std::size_t take = levels <= 0 ? by_h.size() : std::max<std::size_t>(3, static_cast<std::size_t>(levels));
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (auto it = by_h.begin(); it != by_h.end() && count < take; ++it, ++count) {
        const double x = std::log(it->first), y = std::log(it->second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(count);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

} // namespace

void write_csv(std::ostream& out, std::span<const ExperimentRow> rows) {
    out << csv_header << '\n';
    for (const auto& r : rows) {
        out << to_string(r.experiment) << ',' << r.n << ',' << format_number(r.h) << ',' << format_number(r.mu) << ','
            << format_number(r.peclet) << ',' << (r.noise.active() ? format_number(*r.noise.exponent) : "none") << ','
            << r.seed << ',';
        if (r.failed) {
            out << "nan,nan,nan,nan,nan,nan,nan,nan,,";
        } else {
            out << format_optional(r.l2_down) << ',' << format_optional(r.l2_up) << ',' << format_optional(r.h1_down)
                << ',' << format_optional(r.h1_up) << ',' << format_number(r.l2_global) << ','
                << format_number(r.triple_norm) << ',' << format_number(r.stab_norm) << ',' << format_number(r.z_l2)
                << ',' << format_optional(r.cond_estimate) << ',';
        }
        out << format_number(r.wall_time_ms) << '\n';
    }
}

void emit_csv(std::span<const ExperimentRow> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, rows);
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

void write_solution_dump(const std::string& path, const RunOutput& run) {
    if (!run.mesh || !run.solution)
        throw InvalidArgument("solution dump: run has no solution");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open solution dump '" + path + "' for writing");
    out.precision(17);
    out << run.mesh->num_nodes() << '\n';
    for (Index i = 0; i < run.mesh->num_nodes(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out << i << ' ' << run.solution->u_h[k] << ' ' << run.solution->z_h[k] << ' ' << run.exact_nodal[k] << '\n';
    }
    if (!out)
        throw IoError("failed writing solution dump '" + path + "'");
}

} // namespace ucfem
