#include "qsearch/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qsearch/analysis.hpp"
#include "qsearch/dynamics.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/model.hpp"

namespace qsearch::cli {

namespace {

using nlohmann::json;

constexpr const char* kToolName = "qsearch";
constexpr const char* kToolVersion = "0.1.0";

// Decimal entry of pi/2 is usually truncated to 7-8 digits, so the CLI matches
// type conditions more loosely than the library default.
constexpr double kCliClassifyTolerance = 1e-7;

struct RunConfig {
    std::string subcommand;
    double energy = 1.0;
    double epsilon = 0.0;
    std::optional<double> phi;
    std::optional<double> phi_pi;
    std::optional<double> x;
    std::optional<std::uint64_t> count;
    std::string output;
    std::string format;
    std::string csv_path;
    double t_max = 0.0;
    std::size_t samples = 1000;
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
    std::size_t points = 0;
    std::optional<std::size_t> steps;
    std::size_t grid_points = kDefaultGridPoints;
    double tolerance = kCliClassifyTolerance;
};

double phase_of(const RunConfig& cfg) {
    if (cfg.phi_pi) return *cfg.phi_pi * std::numbers::pi;
    return cfg.phi.value_or(0.0);
}

std::optional<double> overlap_of(const RunConfig& cfg) {
    if (cfg.count) {
        if (*cfg.count < 2) throw InvalidParams(fmt::format("N must be at least 2, got {}", *cfg.count));
        return 1.0 / std::sqrt(static_cast<double>(*cfg.count));
    }
    return cfg.x;
}

SearchParams params_of(const RunConfig& cfg) {
    if (cfg.count) return SearchParams::from_count(cfg.energy, cfg.epsilon, phase_of(cfg), *cfg.count);
    if (!cfg.x) throw InvalidParams(fmt::format("'{}' needs one of --x or --N", cfg.subcommand));
    return SearchParams::from_overlap(cfg.energy, cfg.epsilon, phase_of(cfg), *cfg.x);
}

Couplings couplings_of(const RunConfig& cfg) {
    Couplings c{cfg.energy, cfg.epsilon, reduce_angle(phase_of(cfg))};
    // Validate against a placeholder overlap; sweeps supply their own.
    (void)SearchParams::from_couplings(c, 0.5);
    return c;
}

json params_json(const RunConfig& cfg) {
    json p;
    p["E"] = cfg.energy;
    p["epsilon"] = cfg.epsilon;
    p["phi"] = reduce_angle(phase_of(cfg));
    if (cfg.phi_pi) p["phi_pi"] = *cfg.phi_pi;
    if (const auto x = overlap_of(cfg)) {
        p["x"] = *x;
        p["N"] = cfg.count ? *cfg.count : static_cast<std::uint64_t>(std::llround(1.0 / (*x * *x)));
    }
    return p;
}

json meta_json(const RunConfig& cfg) {
    return {{"tool", kToolName}, {"version", kToolVersion}, {"subcommand", cfg.subcommand}};
}

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Emission {
    std::string body;
    std::string side_path;  // optional second file (sweep N,T CSV)
    std::string side_body;
};

Emission cmd_evolve(const RunConfig& cfg) {
    const SearchParams p = params_of(cfg);
    const EvolutionTrace trace = trace_evolution(p, cfg.t_max, cfg.samples);

    if (cfg.format == "json") {
        json j;
        j["params"] = params_json(cfg);
        j["params"]["t_max"] = cfg.t_max;
        j["params"]["samples"] = cfg.samples;
        json rows = json::array();
        for (const auto& s : trace.samples) {
            rows.push_back({{"t", s.t},
                            {"p_success", s.p_success},
                            {"re_w", s.state.a_w.real()},
                            {"im_w", s.state.a_w.imag()},
                            {"re_r", s.state.a_r.real()},
                            {"im_r", s.state.a_r.imag()}});
        }
        j["samples"] = std::move(rows);
        j["meta"] = meta_json(cfg);
        return {dump(j), {}, {}};
    }

    std::string csv = "t,p_success,re_w,im_w,re_r,im_r\n";
    for (const auto& s : trace.samples) {
        csv += fmt::format("{},{},{},{},{},{}\n", csv_number(s.t), csv_number(s.p_success),
                           csv_number(s.state.a_w.real()), csv_number(s.state.a_w.imag()),
                           csv_number(s.state.a_r.real()), csv_number(s.state.a_r.imag()));
    }
    return {csv, {}, {}};
}

Emission cmd_runtime(const RunConfig& cfg) {
    const SearchParams p = params_of(cfg);
    const double formula_time = running_time(p);
    const MaximumReport max = find_first_maximum(p, cfg.grid_points);

    json j;
    j["params"] = params_json(cfg);
    j["params"]["grid_points"] = cfg.grid_points;
    j["formula_time"] = formula_time;
    j["numeric_argmax_time"] = max.t_star;
    j["numeric_max_probability"] = max.p_star;
    j["probability_at_formula_time"] = success_probability(p, formula_time);
    j["relative_gap"] = std::abs(max.t_star - formula_time) / formula_time;
    if (cfg.steps) {
        j["params"]["steps"] = *cfg.steps;
        const StateVector2 psi =
            integrate_reference(build_generalized(p), initial_state(p.overlap()), formula_time, *cfg.steps);
        j["reference_probability_at_formula_time"] = psi.target_probability();
    }
    j["type"] = std::string(to_string(classify(p, cfg.tolerance).type));
    j["meta"] = meta_json(cfg);
    return {dump(j), {}, {}};
}

Emission cmd_classify(const RunConfig& cfg) {
    const auto x = overlap_of(cfg);
    const Classification c = x ? classify(params_of(cfg), cfg.tolerance)
                               : classify(couplings_of(cfg), std::nullopt, cfg.tolerance);
    json j;
    j["params"] = params_json(cfg);
    j["params"]["tolerance"] = cfg.tolerance;
    j["type"] = std::string(to_string(c.type));
    j["condition"] = c.condition;
    if (!x) j["note"] = "no overlap given; the type3-1 phase condition was not evaluated";
    j["meta"] = meta_json(cfg);
    return {dump(j), {}, {}};
}

Emission cmd_bound(const RunConfig& cfg) {
    const SearchParams p = params_of(cfg);
    const SpeedLimitReport r = speed_limit_bound(p);
    json j;
    j["params"] = params_json(cfg);
    j["mean_energy"] = r.mean_energy;
    j["energy_spread"] = r.energy_spread;
    j["ml_component"] = r.ml_component;
    j["mt_component"] = r.mt_component;
    j["bound"] = r.bound;
    j["formula_time"] = r.formula_time;
    j["relative_gap"] = r.relative_gap;
    if (p.coupling() == 0.0) {
        // Leading-order values for the epsilon = 0 model, for comparison with the exact ones.
        j["leading_order"] = {{"mean_energy", p.energy()},
                              {"energy_spread", p.energy() * p.overlap()},
                              {"mt_component", 0.5 * std::numbers::pi / (p.energy() * p.overlap())}};
    }
    j["meta"] = meta_json(cfg);
    return {dump(j), {}, {}};
}

Emission cmd_decompose(const RunConfig& cfg) {
    const SearchParams p = params_of(cfg);
    const InteractionDecomposition d = decompose_interaction(p);
    const double err =
        max_abs_diff(recompose_from_interaction(d, p.overlap()).matrix(), build_generalized(p).matrix());
    json j;
    j["params"] = params_json(cfg);
    j["E1"] = d.e1;
    j["E2"] = d.e2;
    j["E3"] = d.e3;
    j["varphi"] = d.varphi;
    j["round_trip_max_error"] = err;
    j["meta"] = meta_json(cfg);
    return {dump(j), {}, {}};
}

Emission cmd_sweep(const RunConfig& cfg) {
    if (cfg.x || cfg.count) throw InvalidParams("'sweep' varies N itself; drop --x/--N");
    const Couplings c = couplings_of(cfg);
    const ScalingReport r = sweep_scaling(c, cfg.n_min, cfg.n_max, cfg.points);

    std::string csv = "N,T\n";
    for (const auto& s : r.samples) csv += fmt::format("{},{}\n", s.count, csv_number(s.time));
    if (cfg.format == "csv") return {csv, {}, {}};

    json j;
    j["params"] = params_json(cfg);
    j["params"]["n_min"] = cfg.n_min;
    j["params"]["n_max"] = cfg.n_max;
    j["params"]["points"] = cfg.points;
    j["slope"] = r.slope;
    j["slope_stderr"] = r.slope_stderr;
    j["intercept"] = r.intercept;
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"N", s.count}, {"T", s.time}});
    j["samples"] = std::move(samples);
    j["time_ratio_last_first"] = r.samples.back().time / r.samples.front().time;
    j["type"] = std::string(to_string(classify(c, std::nullopt, cfg.tolerance).type));
    j["meta"] = meta_json(cfg);
    return {dump(j), cfg.csv_path, cfg.csv_path.empty() ? std::string{} : csv};
}

bool write_file(const std::string& path, const std::string& body, std::ostream& err) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    f << body;
    f.flush();
    if (!f) {
        err << "error: failed writing '" << path << "'\n";
        return false;
    }
    return true;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateDynamics: return kExitDegenerate;
        default: return kExitInvalid;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Continuous-time quantum search on the two-level invariant subspace", kToolName};
    app.set_config("--config", "", "key=value file; command-line flags override it");
    app.require_subcommand(1);

    app.add_option("--E", cfg.energy, "Energy scale E (> 0)")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "Coupling epsilon, 0 <= epsilon <= E")->capture_default_str();
    auto* phi = app.add_option("--phi", cfg.phi, "Phase phi in radians");
    auto* phi_pi = app.add_option("--phi-pi", cfg.phi_pi, "Phase as a multiple of pi (phi = K pi)");
    phi->excludes(phi_pi);
    auto* x = app.add_option("--x", cfg.x, "Overlap x = <w|psi>, in (0, 1)");
    auto* n = app.add_option("--N", cfg.count, "Search-space size N (x = 1/sqrt(N))");
    x->excludes(n);
    app.add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
    app.add_option("--tol", cfg.tolerance, "Relative tolerance for type conditions")->capture_default_str();
    app.add_option("--grid-points", cfg.grid_points, "Grid density for the numerical argmax")
        ->envname("QSEARCH_GRID_POINTS")
        ->check(CLI::Range(std::size_t{3}, std::size_t{100'000'000}))
        ->capture_default_str();

    auto* evolve_cmd = app.add_subcommand("evolve", "Sample the exact evolution as CSV or JSON");
    evolve_cmd->add_option("--t-max", cfg.t_max, "Final time (>= 0)")->required();
    evolve_cmd->add_option("--samples", cfg.samples, "Number of rows")->capture_default_str();
    evolve_cmd->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str("csv");

    auto* runtime_cmd = app.add_subcommand("runtime", "Closed-form running time against the numerical argmax");
    runtime_cmd->add_option("--steps", cfg.steps, "Also integrate with the reference RK4 using this many steps");

    app.add_subcommand("classify", "Speedup type of the parameters");
    app.add_subcommand("bound", "Speed-limit quantities in the initial state");
    app.add_subcommand("decompose", "Free/interaction decomposition and its round-trip error");

    auto* sweep_cmd = app.add_subcommand("sweep", "Fit the log-log slope of T against N");
    sweep_cmd->add_option("--n-min", cfg.n_min, "Smallest N (>= 2)")->required();
    sweep_cmd->add_option("--n-max", cfg.n_max, "Largest N")->required();
    sweep_cmd->add_option("--points", cfg.points, "Number of geometric samples (>= 5)")->required();
    sweep_cmd->add_option("--format", cfg.format, "json or csv (N,T pairs)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str("json");
    sweep_cmd->add_option("--csv", cfg.csv_path, "Also write N,T pairs to this file");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (cfg.format.empty()) cfg.format = cfg.subcommand == "evolve" ? "csv" : "json";

    Emission emission;
    try {
        if (cfg.subcommand == "evolve") {
            emission = cmd_evolve(cfg);
        } else if (cfg.subcommand == "runtime") {
            emission = cmd_runtime(cfg);
        } else if (cfg.subcommand == "classify") {
            emission = cmd_classify(cfg);
        } else if (cfg.subcommand == "bound") {
            emission = cmd_bound(cfg);
        } else if (cfg.subcommand == "decompose") {
            emission = cmd_decompose(cfg);
        } else {
            emission = cmd_sweep(cfg);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }

    if (!emission.side_path.empty() && !write_file(emission.side_path, emission.side_body, err)) return kExitIo;
    if (cfg.output.empty()) {
        out << emission.body;
        out.flush();
        return out ? kExitOk : kExitIo;
    }
    return write_file(cfg.output, emission.body, err) ? kExitOk : kExitIo;
}

}  // namespace qsearch::cli
