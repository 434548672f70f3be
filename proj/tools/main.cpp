// densecoding: simulate and verify dense coding with arbitrary pure
// entangled states. Subcommands: bound, build, simulate, verify, sweep,
// search, montecarlo.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "densecoding/io.hpp"
#include "densecoding/protocol.hpp"
#include "densecoding/random.hpp"

namespace {

using namespace densecoding;

constexpr int EXIT_OK = 0;
constexpr int EXIT_CHECK_FAILED = 1;
constexpr int EXIT_INPUT_ERROR = 2;

constexpr double SATURATION_TOL = 1e-9;

struct StateOptions {
    std::string input_path;
    int d = 0;
    std::vector<double> lambdas;
    bool squared = false;

    bool any() const { return !input_path.empty() || d > 0 || !lambdas.empty(); }
};

struct OutputOptions {
    std::string format = "json";
    std::string output_path;
};

void add_state_options(CLI::App* cmd, StateOptions& opts) {
    cmd->add_option("--input", opts.input_path,
                    "state JSON file ('lambdas' or 'amplitudes_re'/'amplitudes_im' schema)");
    cmd->add_option("--d", opts.d, "local dimension; alone it selects the maximally entangled state");
    cmd->add_option("--lambdas", opts.lambdas,
                    "comma-separated Schmidt coefficients (sorted and renormalized)")
        ->delimiter(',');
    cmd->add_flag("--squared", opts.squared, "interpret --lambdas as squared weights");
}

void add_output_options(CLI::App* cmd, OutputOptions& opts, bool with_format = true) {
    if (with_format) {
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    }
    cmd->add_option("--output", opts.output_path, "write output to this file instead of stdout");
}

/// Resolves the Schmidt spectrum from --input / --d / --lambdas. Typed
/// coefficients are sorted descending and renormalized before validation so
/// that truncated decimals are accepted.
SchmidtSpectrum resolve_spectrum(const StateOptions& opts) {
    if (!opts.input_path.empty()) {
        if (!opts.lambdas.empty()) {
            throw std::runtime_error("--input and --lambdas are mutually exclusive");
        }
        SchmidtSpectrum spec = load_spectrum_file(opts.input_path);
        if (opts.d > 0 && spec.d() != opts.d) {
            throw std::runtime_error("--d does not match the dimension in " + opts.input_path);
        }
        return spec;
    }
    if (!opts.lambdas.empty()) {
        RVector values(static_cast<Eigen::Index>(opts.lambdas.size()));
        for (std::size_t i = 0; i < opts.lambdas.size(); ++i) values(i) = opts.lambdas[i];
        if (opts.d > 0 && values.size() != opts.d) {
            throw std::runtime_error("--d does not match the number of --lambdas entries");
        }
        if (!values.allFinite() || (values.array() < 0.0).any()) {
            throw std::runtime_error("--lambdas entries must be finite and nonnegative");
        }
        RVector weights = opts.squared ? values : RVector(values.cwiseProduct(values));
        return SchmidtSpectrum::from_squared(std::move(weights));
    }
    if (opts.d > 0) {
        return SchmidtSpectrum::maximally_entangled(opts.d);
    }
    throw std::runtime_error("no state given: use --input, --lambdas, or --d");
}

void emit(const OutputOptions& opts, const std::string& content) {
    if (opts.output_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(opts.output_path, content);
    }
}

void emit_json(const OutputOptions& opts, const Json& j) { emit(opts, j.dump(2)); }

Json spectrum_summary(const SchmidtSpectrum& spec) {
    Json j;
    j["d"] = spec.d();
    Json lambdas = Json::array();
    for (Eigen::Index i = 0; i < spec.lambdas.size(); ++i) lambdas.push_back(spec.lambdas(i));
    j["lambdas"] = std::move(lambdas);
    return j;
}

DenseCodingProtocol build_protocol(ProtocolKind kind, const SchmidtSpectrum& spec) {
    if (kind == ProtocolKind::approximate) return build_approximate_protocol(spec.d());
    if (spec.min_coefficient() <= ZERO_LAMBDA) {
        throw std::runtime_error(
            "unambiguous protocol is degenerate here: the least Schmidt coefficient is 0, the "
            "conclusive-probability bound d*lambda_min^2 is 0, and only the all-inconclusive "
            "measurement attains it");
    }
    return build_unambiguous_protocol(spec);
}

// ---------------------------------------------------------------------------
// bound

int cmd_bound(const StateOptions& state, const OutputOptions& out) {
    const SchmidtSpectrum spec = resolve_spectrum(state);
    const double approx = approximate_bound(spec);
    const double unamb = unambiguous_bound(spec);
    if (out.format == "csv") {
        std::ostringstream csv;
        csv << "d,approximate_bound,unambiguous_bound\n"
            << spec.d() << "," << format_full(approx) << "," << format_full(unamb) << "\n";
        emit(out, csv.str());
    } else {
        Json j;
        j["command"] = "bound";
        j["spectrum"] = spectrum_summary(spec);
        j["approximate_bound"] = approx;
        j["unambiguous_bound"] = unamb;
        emit_json(out, j);
    }
    return EXIT_OK;
}

// ---------------------------------------------------------------------------
// build

int cmd_build(const StateOptions& state, const OutputOptions& out, const std::string& kind_name) {
    const SchmidtSpectrum spec = resolve_spectrum(state);
    const ProtocolKind kind = protocol_kind_from_string(kind_name);
    const DenseCodingProtocol proto = build_protocol(kind, spec);
    emit(out, protocol_to_json(proto).dump(2));
    return EXIT_OK;
}

// ---------------------------------------------------------------------------
// simulate

Json simulation_summary(ProtocolKind kind, const SchmidtSpectrum& spec, const OutcomeMatrix& om) {
    Json summary;
    if (kind == ProtocolKind::approximate) {
        summary["average_success_probability"] = average_success_probability(om);
        summary["approximate_bound"] = approximate_bound(spec);
    } else {
        const UnambiguousReport rep = check_unambiguous(om);
        summary["conclusive_probability"] = rep.conclusive_probability;
        summary["unambiguous_bound"] = unambiguous_bound(spec);
        summary["max_off_diagonal"] = rep.max_off_diagonal;
        summary["max_diagonal_spread"] = rep.max_diagonal_spread;
        summary["unambiguous"] = rep.pass;
    }
    return summary;
}

int cmd_simulate(const StateOptions& state, const OutputOptions& out,
                 const std::string& kind_name, const std::string& emit_protocol_path) {
    const SchmidtSpectrum spec = resolve_spectrum(state);
    const ProtocolKind kind = protocol_kind_from_string(kind_name);
    const DenseCodingProtocol proto = build_protocol(kind, spec);
    const OutcomeMatrix om = outcome_matrix(proto, state_from_spectrum(spec));

    if (!emit_protocol_path.empty()) {
        write_text_file(emit_protocol_path, protocol_to_json(proto).dump(2));
    }

    if (out.format == "csv") {
        emit(out, outcome_to_csv(om));
    } else {
        Json j;
        j["command"] = "simulate";
        j["kind"] = to_string(kind);
        j["spectrum"] = spectrum_summary(spec);
        j["outcome_matrix"] = outcome_to_json(om);
        j["summary"] = simulation_summary(kind, spec, om);
        emit_json(out, j);
    }
    return EXIT_OK;
}

// ---------------------------------------------------------------------------
// verify

Json verify_protocol_checks(const DenseCodingProtocol& proto, const SchmidtSpectrum& spec,
                            bool require_saturation, bool& all_pass) {
    Json checks = Json::array();

    double max_channel_residual = 0.0;
    bool channels_pass = true;
    for (const auto& ch : proto.encodings) {
        const ChannelReport rep = validate_channel(ch);
        max_channel_residual = std::max(max_channel_residual, rep.residual);
        channels_pass = channels_pass && rep.pass;
    }
    {
        Json c;
        c["name"] = "encodings_trace_preserving";
        c["pass"] = channels_pass;
        c["max_residual"] = max_channel_residual;
        checks.push_back(std::move(c));
        all_pass = all_pass && channels_pass;
    }

    const PovmReport povm = validate_povm(proto.measurement);
    {
        double min_eig = povm.min_eigenvalues.empty() ? 0.0 : povm.min_eigenvalues.front();
        for (double v : povm.min_eigenvalues) min_eig = std::min(min_eig, v);
        Json c;
        c["name"] = "povm_valid";
        c["pass"] = povm.pass;
        c["completeness_residual"] = povm.completeness_residual;
        c["min_eigenvalue"] = min_eig;
        checks.push_back(std::move(c));
        all_pass = all_pass && povm.pass;
    }

    // Outcome checks only make sense for a structurally valid protocol.
    if (channels_pass && povm.pass) {
        const OutcomeMatrix om = outcome_matrix(proto, state_from_spectrum(spec));
        if (proto.measurement.has_inconclusive) {
            const UnambiguousReport rep = check_unambiguous(om);
            Json c;
            c["name"] = "unambiguous";
            c["pass"] = rep.pass;
            c["max_off_diagonal"] = rep.max_off_diagonal;
            c["max_diagonal_spread"] = rep.max_diagonal_spread;
            c["conclusive_probability"] = rep.conclusive_probability;
            checks.push_back(std::move(c));
            all_pass = all_pass && rep.pass;

            const double bound = unambiguous_bound(spec);
            const double achieved = rep.conclusive_probability;
            const bool pass = require_saturation ? std::abs(achieved - bound) <= SATURATION_TOL
                                                 : achieved <= bound + SATURATION_TOL;
            Json b;
            b["name"] = require_saturation ? "unambiguous_bound_saturated"
                                           : "unambiguous_bound_respected";
            b["pass"] = pass;
            b["bound"] = bound;
            b["achieved"] = achieved;
            b["gap"] = bound - achieved;
            checks.push_back(std::move(b));
            all_pass = all_pass && pass;
        } else {
            const double bound = approximate_bound(spec);
            const double achieved = average_success_probability(om);
            const bool pass = require_saturation ? std::abs(achieved - bound) <= SATURATION_TOL
                                                 : achieved <= bound + SATURATION_TOL;
            Json b;
            b["name"] = require_saturation ? "approximate_bound_saturated"
                                           : "approximate_bound_respected";
            b["pass"] = pass;
            b["bound"] = bound;
            b["achieved"] = achieved;
            b["gap"] = bound - achieved;
            checks.push_back(std::move(b));
            all_pass = all_pass && pass;
        }
    }
    return checks;
}

int cmd_verify(const StateOptions& state, const OutputOptions& out, const std::string& kind_name,
               const std::string& protocol_path) {
    Json j;
    j["command"] = "verify";
    bool all_pass = true;

    if (!protocol_path.empty()) {
        if (!state.any()) {
            throw std::runtime_error(
                "verify --protocol needs the shared state too: pass --input, --lambdas, or --d");
        }
        const SchmidtSpectrum spec = resolve_spectrum(state);
        const DenseCodingProtocol proto = load_protocol_file(protocol_path);
        if (proto.d != spec.d()) {
            throw std::runtime_error("protocol dimension does not match the state");
        }
        j["protocol"] = protocol_path;
        j["spectrum"] = spectrum_summary(spec);
        j["checks"] = verify_protocol_checks(proto, spec, /*require_saturation=*/false, all_pass);
    } else {
        const SchmidtSpectrum spec = resolve_spectrum(state);
        j["spectrum"] = spectrum_summary(spec);
        Json protocols = Json::array();
        const bool run_approx = kind_name.empty() || kind_name == "approximate";
        const bool run_unamb = kind_name.empty() || kind_name == "unambiguous";
        if (run_approx) {
            Json entry;
            entry["kind"] = "approximate";
            entry["checks"] = verify_protocol_checks(build_approximate_protocol(spec.d()), spec,
                                                     /*require_saturation=*/true, all_pass);
            protocols.push_back(std::move(entry));
        }
        if (run_unamb) {
            Json entry;
            entry["kind"] = "unambiguous";
            if (spec.min_coefficient() <= ZERO_LAMBDA) {
                if (kind_name == "unambiguous") {
                    throw std::runtime_error(
                        "unambiguous verification is degenerate: lambda_min is 0, the bound is 0");
                }
                entry["skipped"] = "least Schmidt coefficient is 0; bound 0 is attained trivially";
            } else {
                entry["checks"] = verify_protocol_checks(build_unambiguous_protocol(spec), spec,
                                                         /*require_saturation=*/true, all_pass);
            }
            protocols.push_back(std::move(entry));
        }
        j["protocols"] = std::move(protocols);
    }

    j["pass"] = all_pass;
    emit_json(out, j);
    return all_pass ? EXIT_OK : EXIT_CHECK_FAILED;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const OutputOptions& out, int d, int steps, double weight_min, double weight_max) {
    if (d < 2) throw std::runtime_error("sweep: --d must be at least 2");
    if (steps < 1) throw std::runtime_error("sweep: --steps must be at least 1");
    const double lower = weight_min > 0.0 ? weight_min : 1.0 / d;
    const double upper = weight_max > 0.0 ? weight_max : 1.0;
    if (lower < 1.0 / d - 1e-12 || upper > 1.0 + 1e-12 || lower > upper) {
        throw std::runtime_error("sweep: weight grid must lie inside [1/d, 1]");
    }

    const DenseCodingProtocol approx_proto = build_approximate_protocol(d);

    struct Row {
        RVector weights;
        double approx_bound, approx_achieved, unamb_bound, unamb_achieved;
    };
    std::vector<Row> rows;
    for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? lower : lower + (upper - lower) * i / (steps - 1);
        RVector weights(d);
        weights(0) = t;
        for (int k = 1; k < d; ++k) weights(k) = (1.0 - t) / (d - 1);
        const SchmidtSpectrum spec = SchmidtSpectrum::from_squared(weights);
        const BipartiteState psi = state_from_spectrum(spec);

        Row row;
        row.weights = spec.lambdas.cwiseProduct(spec.lambdas);
        row.approx_bound = approximate_bound(spec);
        row.approx_achieved = average_success_probability(outcome_matrix(approx_proto, psi));
        row.unamb_bound = unambiguous_bound(spec);
        if (spec.min_coefficient() > ZERO_LAMBDA) {
            const OutcomeMatrix om = outcome_matrix(build_unambiguous_protocol(spec), psi);
            row.unamb_achieved = check_unambiguous(om).conclusive_probability;
        } else {
            // degenerate spectrum: the all-inconclusive protocol attains 0
            row.unamb_achieved = 0.0;
        }
        rows.push_back(std::move(row));
    }

    if (out.format == "json") {
        Json arr = Json::array();
        for (const auto& row : rows) {
            Json r;
            r["d"] = d;
            Json weights = Json::array();
            for (Eigen::Index i = 0; i < row.weights.size(); ++i) weights.push_back(row.weights(i));
            r["squared_weights"] = std::move(weights);
            r["approximate_bound"] = row.approx_bound;
            r["approximate_achieved"] = row.approx_achieved;
            r["unambiguous_bound"] = row.unamb_bound;
            r["unambiguous_achieved"] = row.unamb_achieved;
            arr.push_back(std::move(r));
        }
        Json j;
        j["command"] = "sweep";
        j["rows"] = std::move(arr);
        emit_json(out, j);
    } else {
        std::ostringstream csv;
        csv << "d";
        for (int k = 0; k < d; ++k) csv << ",lambda_sq_" << k;
        csv << ",approximate_bound,approximate_achieved,unambiguous_bound,unambiguous_achieved\n";
        for (const auto& row : rows) {
            csv << d;
            for (Eigen::Index k = 0; k < row.weights.size(); ++k) {
                csv << "," << format_full(row.weights(k));
            }
            csv << "," << format_full(row.approx_bound) << "," << format_full(row.approx_achieved)
                << "," << format_full(row.unamb_bound) << "," << format_full(row.unamb_achieved)
                << "\n";
        }
        emit(out, csv.str());
    }
    return EXIT_OK;
}

// ---------------------------------------------------------------------------
// search

int cmd_search(const StateOptions& state, const OutputOptions& out, const std::string& kind_name,
               long trials, std::uint64_t seed) {
    const SchmidtSpectrum spec = resolve_spectrum(state);
    const ProtocolKind kind = protocol_kind_from_string(kind_name);
    if (kind == ProtocolKind::unambiguous && spec.min_coefficient() <= ZERO_LAMBDA) {
        throw std::runtime_error(
            "unambiguous search is degenerate: lambda_min is 0 and the bound is 0");
    }
    const BoundReport report = random_protocol_search(spec, trials, seed, kind);
    const bool within_bound = report.achieved_value <= report.bound_value + SEARCH_TOL;

    Json j;
    j["command"] = "search";
    j["kind"] = to_string(kind);
    j["spectrum"] = spectrum_summary(spec);
    j["trials"] = trials;
    j["seed"] = seed;
    j["bound"] = report.bound_value;
    j["best_found"] = report.achieved_value;
    j["gap"] = report.gap;
    j["within_bound"] = within_bound;
    emit_json(out, j);
    return within_bound ? EXIT_OK : EXIT_CHECK_FAILED;
}

// ---------------------------------------------------------------------------
// montecarlo

int cmd_montecarlo(const StateOptions& state, const OutputOptions& out,
                   const std::string& kind_name, long samples, std::uint64_t seed) {
    const SchmidtSpectrum spec = resolve_spectrum(state);
    const ProtocolKind kind = protocol_kind_from_string(kind_name);
    const DenseCodingProtocol proto = build_protocol(kind, spec);
    const OutcomeMatrix om = outcome_matrix(proto, state_from_spectrum(spec));
    const MonteCarloEstimate mc = monte_carlo_average(om, samples, seed);
    const double analytic = average_success_probability(om);
    const double deviation = std::abs(mc.estimate - analytic);
    const bool consistent = deviation <= std::max(4.0 * mc.std_error, 1e-12);

    Json j;
    j["command"] = "montecarlo";
    j["kind"] = to_string(kind);
    j["spectrum"] = spectrum_summary(spec);
    j["samples"] = samples;
    j["seed"] = seed;
    j["estimate"] = mc.estimate;
    j["std_error"] = mc.std_error;
    j["analytic_average"] = analytic;
    j["deviation"] = deviation;
    j["consistent"] = consistent;
    emit_json(out, j);
    return consistent ? EXIT_OK : EXIT_CHECK_FAILED;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dense coding with arbitrary pure entangled states: optimal protocols, exact "
                 "simulation, and bound verification"};
    app.require_subcommand(1);

    StateOptions state;
    OutputOptions out;
    std::string kind = "approximate";
    std::string verify_kind;  // empty = both
    std::string protocol_path;
    std::string emit_protocol_path;
    long trials = 1000;
    long samples = 100000;
    std::uint64_t seed = 0;
    int sweep_d = 2;
    int sweep_steps = 11;
    double weight_min = 0.0;
    double weight_max = 0.0;

    CLI::App* bound = app.add_subcommand("bound", "print both analytic bounds for a spectrum");
    add_state_options(bound, state);
    add_output_options(bound, out);

    CLI::App* build = app.add_subcommand("build", "construct an optimal protocol as JSON");
    add_state_options(build, state);
    add_output_options(build, out, /*with_format=*/false);
    build->add_option("--kind", kind, "protocol family")
        ->check(CLI::IsMember({"approximate", "unambiguous"}))
        ->capture_default_str();

    CLI::App* simulate =
        app.add_subcommand("simulate", "build an optimal protocol and print its outcome matrix");
    add_state_options(simulate, state);
    add_output_options(simulate, out);
    simulate->add_option("--kind", kind, "protocol family")
        ->check(CLI::IsMember({"approximate", "unambiguous"}))
        ->capture_default_str();
    simulate->add_option("--emit-protocol", emit_protocol_path,
                         "also write the constructed protocol JSON to this path");

    CLI::App* verify = app.add_subcommand(
        "verify", "check channels, POVM, unambiguity, and bound saturation; exit 1 on failure");
    add_state_options(verify, state);
    add_output_options(verify, out, /*with_format=*/false);
    verify->add_option("--kind", verify_kind, "restrict built-in verification to one family")
        ->check(CLI::IsMember({"approximate", "unambiguous"}));
    verify->add_option("--protocol", protocol_path, "verify this protocol JSON file instead");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "bounds and simulated values over a one-parameter spectrum family");
    add_output_options(sweep, out);
    sweep->add_option("--d", sweep_d, "local dimension")->capture_default_str();
    sweep->add_option("--steps", sweep_steps, "number of grid points")->capture_default_str();
    sweep->add_option("--weight-min", weight_min, "smallest lambda_0^2 (default 1/d)");
    sweep->add_option("--weight-max", weight_max, "largest lambda_0^2 (default 1)");

    CLI::App* search =
        app.add_subcommand("search", "random protocol search against the analytic bound");
    add_state_options(search, state);
    add_output_options(search, out);
    search->add_option("--kind", kind, "protocol family")
        ->check(CLI::IsMember({"approximate", "unambiguous"}))
        ->capture_default_str();
    search->add_option("--trials", trials, "number of random protocols")->capture_default_str();
    search->add_option("--seed", seed, "random seed")->capture_default_str();

    CLI::App* montecarlo = app.add_subcommand(
        "montecarlo", "Monte Carlo estimate of the average success probability over priors");
    add_state_options(montecarlo, state);
    add_output_options(montecarlo, out);
    montecarlo->add_option("--kind", kind, "protocol family")
        ->check(CLI::IsMember({"approximate", "unambiguous"}))
        ->capture_default_str();
    montecarlo->add_option("--samples", samples, "number of sampled priors")
        ->capture_default_str();
    montecarlo->add_option("--seed", seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_INPUT_ERROR;
    }

    try {
        if (bound->parsed()) return cmd_bound(state, out);
        if (build->parsed()) return cmd_build(state, out, kind);
        if (simulate->parsed()) return cmd_simulate(state, out, kind, emit_protocol_path);
        if (verify->parsed()) return cmd_verify(state, out, verify_kind, protocol_path);
        if (sweep->parsed()) return cmd_sweep(out, sweep_d, sweep_steps, weight_min, weight_max);
        if (search->parsed()) return cmd_search(state, out, kind, trials, seed);
        if (montecarlo->parsed()) return cmd_montecarlo(state, out, kind, samples, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    }
    return EXIT_OK;
}
