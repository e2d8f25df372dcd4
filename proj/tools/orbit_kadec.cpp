// Command-line front end: bound calculators, verification suites and
// Monte-Carlo sweeps with machine-readable CSV/JSON output. All numerics
// come from the library; the CLI only formats them.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kadec/bounds.hpp"
#include "kadec/checks.hpp"
#include "kadec/frames.hpp"
#include "kadec/rep.hpp"
#include "kadec/types.hpp"
#include "kadec/version.hpp"

namespace {

using nlohmann::json;

constexpr double pi_value = std::numbers::pi;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_gamma(const std::string& text) {
    if (text == "pi") return pi_value;
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    kadec::require(used == text.size(), "gamma: expected a number or 'pi'");
    return value;
}

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << body;
}

std::string config_line(const std::string& subcommand,
                        const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream line;
    line << "# orbit-kadec " << kadec::version << ' ' << subcommand;
    for (const auto& [key, value] : kv) line << ' ' << key << '=' << value;
    line << '\n';
    return line.str();
}

json json_envelope(const json& config, const json& results, const json& violations,
                   const json& worst_margins, std::uint64_t seed) {
    json envelope;
    envelope["config"] = config;
    envelope["results"] = results;
    envelope["violations"] = violations;
    envelope["worst_margins"] = worst_margins;
    envelope["version"] = kadec::version;
    envelope["seed"] = seed;
    return envelope;
}

kadec::rep::DiagonalRep load_rep(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open rep file: " + path);
    json doc = json::parse(file);
    kadec::require(doc.contains("gamma") && doc.contains("points"),
                   "rep file: need fields 'gamma' and 'points'");
    double gamma = 0.0;
    if (doc["gamma"].is_string())
        gamma = parse_gamma(doc["gamma"].get<std::string>());
    else
        gamma = doc["gamma"].get<double>();
    std::vector<double> points = doc["points"].get<std::vector<double>>();
    if (doc.contains("dimension"))
        kadec::require(doc["dimension"].get<std::size_t>() == points.size(),
                       "rep file: 'dimension' does not match the point count");
    return kadec::rep::DiagonalRep(std::move(points),
                                   kadec::SpectrumInterval(gamma));
}

struct BoundsArgs {
    double a = 0.0;
    double b = 0.0;
    std::string gamma_text;
    std::optional<double> delta;
    std::optional<double> kappa;
    std::string format = "csv";
    std::string out;
};

int run_bounds(const BoundsArgs& args) {
    const kadec::FrameBounds declared(args.a, args.b);
    const kadec::SpectrumInterval spec(parse_gamma(args.gamma_text));
    const double threshold = kadec::bounds::delta_max(declared, spec).delta;

    std::optional<kadec::FrameBounds> perturbed;
    if (args.delta)
        perturbed = kadec::bounds::perturbed_frame_bounds(
            declared, spec, kadec::PerturbationBudget(*args.delta));
    std::optional<bool> separated;
    if (args.kappa)
        separated = kadec::bounds::separation_satisfied(*args.kappa, declared, spec);

    const int grid = 32;
    const double t_max = 0.5 * pi_value / spec.gamma;
    std::vector<std::pair<std::string, std::string>> kv = {
        {"A", num(args.a)}, {"B", num(args.b)}, {"gamma", num(spec.gamma)}};
    if (args.delta) kv.push_back({"delta", num(*args.delta)});
    if (args.kappa) kv.push_back({"kappa", num(*args.kappa)});

    if (args.format == "csv") {
        std::ostringstream body;
        body << config_line("bounds", kv);
        body << "quantity,t,value\n";
        body << "delta_max,," << num(threshold) << '\n';
        if (perturbed) {
            body << "perturbed_lower,," << num(perturbed->lower) << '\n';
            body << "perturbed_upper,," << num(perturbed->upper) << '\n';
        }
        if (separated)
            body << "separation_satisfied,," << (*separated ? 1 : 0) << '\n';
        for (int k = 0; k <= grid; ++k) {
            const double t = t_max * k / grid;
            body << "deviation_bound," << num(t) << ','
                 << num(kadec::bounds::isometry_deviation_bound(spec, t)) << '\n';
            body << "baskakov_bound," << num(t) << ','
                 << num(kadec::bounds::baskakov_bound(spec, t)) << '\n';
        }
        emit(body.str(), args.out);
        return 0;
    }

    json config{{"A", args.a}, {"B", args.b}, {"gamma", spec.gamma}};
    if (args.delta) config["delta"] = *args.delta;
    if (args.kappa) config["kappa"] = *args.kappa;
    json results;
    results["delta_max"] = threshold;
    if (perturbed)
        results["perturbed"] = {{"lower", perturbed->lower},
                                {"upper", perturbed->upper}};
    if (separated) results["separation_satisfied"] = *separated;
    json table = json::array();
    for (int k = 0; k <= grid; ++k) {
        const double t = t_max * k / grid;
        table.push_back(
            {{"t", t},
             {"deviation_bound", kadec::bounds::isometry_deviation_bound(spec, t)},
             {"baskakov_bound", kadec::bounds::baskakov_bound(spec, t)}});
    }
    results["table"] = table;
    emit(json_envelope(config, results, 0, json::object(), 0).dump(2) + "\n",
         args.out);
    return 0;
}

struct VerifyArgs {
    std::string suite = "all";
    kadec::checks::Params params;
    std::string rep_path;
    std::string format = "csv";
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    std::vector<kadec::checks::CheckRow> rows;
    if (args.suite == "all")
        rows = kadec::checks::run_all(args.params);
    else
        rows = kadec::checks::run_suite(args.suite, args.params);
    if (!args.rep_path.empty() &&
        (args.suite == "all" || args.suite == "repspace")) {
        const kadec::rep::DiagonalRep model = load_rep(args.rep_path);
        std::vector<kadec::checks::CheckRow> extra =
            kadec::checks::user_rep_checks(model, args.params);
        rows.insert(rows.end(), extra.begin(), extra.end());
    }

    int failures = 0;
    for (const auto& r : rows)
        if (!r.passed) ++failures;

    std::vector<std::pair<std::string, std::string>> kv = {
        {"suite", args.suite},
        {"M", std::to_string(args.params.series_terms)},
        {"seed", std::to_string(args.params.seed)},
        {"N", std::to_string(args.params.base_size)},
        {"d", std::to_string(args.params.atomic_dimension)},
        {"p", std::to_string(args.params.atomic_p)},
        {"gram_trials", std::to_string(args.params.gram_trials)},
        {"synthesis_trials", std::to_string(args.params.synthesis_trials)},
        {"atomic_trials", std::to_string(args.params.atomic_trials)},
        {"calculus_trials", std::to_string(args.params.calculus_trials)}};
    if (!args.rep_path.empty()) kv.push_back({"rep", args.rep_path});
    if (args.format == "csv") {
        std::ostringstream body;
        body << config_line("verify", kv);
        body << "suite,check,passed,observed,threshold\n";
        for (const auto& r : rows)
            body << r.suite << ',' << r.name << ',' << (r.passed ? 1 : 0) << ','
                 << num(r.observed) << ',' << num(r.threshold) << '\n';
        emit(body.str(), args.out);
    } else {
        json config{{"suite", args.suite},
                    {"M", args.params.series_terms},
                    {"seed", args.params.seed},
                    {"N", args.params.base_size},
                    {"d", args.params.atomic_dimension},
                    {"p", args.params.atomic_p},
                    {"gram_trials", args.params.gram_trials},
                    {"synthesis_trials", args.params.synthesis_trials},
                    {"atomic_trials", args.params.atomic_trials},
                    {"calculus_trials", args.params.calculus_trials}};
        if (!args.rep_path.empty()) config["rep"] = args.rep_path;
        json results = json::array();
        for (const auto& r : rows)
            results.push_back({{"suite", r.suite},
                               {"check", r.name},
                               {"passed", r.passed},
                               {"observed", r.observed},
                               {"threshold", r.threshold}});
        json failed_names = json::array();
        for (const auto& r : rows)
            if (!r.passed) failed_names.push_back(r.suite + ": " + r.name);
        emit(json_envelope(config, results, failed_names, json::object(),
                           args.params.seed)
                     .dump(2) +
                 "\n",
             args.out);
    }
    if (failures > 0) {
        for (const auto& r : rows)
            if (!r.passed)
                std::cerr << "failed: [" << r.suite << "] " << r.name << '\n';
        return 1;
    }
    return 0;
}

struct SweepArgs {
    std::vector<double> deltas;
    double a = 2.0 * pi_value;
    double b = 2.0 * pi_value;
    std::string gamma_text = "pi";
    int n = 64;
    int trials = 200;
    std::uint64_t seed = 12345;
    bool force = false;
    std::string format = "csv";
    std::string out;
};

int run_sweep(const SweepArgs& args) {
    kadec::require(!args.deltas.empty(), "sweep: empty delta grid");
    kadec::require(args.n >= 1, "sweep: N must be positive");
    const kadec::FrameBounds declared(args.a, args.b);
    const kadec::SpectrumInterval spec(parse_gamma(args.gamma_text));
    const double threshold = kadec::bounds::delta_max(declared, spec).delta;
    if (!args.force)
        for (double d : args.deltas)
            kadec::require(d < threshold,
                           "sweep: delta grid must stay below delta_max "
                           "(pass --force to run anyway)");

    std::vector<double> base(args.n);
    for (int i = 0; i < args.n; ++i)
        base[i] = static_cast<double>(i - args.n / 2);

    std::vector<kadec::frames::ExperimentReport> reports;
    for (double d : args.deltas) {
        kadec::frames::ExperimentConfig config;
        config.base = base;
        config.declared = declared;
        config.spec = spec;
        config.delta = d;
        config.trials = args.trials;
        config.seed = args.seed;
        config.force = args.force;
        reports.push_back(kadec::frames::perturbation_experiment(config));
    }

    std::ostringstream delta_list;
    for (std::size_t i = 0; i < args.deltas.size(); ++i)
        delta_list << (i ? "," : "") << num(args.deltas[i]);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"A", num(args.a)},
        {"B", num(args.b)},
        {"gamma", num(spec.gamma)},
        {"delta", delta_list.str()},
        {"N", std::to_string(args.n)},
        {"trials", std::to_string(args.trials)},
        {"seed", std::to_string(args.seed)},
        {"force", args.force ? "1" : "0"}};

    int total_violations = 0;
    double worst_lower = std::numeric_limits<double>::infinity();
    double worst_upper = std::numeric_limits<double>::infinity();
    for (const auto& report : reports) {
        total_violations += report.violations;
        worst_lower = std::min(worst_lower, report.worst_lower_margin);
        worst_upper = std::min(worst_upper, report.worst_upper_margin);
    }

    if (args.format == "csv") {
        std::ostringstream body;
        body << config_line("sweep", kv);
        body << "delta,trial,seed,delta_hat,min_eig,max_eig,predicted_lower,"
                "predicted_upper,violation\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            for (const auto& row : reports[i].rows)
                body << num(args.deltas[i]) << ',' << row.trial << ','
                     << args.seed << ',' << num(row.delta_hat) << ','
                     << num(row.min_eig) << ',' << num(row.max_eig) << ','
                     << num(row.predicted_lower) << ','
                     << num(row.predicted_upper) << ','
                     << (row.violation ? 1 : 0) << '\n';
        emit(body.str(), args.out);
    } else {
        json config{{"A", args.a},
                    {"B", args.b},
                    {"gamma", spec.gamma},
                    {"delta", args.deltas},
                    {"N", args.n},
                    {"trials", args.trials},
                    {"force", args.force}};
        json results = json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& report = reports[i];
            results.push_back({{"delta", args.deltas[i]},
                               {"delta_max", report.delta_max},
                               {"window_lower", report.window_lower},
                               {"window_upper", report.window_upper},
                               {"min_eig", report.min_eig},
                               {"max_eig", report.max_eig},
                               {"violations", report.violations},
                               {"worst_lower_margin", report.worst_lower_margin},
                               {"worst_upper_margin", report.worst_upper_margin}});
        }
        json worst{{"lower", worst_lower}, {"upper", worst_upper}};
        emit(json_envelope(config, results, total_violations, worst, args.seed)
                     .dump(2) +
                 "\n",
             args.out);
    }
    // Force-mode excursions are data, not failures.
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perturbation bounds and verification suites for frames "
                 "sampled from isometric group orbits"};
    app.require_subcommand(1);

    BoundsArgs bounds_args;
    CLI::App* bounds_cmd = app.add_subcommand(
        "bounds", "Evaluate perturbation thresholds and bound formulas");
    bounds_cmd->add_option("--A", bounds_args.a, "Lower frame bound")->required();
    bounds_cmd->add_option("--B", bounds_args.b, "Upper frame bound")->required();
    bounds_cmd
        ->add_option("--gamma", bounds_args.gamma_text,
                     "Spectrum half-width (number or 'pi')")
        ->required();
    double bounds_delta = 0.0;
    CLI::Option* bounds_delta_opt = bounds_cmd->add_option(
        "--delta", bounds_delta, "Perturbation size for the perturbed bounds");
    double bounds_kappa = 0.0;
    CLI::Option* bounds_kappa_opt = bounds_cmd->add_option(
        "--kappa", bounds_kappa, "Minimal gap for the separation test");
    bounds_cmd->add_option("--format", bounds_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bounds_cmd->add_option("--out", bounds_args.out, "Output file (default stdout)");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Run the verification suites; exit 0 iff all checks pass");
    verify_cmd
        ->add_option("--suite", verify_args.suite,
                     "all, bounds, kadec-series, repspace, frames or atomic")
        ->check(CLI::IsMember(
            {"all", "bounds", "kadec-series", "repspace", "frames", "atomic"}));
    verify_cmd->add_option("--M", verify_args.params.series_terms,
                           "Series truncation length");
    verify_cmd->add_option("--seed", verify_args.params.seed, "Random seed");
    int verify_trials = 0;
    CLI::Option* verify_trials_opt = verify_cmd->add_option(
        "--trials", verify_trials, "Override the Monte-Carlo trial counts");
    verify_cmd->add_option("--N", verify_args.params.base_size,
                           "Base sample-set size");
    verify_cmd->add_option("--d", verify_args.params.atomic_dimension,
                           "Atomic model dimension");
    verify_cmd
        ->add_option("--p", verify_args.params.atomic_p,
                     "Atomic sequence-space exponent (1 or 2; default both)")
        ->check(CLI::IsMember({1, 2}));
    verify_cmd->add_option("--rep", verify_args.rep_path,
                           "JSON file with a representation to check "
                           "({\"gamma\": number|\"pi\", \"points\": [...]})");
    verify_cmd->add_option("--format", verify_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    verify_cmd->add_option("--out", verify_args.out, "Output file (default stdout)");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Monte-Carlo perturbation sweep over a delta grid");
    sweep_cmd->add_option("--delta", sweep_args.deltas, "Delta grid")
        ->required()
        ->expected(-1);
    sweep_cmd->add_option("--A", sweep_args.a, "Declared lower bound");
    sweep_cmd->add_option("--B", sweep_args.b, "Declared upper bound");
    sweep_cmd->add_option("--gamma", sweep_args.gamma_text,
                          "Spectrum half-width (number or 'pi')");
    sweep_cmd->add_option("--N", sweep_args.n, "Base sample-set size");
    sweep_cmd->add_option("--trials", sweep_args.trials, "Trials per delta");
    sweep_cmd->add_option("--seed", sweep_args.seed, "Random seed");
    sweep_cmd->add_flag("--force", sweep_args.force,
                        "Run even when a delta is at or above delta_max");
    sweep_cmd->add_option("--format", sweep_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_args.out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds_cmd->parsed()) {
            if (*bounds_delta_opt) bounds_args.delta = bounds_delta;
            if (*bounds_kappa_opt) bounds_args.kappa = bounds_kappa;
            return run_bounds(bounds_args);
        }
        if (verify_cmd->parsed()) {
            if (*verify_trials_opt) {
                kadec::require(verify_trials > 0,
                               "verify: trials must be positive");
                verify_args.params.gram_trials = verify_trials;
                verify_args.params.synthesis_trials = verify_trials;
                verify_args.params.atomic_trials = verify_trials;
                verify_args.params.calculus_trials = verify_trials;
            }
            return run_verify(verify_args);
        }
        if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    }
    return 0;
}
