#include "kadec/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "kadec/atomic.hpp"
#include "kadec/bounds.hpp"
#include "kadec/frames.hpp"
#include "kadec/linalg.hpp"
#include "kadec/rng.hpp"
#include "kadec/series.hpp"
#include "kadec/types.hpp"

namespace kadec::checks {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const char* pattern, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

CheckRow row(std::string suite, std::string name, bool passed, double observed,
             double threshold) {
    return CheckRow{std::move(suite), std::move(name), passed, observed,
                    threshold};
}

std::vector<double> integer_base(int n) {
    std::vector<double> base(n);
    for (int i = 0; i < n; ++i) base[i] = static_cast<double>(i - n / 2);
    return base;
}

double min_gap(const std::vector<double>& points) {
    std::vector<double> sorted(points);
    std::sort(sorted.begin(), sorted.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i)
        gap = std::min(gap, sorted[i] - sorted[i - 1]);
    return gap;
}

} // namespace

std::vector<CheckRow> quarter_threshold_checks() {
    const double value =
        bounds::delta_max(FrameBounds(1.0, 1.0), SpectrumInterval(pi)).delta;
    const double err = std::fabs(value - 0.25);
    return {row("bounds", "tight-frame threshold equals 1/4 at gamma=pi",
                err <= 1e-12, err, 1e-12)};
}

std::vector<CheckRow> formula_identity_checks() {
    std::vector<CheckRow> rows;

    // Perturbed atomic bounds coincide with the contraction-lemma bounds at
    // mu = ||T_X|| * deviation factor.
    {
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.0}) {
            for (double factor : {1.0, 2.0, 5.0}) {
                const double b = a * factor;
                for (double tb : {1.0, 2.0, 10.0}) {
                    const double t_norm = tb / b;
                    for (double g : {1.0, pi}) {
                        const FrameBounds base(a, b);
                        const SpectrumInterval spec(g);
                        const double dmax =
                            bounds::atomic_delta_max(b, t_norm, spec).delta;
                        for (double f : {0.25, 0.5, 0.9}) {
                            const PerturbationBudget budget(f * dmax);
                            const FrameBounds left = bounds::perturbed_atomic_bounds(
                                base, t_norm, spec, budget);
                            const double mu =
                                t_norm *
                                bounds::deviation_factor(budget.delta * g);
                            const FrameBounds right =
                                bounds::christensen_heil_bounds(base, mu);
                            worst = std::max(
                                worst, std::fabs(left.lower - right.lower) /
                                           right.lower);
                            worst = std::max(
                                worst, std::fabs(left.upper - right.upper) /
                                           right.upper);
                        }
                    }
                }
            }
        }
        rows.push_back(row("bounds",
                           "atomic bounds match contraction-lemma composition",
                           worst <= 1e-14, worst, 1e-14));
    }

    // The two closed forms of the deviation factor agree on a dense grid.
    {
        double worst = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double theta = 0.5 * pi * k / 1000.0;
            worst = std::max(worst,
                             std::fabs(bounds::deviation_factor(theta) -
                                       bounds::deviation_factor_product(theta)));
        }
        rows.push_back(row("bounds", "deviation factor closed forms agree",
                           worst <= 1e-12, worst, 1e-12));
    }

    // defect(delta, B) < sqrt(A) whenever delta is below the threshold:
    // the arithmetic link between the budget formula and the synthesis
    // perturbation lemma with lambda = 0.
    {
        int violations = 0;
        double worst_margin = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 100; ++i) {
            const double ratio = static_cast<double>(i) / 100.0;
            const FrameBounds fb(ratio, 1.0);
            const double dmax =
                bounds::delta_max(fb, SpectrumInterval(pi)).delta;
            for (int j = 1; j <= 100; ++j) {
                const double delta = dmax * static_cast<double>(j) / 101.0;
                const double margin =
                    std::sqrt(ratio) - series::defect(delta, 1.0);
                worst_margin = std::min(worst_margin, margin);
                if (!(margin > 0.0)) ++violations;
            }
        }
        rows.push_back(row("bounds",
                           "defect stays below sqrt(A) under the threshold",
                           violations == 0, worst_margin, 0.0));
    }
    return rows;
}

std::vector<CheckRow> series_mass_checks(const Params& params) {
    std::vector<CheckRow> rows;
    for (long scale : {1L, 10L}) {
        const long m = params.series_terms * scale;
        const double cap = scale == 1 ? 1e-4 : 1e-5;
        for (int i = 1; i <= 24; ++i) {
            const double delta = 0.01 * i;
            const series::Coefficients coeffs(delta);
            const series::Truncation trunc = series::make_truncation(coeffs, m);
            const double partial = series::coefficient_mass(coeffs, trunc);
            const double closed = bounds::deviation_factor(pi * delta);
            const double err =
                std::fabs(partial + 0.5 * trunc.tail_bound - closed);
            const bool ok = err <= trunc.tail_bound && trunc.tail_bound <= cap;
            rows.push_back(row("kadec-series",
                               fmt("mass identity delta=%.2f M=", delta) +
                                   std::to_string(m),
                               ok, err, std::min(trunc.tail_bound, cap)));
        }
    }
    return rows;
}

std::vector<CheckRow> deviation_bound_checks(const Params&) {
    std::vector<CheckRow> rows;
    for (double g : {1.0, pi, 10.0}) {
        const SpectrumInterval spec(g);
        std::vector<double> points(257);
        for (int j = 0; j <= 256; ++j) points[j] = g * j / 256.0;
        const rep::DiagonalRep model(points, spec);
        const double t_max = 0.5 * pi / g;
        int dominance_violations = 0;
        int improvement_violations = 0;
        double worst_gap = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 50; ++k) {
            const double t = t_max * k / 50.0;
            const double observed = rep::operator_norm_deviation(model, t);
            const double bound = bounds::isometry_deviation_bound(spec, t);
            const double wide = bounds::baskakov_bound(spec, t);
            if (observed > bound + 1e-12) ++dominance_violations;
            if (!(bound < wide)) ++improvement_violations;
            worst_gap = std::min(worst_gap, bound - observed);
        }
        rows.push_back(row("repspace",
                           fmt("deviation bound dominates model gamma=%g", g),
                           dominance_violations == 0, worst_gap, 0.0));
        rows.push_back(row("repspace",
                           fmt("deviation bound improves sine bound gamma=%g", g),
                           improvement_violations == 0,
                           static_cast<double>(improvement_violations), 0.0));
    }
    return rows;
}

std::vector<CheckRow> calculus_agreement_checks(const Params& params) {
    int violations = 0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < params.calculus_trials; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0xCA1CUL, trial);
        const std::size_t d = 32;
        std::vector<double> points(d);
        for (auto& p : points) p = stream.uniform(-pi, pi);
        const rep::DiagonalRep model(points, SpectrumInterval(pi));
        rep::ModuleVector x(d);
        for (auto& z : x) z = stream.complex_box();
        rep::Symbol h;
        for (int term = 0; term < 8; ++term)
            h.terms.push_back({stream.complex_box(), stream.uniform(-5.0, 5.0)});

        const rep::ModuleVector sum_route = rep::calculus_apply(model, h, x);
        const rep::ModuleVector mult_route = rep::spectral_apply(model, h, x);
        double err_sq = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            err_sq += std::norm(sum_route[j] - mult_route[j]);
        const double tolerance = 1e-10 * h.l1_norm() * rep::norm2(x);
        const double err = std::sqrt(err_sq);
        worst_ratio = std::max(worst_ratio, err / tolerance);
        if (err > tolerance) ++violations;
    }
    return {row("repspace", "translate sum agrees with spectral multiplier",
                violations == 0, worst_ratio, 1.0)};
}

std::vector<CheckRow> module_action_checks(const Params& params) {
    std::vector<CheckRow> rows;
    const std::size_t d = 16;
    std::vector<double> points(d);
    for (std::size_t j = 0; j < d; ++j)
        points[j] = -2.0 + 4.0 * static_cast<double>(j) / (d - 1);
    const rep::DiagonalRep model(points, SpectrumInterval(2.0));
    rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0xAC7104, 0);
    rep::ModuleVector x(d);
    for (auto& z : x) z = stream.complex_box();

    const double sigma = 0.35;
    rep::ModuleVector target(d);
    for (std::size_t j = 0; j < d; ++j)
        target[j] = std::exp(-0.5 * sigma * sigma * points[j] * points[j]) * x[j];
    const double target_norm = rep::norm2(target);

    std::vector<double> errors;
    for (int n : {17, 25, 49}) {
        rep::SampledFunction f;
        f.start = -6.0;
        f.step = 12.0 / (n - 1);
        f.samples.resize(n);
        for (int k = 0; k < n; ++k) {
            const double t = f.start + k * f.step;
            f.samples[k] = std::exp(-t * t / (2.0 * sigma * sigma)) /
                           (sigma * std::sqrt(2.0 * pi));
        }
        const rep::ModuleVector acted = rep::module_action(model, f, x);
        double err_sq = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            err_sq += std::norm(acted[j] - target[j]);
        errors.push_back(std::sqrt(err_sq) / target_norm);
    }
    const bool decreasing = errors[0] > errors[1] && errors[1] > errors[2];
    rows.push_back(row("repspace", "quadrature converges under grid refinement",
                       decreasing, errors[2], errors[0]));
    rows.push_back(row("repspace",
                       "quadrature matches spectral multiplication",
                       errors[2] <= 1e-6, errors[2], 1e-6));

    int contraction_violations = 0;
    for (int trial = 0; trial < 20; ++trial) {
        rng::Stream trial_stream =
            rng::Stream::for_trial(params.seed ^ 0xAC7104, 100 + trial);
        rep::SampledFunction f;
        f.start = -3.0;
        f.step = 6.0 / 40.0;
        f.samples.resize(41);
        for (auto& s : f.samples) s = trial_stream.uniform01();
        rep::ModuleVector y(d);
        for (auto& z : y) z = trial_stream.complex_box();
        const rep::ModuleVector acted = rep::module_action(model, f, y);
        const double lhs = rep::norm2(acted);
        const double rhs = f.l1_norm() * rep::norm2(y);
        if (lhs > rhs * (1.0 + 1e-12)) ++contraction_violations;
    }
    rows.push_back(row("repspace", "module action is an l1 contraction",
                       contraction_violations == 0,
                       static_cast<double>(contraction_violations), 0.0));
    return rows;
}

std::vector<CheckRow> gram_containment_checks(const Params& params) {
    frames::ExperimentConfig config;
    config.base = integer_base(params.base_size);
    config.declared = FrameBounds(2.0 * pi, 2.0 * pi);
    config.spec = SpectrumInterval(pi);
    config.delta = 0.2;
    config.trials = params.gram_trials;
    config.seed = params.seed;
    config.tolerance = 1e-8;
    const frames::ExperimentReport report =
        frames::perturbation_experiment(config);

    std::vector<CheckRow> rows;
    rows.push_back(row("frames", "perturbed gram spectra: window excursions",
                       report.violations == 0,
                       static_cast<double>(report.violations), 0.0));
    rows.push_back(row("frames", "smallest eigenvalue above predicted lower",
                       report.min_eig >= report.window_lower - 1e-8,
                       report.min_eig, report.window_lower - 1e-8));
    rows.push_back(row("frames", "largest eigenvalue below predicted upper",
                       report.max_eig <= report.window_upper + 1e-8,
                       report.max_eig, report.window_upper + 1e-8));
    return rows;
}

std::vector<CheckRow> synthesis_gap_checks(const Params& params) {
    const int n = params.base_size;
    const std::vector<double> base = integer_base(n);
    int violations = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < params.synthesis_trials; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0xFCAD, trial);
        std::vector<double> perturbed(base);
        for (auto& p : perturbed) p += stream.uniform(-0.2, 0.2);
        // Pin the sup-perturbation at exactly 0.2.
        const std::size_t pick = static_cast<std::size_t>(trial % n);
        perturbed[pick] =
            base[pick] + (stream.uniform01() < 0.5 ? -0.2 : 0.2);
        std::vector<frames::cdouble> c(n);
        for (auto& z : c) z = stream.complex_box();
        const frames::SampleSet samples{base, perturbed};
        const frames::UCheckResult result =
            frames::kadec_U_check(samples, c, 2.0 * pi);
        if (result.violation) ++violations;
        worst_slack = std::min(worst_slack, result.bound - result.u);
    }
    return {row("frames", "synthesis gap bounded by defect estimate",
                violations == 0, worst_slack, 0.0)};
}

std::vector<CheckRow> separation_consistency_checks(const Params& params) {
    struct Corpus {
        std::string name;
        std::vector<double> points;
    };
    std::vector<Corpus> corpus;
    corpus.push_back({"integer base", integer_base(32)});
    {
        std::vector<double> alt = integer_base(64);
        for (std::size_t i = 0; i < alt.size(); ++i)
            alt[i] += (i % 2 == 0) ? 0.2 : -0.2;
        corpus.push_back({"alternating shift", std::move(alt)});
    }
    {
        std::vector<double> stretched = integer_base(32);
        for (auto& p : stretched) p *= 1.5;
        corpus.push_back({"stretched base", std::move(stretched)});
    }
    {
        std::vector<double> dense(8);
        for (int i = 0; i < 8; ++i) dense[i] = 0.4 * i;
        corpus.push_back({"dense base", std::move(dense)});
    }
    {
        rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0x5EB, 0);
        std::vector<double> jittered = integer_base(64);
        for (auto& p : jittered) p += stream.uniform(-0.1, 0.1);
        corpus.push_back({"random perturbation", std::move(jittered)});
    }

    std::vector<CheckRow> rows;
    const SpectrumInterval spec(pi);
    for (const Corpus& item : corpus) {
        const frames::GramMatrix gram = frames::exp_gram(item.points);
        const frames::FrameEstimate estimate = frames::frame_bounds_estimate(gram);
        const FrameBounds declared(estimate.lower_hat, estimate.upper_hat);
        const frames::RieszCheckReport riesz =
            frames::riesz_inequality_check(gram, declared, 50, params.seed);
        const double gap = min_gap(item.points);
        const bool separated = bounds::separation_satisfied(gap, declared, spec);
        rows.push_back(row("frames",
                           "separation condition holds: " + item.name,
                           separated && riesz.violations == 0, gap,
                           0.5 * pi / spec.gamma));
    }
    return rows;
}

std::vector<CheckRow> atomic_perturbation_checks(const Params& params) {
    require(params.atomic_dimension >= 1,
            "atomic_perturbation_checks: dimension must be positive");
    require(params.atomic_p == 0 || params.atomic_p == 1 || params.atomic_p == 2,
            "atomic_perturbation_checks: p must be 0 (both), 1 or 2");
    const std::size_t d = static_cast<std::size_t>(params.atomic_dimension);
    rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0xA70, 0);
    std::vector<double> points(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double midpoint = -pi + (2.0 * j + 1.0) * pi / d;
        points[j] = midpoint + stream.uniform(-pi / 16.0, pi / 16.0);
    }
    const rep::DiagonalRep model(points, SpectrumInterval(pi));
    rep::ModuleVector generator(d);
    for (auto& z : generator)
        z = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                       stream.uniform(0.0, 2.0 * pi));
    std::vector<double> samples(2 * d);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = static_cast<double>(i);

    std::vector<CheckRow> rows;
    const PerturbationBudget budget(0.02);
    if (params.atomic_p == 0 || params.atomic_p == 2) {
        const atomic::OrbitDecomposition orbit =
            atomic::make_orbit_decomposition(model, generator, samples, 2);
        const atomic::PerturbationReport report = atomic::perturbation_check(
            orbit, budget, params.atomic_trials, params.seed);
        rows.push_back(row("atomic", "p=2 synthesis deviation within mu",
                           report.hypothesis_violations == 0 &&
                               report.exact_within_mu,
                           report.exact_deviation, report.mu));
        rows.push_back(row("atomic", "p=2 perturbed dual reconstructs",
                           report.dual_constructed &&
                               report.dual_reconstruction_error <= 1e-9,
                           report.dual_reconstruction_error, 1e-9));
        rows.push_back(row("atomic",
                           "p=2 optimal perturbed bounds inside window",
                           report.containment_failures == 0,
                           static_cast<double>(report.containment_failures),
                           0.0));
    }
    if (params.atomic_p == 0 || params.atomic_p == 1) {
        const atomic::OrbitDecomposition orbit =
            atomic::make_orbit_decomposition(model, generator, samples, 1);
        const atomic::PerturbationReport report = atomic::perturbation_check(
            orbit, budget, params.atomic_trials, params.seed);
        rows.push_back(row("atomic", "p=1 column deviation within mu",
                           report.hypothesis_violations == 0 &&
                               report.exact_within_mu,
                           report.exact_deviation, report.mu));
    }
    return rows;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "bounds", "kadec-series", "repspace", "frames", "atomic"};
    return names;
}

std::vector<CheckRow> run_suite(const std::string& suite, const Params& params) {
    std::vector<CheckRow> rows;
    auto append = [&rows](std::vector<CheckRow> more) {
        rows.insert(rows.end(), more.begin(), more.end());
    };
    if (suite == "bounds") {
        append(quarter_threshold_checks());
        append(formula_identity_checks());
    } else if (suite == "kadec-series") {
        append(series_mass_checks(params));
    } else if (suite == "repspace") {
        append(deviation_bound_checks(params));
        append(calculus_agreement_checks(params));
        append(module_action_checks(params));
    } else if (suite == "frames") {
        append(gram_containment_checks(params));
        append(synthesis_gap_checks(params));
        append(separation_consistency_checks(params));
    } else if (suite == "atomic") {
        append(atomic_perturbation_checks(params));
    } else {
        throw std::domain_error("run_suite: unknown suite '" + suite + "'");
    }
    return rows;
}

std::vector<CheckRow> run_all(const Params& params) {
    std::vector<CheckRow> rows;
    for (const std::string& suite : suite_names()) {
        std::vector<CheckRow> more = run_suite(suite, params);
        rows.insert(rows.end(), more.begin(), more.end());
    }
    return rows;
}

std::vector<CheckRow> user_rep_checks(const rep::DiagonalRep& model,
                                      const Params& params) {
    std::vector<CheckRow> rows;
    const double g = model.spec().gamma;

    int isometry_violations = 0;
    for (int trial = 0; trial < 20; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0x0E9, trial);
        rep::ModuleVector x(model.dimension());
        for (auto& z : x) z = stream.complex_box();
        const double t = stream.uniform(-10.0, 10.0);
        const double before = rep::norm2(x);
        const double after = rep::norm2(rep::apply_rep(model, t, x));
        if (std::fabs(after - before) > 1e-12 * (1.0 + before))
            ++isometry_violations;
    }
    rows.push_back(row("repspace", "user rep: orbits preserve the norm",
                       isometry_violations == 0,
                       static_cast<double>(isometry_violations), 0.0));

    int dominance_violations = 0;
    const double t_max = 0.5 * pi / g;
    for (int k = 1; k <= 50; ++k) {
        const double t = t_max * k / 50.0;
        if (rep::operator_norm_deviation(model, t) >
            bounds::isometry_deviation_bound(model.spec(), t) + 1e-12)
            ++dominance_violations;
    }
    rows.push_back(row("repspace", "user rep: deviation bound dominates",
                       dominance_violations == 0,
                       static_cast<double>(dominance_violations), 0.0));

    int calculus_violations = 0;
    for (int trial = 0; trial < 20; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(params.seed ^ 0x0EA, trial);
        rep::ModuleVector x(model.dimension());
        for (auto& z : x) z = stream.complex_box();
        rep::Symbol h;
        for (int term = 0; term < 6; ++term)
            h.terms.push_back({stream.complex_box(), stream.uniform(-5.0, 5.0)});
        const rep::ModuleVector sum_route = rep::calculus_apply(model, h, x);
        const rep::ModuleVector mult_route = rep::spectral_apply(model, h, x);
        double err_sq = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            err_sq += std::norm(sum_route[j] - mult_route[j]);
        if (std::sqrt(err_sq) > 1e-10 * h.l1_norm() * rep::norm2(x))
            ++calculus_violations;
    }
    rows.push_back(row("repspace", "user rep: calculus routes agree",
                       calculus_violations == 0,
                       static_cast<double>(calculus_violations), 0.0));
    return rows;
}

} // namespace kadec::checks
