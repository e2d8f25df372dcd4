#include "kadec/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kadec/bounds.hpp"
#include "kadec/parallel.hpp"
#include "kadec/rng.hpp"

namespace kadec::frames {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double coincidence_threshold = 1e-12;

// integral_{-pi}^{pi} e^{i w t} dt, with the analytic limit at w = 0
double exp_inner(double w) {
    if (std::fabs(w) < coincidence_threshold) return 2.0 * pi;
    return 2.0 * std::sin(pi * w) / w;
}

GramMatrix exp_gram_impl(const std::vector<double>& mu,
                         [[maybe_unused]] bool parallel) {
    const std::size_t n = mu.size();
    require(n >= 1, "exp_gram: need at least one frequency");
    for (double m : mu)
        require(std::isfinite(m), "exp_gram: frequencies must be finite");
    linalg::Matrix g(n, n);
    const long rows = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget()) \
    if (parallel && n >= 64)
#endif
    for (long i = 0; i < rows; ++i) {
        const std::size_t m = static_cast<std::size_t>(i);
        g(m, m) = 2.0 * pi;
        for (std::size_t k = m + 1; k < n; ++k)
            g(m, k) = exp_inner(mu[k] - mu[m]);
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = m + 1; k < n; ++k) g(k, m) = g(m, k);
    return GramMatrix{std::move(g)};
}

GramMatrix orbit_gram_impl(const ModelOrbit& orbit,
                           [[maybe_unused]] bool parallel) {
    const std::size_t n = orbit.samples.size();
    const std::size_t d = orbit.representation.dimension();
    require(n >= 1, "orbit_gram: need at least one sample point");
    require(orbit.generator.size() == d, "orbit_gram: generator dimension mismatch");
    double norm_sq = 0.0;
    std::vector<double> weight(d);
    for (std::size_t j = 0; j < d; ++j) {
        weight[j] = std::norm(orbit.generator[j]);
        norm_sq += weight[j];
    }
    linalg::Matrix g(n, n);
    const long rows = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget()) \
    if (parallel && n * d >= 4096)
#endif
    for (long i = 0; i < rows; ++i) {
        const std::size_t m = static_cast<std::size_t>(i);
        g(m, m) = norm_sq; // isometry: diagonal entries are exactly ||x||^2
        for (std::size_t k = m + 1; k < n; ++k) {
            const double gap = orbit.samples[k] - orbit.samples[m];
            cdouble acc(0.0, 0.0);
            for (std::size_t j = 0; j < d; ++j)
                acc += weight[j] *
                       std::polar(1.0, gap * orbit.representation.points()[j]);
            g(m, k) = acc;
        }
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = m + 1; k < n; ++k) g(k, m) = std::conj(g(m, k));
    return GramMatrix{std::move(g)};
}

std::vector<cdouble> random_coefficients(rng::Stream& stream, std::size_t n) {
    std::vector<cdouble> c(n);
    for (auto& z : c) z = stream.complex_box();
    return c;
}

} // namespace

double SampleSet::delta_hat() const {
    require(perturbed.has_value(), "SampleSet: no perturbed points present");
    require(perturbed->size() == base.size(),
            "SampleSet: base and perturbed lists must have equal length");
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
        worst = std::max(worst, std::fabs((*perturbed)[i] - base[i]));
    return worst;
}

GramMatrix exp_gram(const std::vector<double>& frequencies) {
    return exp_gram_impl(frequencies, true);
}

GramMatrix orbit_gram(const OrbitSystem& system) {
    require(std::holds_alternative<ModelOrbit>(system),
            "orbit_gram: exponential systems have exact inner products; use exp_gram");
    return orbit_gram_impl(std::get<ModelOrbit>(system), true);
}

linalg::Matrix synthesis_matrix(const ModelOrbit& orbit) {
    const std::size_t d = orbit.representation.dimension();
    const std::size_t n = orbit.samples.size();
    require(orbit.generator.size() == d,
            "synthesis_matrix: generator dimension mismatch");
    require(n >= 1, "synthesis_matrix: need at least one sample point");
    linalg::Matrix s(d, n);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < n; ++k)
            s(j, k) = std::polar(1.0, orbit.samples[k] *
                                          orbit.representation.points()[j]) *
                      orbit.generator[j];
    return s;
}

double quadratic_form(const GramMatrix& gram, const std::vector<cdouble>& c) {
    require(gram.entries.rows() == c.size(), "quadratic_form: dimension mismatch");
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        cdouble row(0.0, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j)
            row += gram.entries(i, j) * c[j];
        acc += std::conj(c[i]) * row;
    }
    return acc.real();
}

FrameEstimate frame_bounds_estimate(const GramMatrix& gram) {
    const std::size_t n = gram.entries.rows();
    require(n >= 1 && gram.entries.cols() == n,
            "frame_bounds_estimate: Gram matrix must be square");
    const double scale = std::max(1.0, linalg::max_abs(gram.entries));
    require(linalg::hermitian_defect(gram.entries) <= 1e-12 * scale,
            "frame_bounds_estimate: matrix is not Hermitian within tolerance");
    const std::vector<double> ev = linalg::hermitian_eigenvalues(gram.entries);
    require(ev.front() >= -1e-10 * scale,
            "frame_bounds_estimate: matrix is not positive semidefinite");
    FrameEstimate est;
    est.lower_hat = std::max(ev.front(), 0.0);
    est.upper_hat = ev.back();
    est.method = EstimateMethod::gram_eigen;
    est.truncation = n;
    return est;
}

FrameEstimate frame_operator_bounds(const OrbitSystem& system) {
    require(std::holds_alternative<ModelOrbit>(system),
            "frame_operator_bounds: only the model kind has a finite frame operator");
    const ModelOrbit& orbit = std::get<ModelOrbit>(system);
    const linalg::Matrix s = synthesis_matrix(orbit);
    const linalg::Matrix op = linalg::multiply(s, linalg::adjoint(s));
    const std::vector<double> ev = linalg::hermitian_eigenvalues(op);
    FrameEstimate est;
    est.lower_hat = std::max(ev.front(), 0.0);
    est.upper_hat = ev.back();
    est.method = EstimateMethod::frame_operator_eigen;
    est.truncation = orbit.samples.size();
    return est;
}

RieszCheckReport riesz_inequality_check(const GramMatrix& gram,
                                        const FrameBounds& bounds, int trials,
                                        std::uint64_t seed) {
    require(trials > 0, "riesz_inequality_check: need at least one trial");
    const std::size_t n = gram.entries.rows();
    RieszCheckReport report;
    report.trials = trials;
    report.seed = seed;
    report.min_quotient = std::numeric_limits<double>::infinity();
    report.max_quotient = -std::numeric_limits<double>::infinity();
    const double slack = 1e-12 * bounds.upper;
    for (int trial = 0; trial < trials; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(seed, trial);
        const std::vector<cdouble> c = random_coefficients(stream, n);
        double nn = 0.0;
        for (const auto& z : c) nn += std::norm(z);
        const double quotient = quadratic_form(gram, c) / nn;
        report.min_quotient = std::min(report.min_quotient, quotient);
        report.max_quotient = std::max(report.max_quotient, quotient);
        if (quotient < bounds.lower - slack || quotient > bounds.upper + slack)
            ++report.violations;
    }
    return report;
}

UCheckResult kadec_U_check(const SampleSet& samples,
                           const std::vector<cdouble>& coeff, double upper) {
    require(samples.perturbed.has_value(),
            "kadec_U_check: perturbed sample points required");
    require(upper > 0.0, "kadec_U_check: upper bound must be positive");
    const std::vector<double>& base = samples.base;
    const std::vector<double>& pert = *samples.perturbed;
    require(pert.size() == base.size(),
            "kadec_U_check: base and perturbed lists must have equal length");
    require(coeff.size() == base.size(), "kadec_U_check: coefficient size mismatch");

    // U^2 = c* M c with M_mn = <phi_n - phi~_n, phi_m - phi~_m>, every inner
    // product evaluated by the exact exponential integral.
    const std::size_t n = base.size();
    double u_sq = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        cdouble row(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double entry = exp_inner(base[k] - base[m]) -
                                 exp_inner(pert[k] - base[m]) -
                                 exp_inner(base[k] - pert[m]) +
                                 exp_inner(pert[k] - pert[m]);
            row += entry * coeff[k];
        }
        u_sq += (std::conj(coeff[m]) * row).real();
    }
    UCheckResult result;
    result.delta_hat = samples.delta_hat();
    result.u = std::sqrt(std::max(u_sq, 0.0));
    double norm_sq = 0.0;
    for (const auto& z : coeff) norm_sq += std::norm(z);
    result.bound = std::sqrt(upper) *
                   bounds::deviation_factor(pi * result.delta_hat) *
                   std::sqrt(norm_sq);
    result.violation = result.u > result.bound + 1e-10 * (1.0 + result.bound);
    return result;
}

ExperimentReport perturbation_experiment(const ExperimentConfig& config) {
    require(!config.base.empty(), "perturbation_experiment: empty base sample set");
    require(config.trials > 0, "perturbation_experiment: need at least one trial");
    require(std::isfinite(config.delta) && config.delta >= 0.0,
            "perturbation_experiment: delta must be nonnegative");
    const double threshold =
        bounds::delta_max(config.declared, config.spec).delta;
    if (!config.force)
        require(config.delta < threshold,
                "perturbation_experiment: delta is at or above delta_max for the "
                "declared bounds; pass force to run anyway");

    ExperimentReport report;
    report.delta = config.delta;
    report.trials = config.trials;
    report.seed = config.seed;
    report.tolerance = config.tolerance;
    report.delta_max = threshold;
    if (config.delta < threshold) {
        const FrameBounds window = bounds::perturbed_frame_bounds(
            config.declared, config.spec, PerturbationBudget(config.delta));
        report.window_lower = window.lower;
        report.window_upper = window.upper;
    } else {
        report.window_lower = std::numeric_limits<double>::quiet_NaN();
        report.window_upper = std::numeric_limits<double>::quiet_NaN();
    }

    const std::size_t n = config.base.size();
    report.rows.resize(config.trials);
    const long trials = config.trials;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget())
#endif
    for (long trial = 0; trial < trials; ++trial) {
        rng::Stream stream =
            rng::Stream::for_trial(config.seed, static_cast<std::uint64_t>(trial));
        std::vector<double> perturbed(n);
        double delta_hat = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = stream.uniform(-config.delta, config.delta);
            perturbed[i] = config.base[i] + u;
            delta_hat = std::max(delta_hat, std::fabs(u));
        }
        const GramMatrix gram = exp_gram_impl(perturbed, false);
        const std::vector<double> ev = linalg::hermitian_eigenvalues(gram.entries);

        TrialRow row;
        row.trial = static_cast<int>(trial);
        row.delta_hat = delta_hat;
        row.min_eig = ev.front();
        row.max_eig = ev.back();
        if (delta_hat < threshold) {
            const FrameBounds predicted = bounds::perturbed_frame_bounds(
                config.declared, config.spec, PerturbationBudget(delta_hat));
            row.predicted_lower = predicted.lower;
            row.predicted_upper = predicted.upper;
            row.violation = row.min_eig < predicted.lower - config.tolerance ||
                            row.max_eig > predicted.upper + config.tolerance;
        } else {
            row.predicted_lower = std::numeric_limits<double>::quiet_NaN();
            row.predicted_upper = std::numeric_limits<double>::quiet_NaN();
            row.violation = false;
        }
        report.rows[static_cast<std::size_t>(trial)] = row;
    }

    report.min_eig = std::numeric_limits<double>::infinity();
    report.max_eig = -std::numeric_limits<double>::infinity();
    report.worst_lower_margin = std::numeric_limits<double>::infinity();
    report.worst_upper_margin = std::numeric_limits<double>::infinity();
    for (const TrialRow& row : report.rows) {
        report.min_eig = std::min(report.min_eig, row.min_eig);
        report.max_eig = std::max(report.max_eig, row.max_eig);
        if (row.violation) ++report.violations;
        if (std::isfinite(row.predicted_lower)) {
            report.worst_lower_margin = std::min(
                report.worst_lower_margin, row.min_eig - row.predicted_lower);
            report.worst_upper_margin = std::min(
                report.worst_upper_margin, row.predicted_upper - row.max_eig);
        }
    }
    return report;
}

namespace reference {

GramMatrix exp_gram(const std::vector<double>& frequencies) {
    const std::size_t n = frequencies.size();
    require(n >= 1, "exp_gram: need at least one frequency");
    linalg::Matrix g(n, n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k)
            g(m, k) = exp_inner(frequencies[k] - frequencies[m]);
    return GramMatrix{std::move(g)};
}

GramMatrix orbit_gram(const OrbitSystem& system) {
    require(std::holds_alternative<ModelOrbit>(system),
            "orbit_gram: exponential systems have exact inner products; use exp_gram");
    const ModelOrbit& orbit = std::get<ModelOrbit>(system);
    const std::size_t n = orbit.samples.size();
    require(n >= 1, "orbit_gram: need at least one sample point");
    require(orbit.generator.size() == orbit.representation.dimension(),
            "orbit_gram: generator dimension mismatch");
    linalg::Matrix g(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            const double gap = orbit.samples[k] - orbit.samples[m];
            cdouble acc(0.0, 0.0);
            for (std::size_t j = 0; j < orbit.representation.dimension(); ++j)
                acc += std::norm(orbit.generator[j]) *
                       std::polar(1.0, gap * orbit.representation.points()[j]);
            g(m, k) = acc;
        }
    }
    return GramMatrix{std::move(g)};
}

} // namespace reference

} // namespace kadec::frames
