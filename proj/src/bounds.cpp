#include "kadec/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kadec::bounds {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inv_sqrt2 = 0.70710678118654752440;

double square(double x) { return x * x; }

} // namespace

double deviation_factor(double theta) {
    return 1.0 - std::cos(theta) + std::sin(theta);
}

double deviation_factor_product(double theta) {
    return 2.0 * std::sqrt(2.0) * std::sin(0.5 * theta) *
           std::sin(0.5 * theta + 0.25 * pi);
}

PerturbationBudget delta_max(const FrameBounds& bounds, const SpectrumInterval& spec) {
    // 1 - sqrt(A/B) lies in [0, 1), so the asin argument stays in
    // [0, 1/sqrt 2) and the budget stays positive.
    const double arg = inv_sqrt2 * (1.0 - std::sqrt(bounds.ratio()));
    return PerturbationBudget((0.25 * pi - std::asin(arg)) / spec.gamma);
}

FrameBounds perturbed_frame_bounds(const FrameBounds& bounds,
                                   const SpectrumInterval& spec,
                                   const PerturbationBudget& budget) {
    require(budget.delta < delta_max(bounds, spec).delta,
            "perturbed_frame_bounds: delta must be below delta_max(bounds, spec)");
    const double eps = deviation_factor(budget.delta * spec.gamma);
    const double lower = bounds.lower * square(1.0 - std::sqrt(bounds.ratio()) * eps);
    const double upper = bounds.upper * square(1.0 + eps);
    return FrameBounds(lower, upper);
}

bool separation_satisfied(double kappa, const FrameBounds& bounds,
                          const SpectrumInterval& spec) {
    require(std::isfinite(kappa) && kappa > 0.0,
            "separation_satisfied: kappa must be positive");
    if (kappa >= 0.5 * pi / spec.gamma) return true;
    const double half = 0.5 * spec.gamma * kappa;
    return 2.0 * (1.0 - std::cos(half)) * (1.0 + std::sin(half)) >= bounds.ratio();
}

double isometry_deviation_bound(const SpectrumInterval& spec, double t) {
    require(t >= 0.0 && t <= 0.5 * pi / spec.gamma,
            "isometry_deviation_bound: t must lie in [0, pi/(2 gamma)]");
    return deviation_factor(spec.gamma * t);
}

double baskakov_bound(const SpectrumInterval& spec, double t) {
    require(t >= 0.0 && t <= pi / spec.gamma,
            "baskakov_bound: t must lie in [0, pi/gamma]");
    return 4.0 * std::sqrt(2.0) * std::sin(0.5 * spec.gamma * t);
}

double baskakov_useful_limit(const SpectrumInterval& spec) {
    return 2.0 * std::asin(0.25 * std::sqrt(2.0)) / spec.gamma;
}

FrameBounds paley_wiener_perturbed_bounds(const FrameBounds& bounds,
                                          double lambda, double mu) {
    require(std::isfinite(lambda) && lambda >= 0.0 &&
            std::isfinite(mu) && mu >= 0.0,
            "paley_wiener_perturbed_bounds: lambda and mu must be nonnegative");
    const double reach = lambda + mu / std::sqrt(bounds.lower);
    require(reach < 1.0,
            "paley_wiener_perturbed_bounds: need lambda + mu/sqrt(A) < 1");
    const double lower = bounds.lower * square(1.0 - reach);
    const double upper =
        bounds.upper * square(1.0 + lambda + mu / std::sqrt(bounds.upper));
    return FrameBounds(lower, upper);
}

FrameBounds christensen_heil_bounds(const FrameBounds& bounds, double mu) {
    require(std::isfinite(mu) && mu >= 0.0,
            "christensen_heil_bounds: mu must be nonnegative");
    require(mu * bounds.upper < 1.0,
            "christensen_heil_bounds: need mu < 1/B");
    return FrameBounds(bounds.lower / (1.0 + mu * bounds.upper),
                       bounds.upper / (1.0 - mu * bounds.upper));
}

PerturbationBudget atomic_delta_max(double upper, double synthesis_norm,
                                    const SpectrumInterval& spec) {
    require(std::isfinite(upper) && upper > 0.0,
            "atomic_delta_max: upper bound must be positive");
    require(std::isfinite(synthesis_norm) && synthesis_norm > 0.0,
            "atomic_delta_max: synthesis norm must be positive");
    const double product = upper * synthesis_norm;
    require(product >= 1.0,
            "atomic_delta_max: B * ||T_X|| >= 1 is forced by reconstruction; "
            "smaller values indicate inconsistent decomposition data");
    const double arg = inv_sqrt2 * (1.0 - 1.0 / product);
    return PerturbationBudget((0.25 * pi - std::asin(arg)) / spec.gamma);
}

FrameBounds perturbed_atomic_bounds(const FrameBounds& bounds,
                                    double synthesis_norm,
                                    const SpectrumInterval& spec,
                                    const PerturbationBudget& budget) {
    const double threshold =
        atomic_delta_max(bounds.upper, synthesis_norm, spec).delta;
    require(budget.delta < threshold,
            "perturbed_atomic_bounds: delta must be below atomic_delta_max");
    const double mu =
        synthesis_norm * deviation_factor(budget.delta * spec.gamma);
    // Algebraically, delta < threshold already forces mu * B < 1. A numerical
    // disagreement can only happen within rounding of the boundary; it is
    // flagged instead of resolved silently because christensen_heil_bounds
    // would divide by a nonpositive quantity.
    if (!(mu * bounds.upper < 1.0))
        throw std::logic_error(
            "perturbed_atomic_bounds: delta is below the threshold but "
            "mu * B < 1 fails; boundary rounding inconsistency");
    return christensen_heil_bounds(bounds, mu);
}

} // namespace kadec::bounds
