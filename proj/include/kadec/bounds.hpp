#pragma once

#include "kadec/types.hpp"

namespace kadec::bounds {

// 1 - cos(theta) + sin(theta). The recurring deviation factor: equals the
// total coefficient mass of the splitting of 1 - e^{i delta t} at
// theta = pi*delta and bounds ||T(t) - I|| at theta = gamma*t.
double deviation_factor(double theta);

// Product form 2 sqrt(2) sin(theta/2) sin(theta/2 + pi/4) of the same
// quantity, kept as a second algebraic route.
double deviation_factor_product(double theta);

// Strict upper budget for sup-norm perturbations of the sample points of a
// frame with the given bounds and spectrum half-width:
//   pi/(4 gamma) - (1/gamma) asin((1/sqrt 2)(1 - sqrt(A/B))).
// Always in (0, pi/(4 gamma)]; nondecreasing in A/B; scales as 1/gamma.
PerturbationBudget delta_max(const FrameBounds& bounds, const SpectrumInterval& spec);

// Frame bounds of the perturbed sampled orbit, valid for
// delta < delta_max(bounds, spec):
//   A (1 - sqrt(A/B) e)^2  and  B (2 - cos(delta gamma) + sin(delta gamma))^2
// with e = deviation_factor(delta gamma).
FrameBounds perturbed_frame_bounds(const FrameBounds& bounds,
                                   const SpectrumInterval& spec,
                                   const PerturbationBudget& budget);

// Necessary separation condition on the sample set of a Riesz basis:
//   2 (1 - cos(gamma kappa / 2)) (1 + sin(gamma kappa / 2)) >= A/B
// or kappa >= pi/(2 gamma). kappa is the minimal gap of the sample set.
bool separation_satisfied(double kappa, const FrameBounds& bounds,
                          const SpectrumInterval& spec);

// Bound on ||T(t) - I|| for representations with spectrum in [0, gamma]:
//   1 - cos(gamma t) + sin(gamma t),  t in [0, pi/(2 gamma)].
// Values lie in [0, 2], increasing in t.
double isometry_deviation_bound(const SpectrumInterval& spec, double t);

// The earlier 4 sqrt(2) sin(gamma t / 2) bound, valid for t in [0, pi/gamma].
// Only informative below baskakov_useful_limit, since ||T(t) - I|| <= 2
// always holds.
double baskakov_bound(const SpectrumInterval& spec, double t);
double baskakov_useful_limit(const SpectrumInterval& spec); // (2/gamma) asin(1/(2 sqrt 2))

// Frame bounds surviving a synthesis-operator perturbation
// ||(T - T~)c|| <= lambda ||T c|| + mu ||c||_2 with lambda + mu/sqrt(A) < 1:
//   A (1 - lambda - mu/sqrt(A))^2  and  B (1 + lambda + mu/sqrt(B))^2.
FrameBounds paley_wiener_perturbed_bounds(const FrameBounds& bounds,
                                          double lambda, double mu);

// Atomic-decomposition bounds surviving ||(T_X - T_W)c|| <= mu ||c||_p with
// 0 <= mu < 1/B:  A/(1 + mu B)  and  B/(1 - mu B).
FrameBounds christensen_heil_bounds(const FrameBounds& bounds, double mu);

// Perturbation threshold for atomic decompositions:
//   pi/(4 gamma) - (1/gamma) asin((1/sqrt 2)(1 - 1/(B ||T_X||))).
// Requires upper * synthesis_norm >= 1, which every valid decomposition
// satisfies: reconstruction gives ||x|| <= ||T_X|| B ||x||.
PerturbationBudget atomic_delta_max(double upper, double synthesis_norm,
                                    const SpectrumInterval& spec);

// Bounds of the perturbed atomic decomposition for
// delta < atomic_delta_max: christensen_heil_bounds at
// mu = synthesis_norm * deviation_factor(delta gamma).
FrameBounds perturbed_atomic_bounds(const FrameBounds& bounds,
                                    double synthesis_norm,
                                    const SpectrumInterval& spec,
                                    const PerturbationBudget& budget);

} // namespace kadec::bounds
