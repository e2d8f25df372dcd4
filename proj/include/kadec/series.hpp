#pragma once

#include <complex>

#include "kadec/types.hpp"

namespace kadec::series {

// Coefficient family of the splitting of h(t) = 1 - e^{i delta t} on
// [-pi, pi] into a constant, a cosine series at integer frequencies and a
// sine series at half-integer frequencies:
//
//   h(t) = constant() + sum_{v>=1} cosine(v) cos(v t)
//                     + i sum_{v>=1} sine(v) sin((v - 1/2) t).
//
// Requires |delta| < 1/2, which keeps every denominator positive. Both
// coefficient sequences are absolutely summable with O(1/v^2) tails, and the
// total mass |constant| + sum |cosine| + sum |sine| equals
// 1 - cos(pi delta) + sin(pi delta) for delta >= 0.
class Coefficients {
public:
    explicit Coefficients(double delta);

    double delta() const { return delta_; }

    // 1 - sin(pi delta)/(pi delta); the delta = 0 limit is 0.
    double constant() const { return constant_; }

    // (-1)^v 2 delta sin(pi delta) / (pi (v^2 - delta^2)), v >= 1
    double cosine(long v) const;

    // (-1)^v 2 delta cos(pi delta) / (pi ((v - 1/2)^2 - delta^2)), v >= 1
    double sine(long v) const;

private:
    double delta_;
    double constant_;
    double cos_scale_;
    double sin_scale_;
};

// Truncation after `terms` frequencies together with a rigorous bound on the
// discarded l1 mass of both series.
struct Truncation {
    long terms;
    double tail_bound;
};

// terms >= 2. The tail bound compares each family against
// sum_{v>M} 1/(v^2 - delta^2) <= sum_{v>M} 1/(v(v-1)) = 1/M <= 1/(M-1),
// valid for |delta| <= 1/2, and likewise for the half-integer family.
Truncation make_truncation(const Coefficients& coeffs, long terms);

// Partial sum of the decomposition at t in [-pi, pi]. Lies within
// trunc.tail_bound (plus rounding) of 1 - e^{i delta t}.
std::complex<double> evaluate_partial(const Coefficients& coeffs, double t,
                                      const Truncation& trunc);

// Partial l1 mass |constant| + sum_{v<=M} (|cosine(v)| + |sine(v)|).
// Requires delta >= 0. The interval
// [partial, partial + tail_bound] brackets 1 - cos(pi delta) + sin(pi delta).
double coefficient_mass(const Coefficients& coeffs, const Truncation& trunc);

// mu = sqrt(upper) * (1 - cos(pi delta) + sin(pi delta)), the perturbation
// size fed to the synthesis-operator lemma with lambda = 0.
double defect(double delta, double upper);

namespace reference {

// Serial implementations of the two reductions, kept as the comparison
// baseline for the chunked parallel kernels.
std::complex<double> evaluate_partial(const Coefficients& coeffs, double t,
                                      const Truncation& trunc);
double coefficient_mass(const Coefficients& coeffs, const Truncation& trunc);

} // namespace reference

} // namespace kadec::series
