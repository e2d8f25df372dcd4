#include "kadec/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kadec/bounds.hpp"
#include "kadec/parallel.hpp"

namespace kadec::series {

namespace {

constexpr double pi = std::numbers::pi;

long chunk_count(long terms) {
    return (terms + par::reduction_chunk - 1) / par::reduction_chunk;
}

} // namespace

Coefficients::Coefficients(double delta) : delta_(delta) {
    require(std::isfinite(delta) && std::fabs(delta) < 0.5,
            "Coefficients: require |delta| < 1/2");
    if (delta == 0.0) {
        // h vanishes identically; avoids 0/0 in the constant term.
        constant_ = 0.0;
        cos_scale_ = 0.0;
        sin_scale_ = 0.0;
        return;
    }
    constant_ = 1.0 - std::sin(pi * delta) / (pi * delta);
    cos_scale_ = 2.0 * delta * std::sin(pi * delta) / pi;
    sin_scale_ = 2.0 * delta * std::cos(pi * delta) / pi;
}

double Coefficients::cosine(long v) const {
    require(v >= 1, "Coefficients::cosine: index starts at 1");
    const double vv = static_cast<double>(v);
    const double value = cos_scale_ / (vv * vv - delta_ * delta_);
    return (v & 1L) ? -value : value;
}

double Coefficients::sine(long v) const {
    require(v >= 1, "Coefficients::sine: index starts at 1");
    const double vv = static_cast<double>(v) - 0.5;
    const double value = sin_scale_ / (vv * vv - delta_ * delta_);
    return (v & 1L) ? -value : value;
}

Truncation make_truncation(const Coefficients& coeffs, long terms) {
    require(terms >= 2,
            "make_truncation: need at least 2 terms for the tail comparison");
    const double d = std::fabs(coeffs.delta());
    const double per_family = 1.0 / static_cast<double>(terms - 1);
    const double tail =
        (2.0 * d * std::sin(pi * d) / pi + 2.0 * d * std::cos(pi * d) / pi) *
        per_family;
    return Truncation{terms, tail};
}

std::complex<double> evaluate_partial(const Coefficients& coeffs, double t,
                                      const Truncation& trunc) {
    require(t >= -pi && t <= pi,
            "evaluate_partial: the decomposition is only valid on [-pi, pi]");
    const long m = trunc.terms;
    const long chunks = chunk_count(m);
    std::vector<double> real_part(chunks, 0.0);
    std::vector<double> imag_part(chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget())
#endif
    for (long ch = 0; ch < chunks; ++ch) {
        const long lo = ch * par::reduction_chunk + 1;
        const long hi = std::min(m, lo + par::reduction_chunk - 1);
        double sum_re = 0.0;
        double sum_im = 0.0;
        for (long v = lo; v <= hi; ++v) {
            sum_re += coeffs.cosine(v) * std::cos(static_cast<double>(v) * t);
            sum_im += coeffs.sine(v) * std::sin((static_cast<double>(v) - 0.5) * t);
        }
        real_part[ch] = sum_re;
        imag_part[ch] = sum_im;
    }
    double re = coeffs.constant();
    double im = 0.0;
    for (long ch = 0; ch < chunks; ++ch) {
        re += real_part[ch];
        im += imag_part[ch];
    }
    return {re, im};
}

double coefficient_mass(const Coefficients& coeffs, const Truncation& trunc) {
    require(coeffs.delta() >= 0.0, "coefficient_mass: requires delta >= 0");
    const long m = trunc.terms;
    const long chunks = chunk_count(m);
    std::vector<double> partial(chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget())
#endif
    for (long ch = 0; ch < chunks; ++ch) {
        const long lo = ch * par::reduction_chunk + 1;
        const long hi = std::min(m, lo + par::reduction_chunk - 1);
        double sum = 0.0;
        for (long v = lo; v <= hi; ++v)
            sum += std::fabs(coeffs.cosine(v)) + std::fabs(coeffs.sine(v));
        partial[ch] = sum;
    }
    double mass = std::fabs(coeffs.constant());
    for (long ch = 0; ch < chunks; ++ch) mass += partial[ch];
    return mass;
}

double defect(double delta, double upper) {
    require(std::isfinite(delta) && delta >= 0.0, "defect: delta must be >= 0");
    require(std::isfinite(upper) && upper > 0.0, "defect: upper must be positive");
    return std::sqrt(upper) * bounds::deviation_factor(pi * delta);
}

namespace reference {

std::complex<double> evaluate_partial(const Coefficients& coeffs, double t,
                                      const Truncation& trunc) {
    require(t >= -pi && t <= pi,
            "evaluate_partial: the decomposition is only valid on [-pi, pi]");
    double re = coeffs.constant();
    double im = 0.0;
    for (long v = 1; v <= trunc.terms; ++v) {
        re += coeffs.cosine(v) * std::cos(static_cast<double>(v) * t);
        im += coeffs.sine(v) * std::sin((static_cast<double>(v) - 0.5) * t);
    }
    return {re, im};
}

double coefficient_mass(const Coefficients& coeffs, const Truncation& trunc) {
    require(coeffs.delta() >= 0.0, "coefficient_mass: requires delta >= 0");
    double mass = std::fabs(coeffs.constant());
    for (long v = 1; v <= trunc.terms; ++v)
        mass += std::fabs(coeffs.cosine(v)) + std::fabs(coeffs.sine(v));
    return mass;
}

} // namespace reference

} // namespace kadec::series
