#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kadec/types.hpp"

namespace kadec::rep {

using cdouble = std::complex<double>;
using ModuleVector = std::vector<cdouble>;

double norm1(const ModuleVector& x);
double norm2(const ModuleVector& x);
double norm_inf(const ModuleVector& x);
double norm_p(const ModuleVector& x, int p); // p in {1, 2}

// Finite diagonal model of an isometric representation: T(t) multiplies
// coordinate j by e^{i t lambda_j}. All spectrum points must lie in
// [-gamma, gamma]; the spectrum of the model is exactly {lambda_j} by
// construction. Immutable after construction.
class DiagonalRep {
public:
    DiagonalRep(std::vector<double> points, SpectrumInterval spec);

    std::size_t dimension() const { return points_.size(); }
    const std::vector<double>& points() const { return points_; }
    const SpectrumInterval& spec() const { return spec_; }

private:
    std::vector<double> points_;
    SpectrumInterval spec_;
};

// h(xi) = sum_n coeff_n e^{i xi shift_n} with summable coefficients.
struct SymbolTerm {
    cdouble coeff;
    double shift;
};

struct Symbol {
    std::vector<SymbolTerm> terms;

    double l1_norm() const;
    cdouble operator()(double xi) const;
};

// Pointwise product of two symbols = convolution of the coefficient lists.
Symbol product(const Symbol& g, const Symbol& h);

// Real-valued integrable function sampled on the uniform grid
// start, start + step, ..., start + (size-1) step. The declared window is
// assumed to carry all non-negligible mass (caller-certified). Fourier
// convention: fourier(xi) = integral f(t) e^{-i t xi} dt.
struct SampledFunction {
    double start = 0.0;
    double step = 0.0;
    std::vector<double> samples;

    double l1_norm() const;        // trapezoid of |f|
    cdouble fourier(double xi) const; // trapezoid of f(t) e^{-i t xi}
};

// T(t) x; preserves the Euclidean norm.
ModuleVector apply_rep(const DiagonalRep& rep, double t, const ModuleVector& x);

// fx = integral f(t) T(-t) x dt, trapezoid quadrature on the declared
// window; converges under grid refinement to (fourier(lambda_j) x_j) and
// satisfies ||fx|| <= ||f||_1 ||x||.
ModuleVector module_action(const DiagonalRep& rep, const SampledFunction& f,
                           const ModuleVector& x);

// sum_n c_n T(shift_n) x, the almost-periodic functional calculus.
ModuleVector calculus_apply(const DiagonalRep& rep, const Symbol& h,
                            const ModuleVector& x);

// Coordinatewise h(lambda_j) x_j: the multiplier route calculus_apply must
// agree with on the diagonal model.
ModuleVector spectral_apply(const DiagonalRep& rep, const Symbol& h,
                            const ModuleVector& x);

// ||T(t) - I|| = max_j |e^{i t lambda_j} - 1| = 2 max_j |sin(t lambda_j / 2)|.
double operator_norm_deviation(const DiagonalRep& rep, double t);

struct ProdestResult {
    bool holds = false;
    bool vacuous = false; // no spectrum point inside [a, b]
};

// Checks ||(h(lambda_j) x_j)|| <= max(h(a), h(b)) ||x|| + rounding slack for
// x supported on spectrum points inside [a, b]. h must be nonnegative and
// monotonic on [a, b]; that hypothesis is caller-certified, not verified.
ProdestResult prodest_check(const DiagonalRep& rep,
                            const std::function<double(double)>& h, double a,
                            double b, const ModuleVector& x);

// Spectrum points scaled by target_gamma / gamma, so [-g, g] maps onto
// [-target_gamma, target_gamma]. Composing with the inverse scaling
// recovers the original phases.
DiagonalRep rescale(const DiagonalRep& rep, double target_gamma);

} // namespace kadec::rep
