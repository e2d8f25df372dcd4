#pragma once

#include <cmath>
#include <stdexcept>

namespace kadec {

inline void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

// Half-width of the symmetric frequency interval [-gamma, gamma] assumed to
// contain the spectrum of the representation. Units: radians per unit of the
// group parameter t.
struct SpectrumInterval {
    double gamma;

    explicit SpectrumInterval(double g) : gamma(g) {
        require(std::isfinite(g) && g > 0.0,
                "SpectrumInterval: gamma must be positive and finite");
    }
};

// Lower/upper constant pair for frames, Riesz systems and atomic
// decompositions. 0 < lower <= upper; equality is allowed (tight systems).
struct FrameBounds {
    double lower;
    double upper;

    FrameBounds(double a, double b) : lower(a), upper(b) {
        require(a > 0.0 && std::isfinite(b) && b >= a,
                "FrameBounds: need 0 < lower <= upper");
    }

    double ratio() const { return lower / upper; }
};

// Sup-norm size of a sample-point perturbation, in the units of the group
// parameter.
struct PerturbationBudget {
    double delta;

    explicit PerturbationBudget(double d) : delta(d) {
        require(std::isfinite(d) && d >= 0.0,
                "PerturbationBudget: delta must be nonnegative and finite");
    }
};

} // namespace kadec
