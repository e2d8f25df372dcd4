#include "kadec/rep.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kadec/parallel.hpp"

namespace kadec::rep {

double norm1(const ModuleVector& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::abs(z);
    return s;
}

double norm2(const ModuleVector& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

double norm_inf(const ModuleVector& x) {
    double s = 0.0;
    for (const auto& z : x) s = std::max(s, std::abs(z));
    return s;
}

double norm_p(const ModuleVector& x, int p) {
    require(p == 1 || p == 2, "norm_p: only p in {1, 2} is supported");
    return p == 1 ? norm1(x) : norm2(x);
}

DiagonalRep::DiagonalRep(std::vector<double> points, SpectrumInterval spec)
    : points_(std::move(points)), spec_(spec) {
    require(!points_.empty(), "DiagonalRep: need at least one spectrum point");
    for (double p : points_)
        require(std::isfinite(p) && std::fabs(p) <= spec_.gamma,
                "DiagonalRep: all spectrum points must lie in [-gamma, gamma]");
}

double Symbol::l1_norm() const {
    double s = 0.0;
    for (const auto& term : terms) s += std::abs(term.coeff);
    return s;
}

cdouble Symbol::operator()(double xi) const {
    cdouble v(0.0, 0.0);
    for (const auto& term : terms)
        v += term.coeff * std::polar(1.0, xi * term.shift);
    return v;
}

Symbol product(const Symbol& g, const Symbol& h) {
    Symbol out;
    out.terms.reserve(g.terms.size() * h.terms.size());
    for (const auto& a : g.terms)
        for (const auto& b : h.terms)
            out.terms.push_back({a.coeff * b.coeff, a.shift + b.shift});
    return out;
}

double SampledFunction::l1_norm() const {
    require(samples.size() >= 2 && step > 0.0,
            "SampledFunction: need a grid of at least two samples");
    double s = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double w = (k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0;
        s += w * std::fabs(samples[k]);
    }
    return s * step;
}

cdouble SampledFunction::fourier(double xi) const {
    require(samples.size() >= 2 && step > 0.0,
            "SampledFunction: need a grid of at least two samples");
    const long count = static_cast<long>(samples.size());
    const long chunks =
        (count + par::reduction_chunk - 1) / par::reduction_chunk;
    std::vector<double> part_re(chunks, 0.0);
    std::vector<double> part_im(chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget()) \
    if (count > 4 * par::reduction_chunk)
#endif
    for (long ch = 0; ch < chunks; ++ch) {
        const long lo = ch * par::reduction_chunk;
        const long hi = std::min(count, lo + par::reduction_chunk);
        double sum_re = 0.0;
        double sum_im = 0.0;
        for (long k = lo; k < hi; ++k) {
            const double w = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
            const double phase = -(start + static_cast<double>(k) * step) * xi;
            const double fk = w * samples[static_cast<std::size_t>(k)];
            sum_re += fk * std::cos(phase);
            sum_im += fk * std::sin(phase);
        }
        part_re[ch] = sum_re;
        part_im[ch] = sum_im;
    }
    double re = 0.0;
    double im = 0.0;
    for (long ch = 0; ch < chunks; ++ch) {
        re += part_re[ch];
        im += part_im[ch];
    }
    return cdouble(re * step, im * step);
}

ModuleVector apply_rep(const DiagonalRep& rep, double t, const ModuleVector& x) {
    require(x.size() == rep.dimension(), "apply_rep: dimension mismatch");
    ModuleVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = std::polar(1.0, t * rep.points()[j]) * x[j];
    return out;
}

ModuleVector module_action(const DiagonalRep& rep, const SampledFunction& f,
                           const ModuleVector& x) {
    require(x.size() == rep.dimension(), "module_action: dimension mismatch");
    require(!f.samples.empty(), "module_action: empty sample grid");
    ModuleVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = f.fourier(rep.points()[j]) * x[j];
    return out;
}

ModuleVector calculus_apply(const DiagonalRep& rep, const Symbol& h,
                            const ModuleVector& x) {
    require(x.size() == rep.dimension(), "calculus_apply: dimension mismatch");
    ModuleVector out(x.size(), cdouble(0.0, 0.0));
    for (const auto& term : h.terms) {
        for (std::size_t j = 0; j < x.size(); ++j)
            out[j] += term.coeff *
                      std::polar(1.0, term.shift * rep.points()[j]) * x[j];
    }
    return out;
}

ModuleVector spectral_apply(const DiagonalRep& rep, const Symbol& h,
                            const ModuleVector& x) {
    require(x.size() == rep.dimension(), "spectral_apply: dimension mismatch");
    ModuleVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = h(rep.points()[j]) * x[j];
    return out;
}

double operator_norm_deviation(const DiagonalRep& rep, double t) {
    double worst = 0.0;
    for (double lambda : rep.points())
        worst = std::max(worst, 2.0 * std::fabs(std::sin(0.5 * t * lambda)));
    return worst;
}

ProdestResult prodest_check(const DiagonalRep& rep,
                            const std::function<double(double)>& h, double a,
                            double b, const ModuleVector& x) {
    require(a <= b, "prodest_check: need a <= b");
    require(x.size() == rep.dimension(), "prodest_check: dimension mismatch");
    bool any_inside = false;
    double lhs_sq = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double lambda = rep.points()[j];
        const bool inside = lambda >= a && lambda <= b;
        if (inside) {
            any_inside = true;
            lhs_sq += std::norm(h(lambda) * x[j]);
        } else {
            require(std::abs(x[j]) == 0.0,
                    "prodest_check: x must vanish on spectrum points outside [a, b]");
        }
    }
    if (!any_inside) return ProdestResult{true, true};
    const double rhs = std::max(h(a), h(b)) * norm2(x);
    const double slack = 1e-12 * (1.0 + std::fabs(rhs));
    return ProdestResult{std::sqrt(lhs_sq) <= rhs + slack, false};
}

DiagonalRep rescale(const DiagonalRep& rep, double target_gamma) {
    require(std::isfinite(target_gamma) && target_gamma > 0.0,
            "rescale: target gamma must be positive");
    const double factor = target_gamma / rep.spec().gamma;
    std::vector<double> points(rep.points());
    for (double& p : points) {
        p *= factor;
        // The scaled endpoint can overshoot target_gamma by an ulp.
        p = std::clamp(p, -target_gamma, target_gamma);
    }
    return DiagonalRep(std::move(points), SpectrumInterval(target_gamma));
}

} // namespace kadec::rep
