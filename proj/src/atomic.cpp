#include "kadec/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kadec/bounds.hpp"
#include "kadec/frames.hpp"
#include "kadec/rng.hpp"

namespace kadec::atomic {

namespace {

double column_norm(const linalg::Matrix& m, std::size_t col) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, col));
    return std::sqrt(s);
}

double max_column_norm(const linalg::Matrix& m) {
    double worst = 0.0;
    for (std::size_t n = 0; n < m.cols(); ++n)
        worst = std::max(worst, column_norm(m, n));
    return worst;
}

linalg::Matrix column_difference(const linalg::Matrix& a, const linalg::Matrix& b) {
    linalg::Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j) - b(i, j);
    return out;
}

// Canonical dual of a full-rank wide synthesis matrix: Z = (S S^H)^{-1} S,
// so that S Z^H = I.
linalg::Matrix canonical_dual(const linalg::Matrix& synthesis) {
    const linalg::Matrix gram =
        linalg::multiply(synthesis, linalg::adjoint(synthesis));
    return linalg::solve_hpd(gram, synthesis);
}

double reconstruction_defect(const linalg::Matrix& atoms,
                             const linalg::Matrix& functionals) {
    // max_j || atoms functionals^H e_j - e_j ||_2
    const linalg::Matrix composite =
        linalg::multiply(atoms, linalg::adjoint(functionals));
    const std::size_t d = atoms.rows();
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const cdouble expect = i == j ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
            s += std::norm(composite(i, j) - expect);
        }
        worst = std::max(worst, std::sqrt(s));
    }
    return worst;
}

std::vector<cdouble> random_unit_vector(rng::Stream& stream, std::size_t d) {
    std::vector<cdouble> x(d);
    double nn = 0.0;
    do {
        nn = 0.0;
        for (auto& z : x) {
            z = stream.complex_gaussian();
            nn += std::norm(z);
        }
    } while (nn == 0.0);
    const double inv = 1.0 / std::sqrt(nn);
    for (auto& z : x) z *= inv;
    return x;
}

} // namespace

void validate_shape(const Decomposition& decomp) {
    require(decomp.atoms.rows() >= 1 && decomp.atoms.cols() >= 1,
            "Decomposition: empty atom matrix");
    require(decomp.functionals.rows() == decomp.atoms.rows() &&
                decomp.functionals.cols() == decomp.atoms.cols(),
            "Decomposition: atoms and functionals must have equal shape");
    require(decomp.p == 1 || decomp.p == 2,
            "Decomposition: only p in {1, 2} is supported");
}

std::vector<cdouble> coefficients(const Decomposition& decomp,
                                  const std::vector<cdouble>& x) {
    validate_shape(decomp);
    require(x.size() == decomp.atoms.rows(), "coefficients: dimension mismatch");
    return linalg::apply(linalg::adjoint(decomp.functionals), x);
}

std::vector<cdouble> reconstruct(const Decomposition& decomp,
                                 const std::vector<cdouble>& x) {
    const std::vector<cdouble> coeff = coefficients(decomp, x);
    return linalg::apply(decomp.atoms, coeff);
}

double synthesis_norm(const Decomposition& decomp) {
    validate_shape(decomp);
    if (decomp.p == 1) return max_column_norm(decomp.atoms);
    return linalg::singular_values(decomp.atoms).front();
}

VerifyReport verify_atomic(const Decomposition& decomp, int trials,
                           std::uint64_t seed) {
    validate_shape(decomp);
    require(trials > 0, "verify_atomic: need at least one trial");
    const std::size_t d = decomp.atoms.rows();
    const std::size_t n = decomp.atoms.cols();

    VerifyReport report;
    report.trials = trials;
    report.seed = seed;
    report.reconstruction_error =
        reconstruction_defect(decomp.atoms, decomp.functionals);

    const std::vector<double> atom_sv = linalg::singular_values(decomp.atoms);
    report.is_basis = n == d && atom_sv.back() > 1e-10 * atom_sv.front();

    const double slack = 1e-10 * decomp.bounds.upper;
    for (int trial = 0; trial < trials; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(seed, trial);
        const std::vector<cdouble> x = random_unit_vector(stream, d);
        const double coeff_norm = rep::norm_p(coefficients(decomp, x), decomp.p);
        if (coeff_norm < decomp.bounds.lower - slack ||
            coeff_norm > decomp.bounds.upper + slack)
            ++report.norm_violations;
    }

    if (decomp.p == 2) {
        report.has_exact = true;
        const std::vector<double> sv =
            linalg::singular_values(decomp.functionals);
        report.exact_upper = sv.front();
        report.exact_lower = sv[std::min(d, n) - 1];
        const double tol = 1e-12 * (1.0 + report.exact_upper);
        report.declared_valid =
            decomp.bounds.lower <= report.exact_lower + tol &&
            report.exact_upper <= decomp.bounds.upper + tol;
    }
    return report;
}

OrbitDecomposition make_orbit_decomposition(const rep::DiagonalRep& rep_model,
                                            const rep::ModuleVector& generator,
                                            const std::vector<double>& samples,
                                            int p) {
    require(p == 1 || p == 2,
            "make_orbit_decomposition: only p in {1, 2} is supported");
    require(samples.size() >= rep_model.dimension(),
            "make_orbit_decomposition: need at least d sample points");
    const frames::ModelOrbit orbit{rep_model, generator, samples};
    linalg::Matrix atoms = frames::synthesis_matrix(orbit);
    linalg::Matrix functionals = canonical_dual(atoms);

    double lower = 0.0;
    double upper = 0.0;
    if (p == 2) {
        // Exact optimal constants: extremal singular values of the analysis
        // map x -> functionals^H x.
        const std::vector<double> sv = linalg::singular_values(functionals);
        upper = sv.front();
        lower = sv[atoms.rows() - 1];
    } else {
        // Valid (not optimal) constants for the l^1 coefficient norm:
        // ||v||_1 >= ||v||_2 gives the lower one, the triangle inequality the
        // upper one.
        const std::vector<double> sv = linalg::singular_values(functionals);
        lower = sv[atoms.rows() - 1];
        for (std::size_t n = 0; n < functionals.cols(); ++n)
            upper += column_norm(functionals, n);
    }
    Decomposition decomp{std::move(atoms), std::move(functionals), p,
                         FrameBounds(lower, upper)};
    return OrbitDecomposition{std::move(decomp), rep_model, generator, samples};
}

PerturbationReport perturbation_check(const OrbitDecomposition& orbit,
                                      const PerturbationBudget& budget,
                                      int trials, std::uint64_t seed) {
    validate_shape(orbit.decomposition);
    require(trials > 0, "perturbation_check: need at least one trial");
    const Decomposition& decomp = orbit.decomposition;
    const std::size_t n = orbit.samples.size();
    const double t_norm = synthesis_norm(decomp);
    const SpectrumInterval& spec = orbit.representation.spec();
    const double threshold =
        bounds::atomic_delta_max(decomp.bounds.upper, t_norm, spec).delta;
    require(budget.delta < threshold,
            "perturbation_check: delta must be below atomic_delta_max");

    PerturbationReport report;
    report.p = decomp.p;
    report.delta = budget.delta;
    report.threshold = threshold;
    report.synthesis_norm_value = t_norm;
    report.trials = trials;
    report.seed = seed;
    report.optimal_lower = std::numeric_limits<double>::infinity();
    report.optimal_upper = 0.0;
    report.predicted_lower = std::numeric_limits<double>::infinity();
    report.predicted_upper = 0.0;
    int exact_route_failures = 0;

    for (int trial = 0; trial < trials; ++trial) {
        rng::Stream stream = rng::Stream::for_trial(seed, trial);
        std::vector<double> perturbed(n);
        double delta_hat = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = stream.uniform(-budget.delta, budget.delta);
            perturbed[i] = orbit.samples[i] + u;
            delta_hat = std::max(delta_hat, std::fabs(u));
        }
        report.delta_hat = std::max(report.delta_hat, delta_hat);

        const frames::ModelOrbit perturbed_orbit{orbit.representation,
                                                 orbit.generator, perturbed};
        const linalg::Matrix w = frames::synthesis_matrix(perturbed_orbit);
        const linalg::Matrix diff = column_difference(decomp.atoms, w);

        const double mu =
            t_norm * bounds::deviation_factor(delta_hat * spec.gamma);
        report.mu = std::max(report.mu, mu);

        // Exact operator route, compared against this trial's mu.
        const double deviation = decomp.p == 1
                                     ? max_column_norm(diff)
                                     : linalg::singular_values(diff).front();
        report.exact_deviation = std::max(report.exact_deviation, deviation);
        if (deviation > mu + 1e-10 * (1.0 + mu)) exact_route_failures += 1;

        // Random finitely supported coefficient route.
        std::vector<cdouble> c(n);
        for (auto& z : c) z = stream.complex_box();
        double image_sq = 0.0;
        for (std::size_t i = 0; i < diff.rows(); ++i) {
            cdouble acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += diff(i, k) * c[k];
            image_sq += std::norm(acc);
        }
        const double c_norm = rep::norm_p(c, decomp.p);
        if (std::sqrt(image_sq) > mu * c_norm + 1e-10 * (1.0 + mu * c_norm))
            ++report.hypothesis_violations;

        if (decomp.p == 2) {
            report.dual_constructed = true;
            const linalg::Matrix dual = canonical_dual(w);
            report.dual_reconstruction_error =
                std::max(report.dual_reconstruction_error,
                         reconstruction_defect(w, dual));

            const std::vector<double> sv = linalg::singular_values(dual);
            const double optimal_upper = sv.front();
            const double optimal_lower = sv[w.rows() - 1];
            const FrameBounds predicted = bounds::perturbed_atomic_bounds(
                decomp.bounds, t_norm, spec, PerturbationBudget(delta_hat));
            const double tol = 1e-10 * (1.0 + predicted.upper);
            if (optimal_lower < predicted.lower - tol ||
                optimal_upper > predicted.upper + tol)
                ++report.containment_failures;
            if (optimal_lower < report.optimal_lower) {
                report.optimal_lower = optimal_lower;
                report.predicted_lower = predicted.lower;
            }
            if (optimal_upper > report.optimal_upper) {
                report.optimal_upper = optimal_upper;
                report.predicted_upper = predicted.upper;
            }
            if (w.rows() == w.cols()) {
                const std::vector<double> wsv = linalg::singular_values(w);
                report.perturbed_is_basis =
                    report.perturbed_is_basis &&
                    wsv.back() > 1e-10 * wsv.front();
            }
        }
    }
    report.exact_within_mu = exact_route_failures == 0;
    return report;
}

} // namespace kadec::atomic
