#pragma once

#include <cstdint>
#include <vector>

#include "kadec/linalg.hpp"
#include "kadec/rep.hpp"
#include "kadec/types.hpp"

namespace kadec::atomic {

using linalg::cdouble;

// Atoms, coefficient functionals and declared bounds of an atomic
// decomposition of the d-dimensional coordinate space (Euclidean norm) with
// respect to l^p, p in {1, 2}. Column n of `atoms` is x_n; column n of
// `functionals` is y_n, with the pairing <x, y_n> = y_n^H x. A valid
// decomposition reconstructs x = sum_n <x, y_n> x_n and satisfies
// A ||x|| <= ||{<x, y_n>}||_p <= B ||x||.
struct Decomposition {
    linalg::Matrix atoms;       // d x N
    linalg::Matrix functionals; // d x N
    int p = 2;
    FrameBounds bounds{1.0, 1.0};
};

void validate_shape(const Decomposition& decomp);

// {<x, y_n>}
std::vector<cdouble> coefficients(const Decomposition& decomp,
                                  const std::vector<cdouble>& x);

// sum_n <x, y_n> x_n; equals x within rounding for a valid decomposition.
std::vector<cdouble> reconstruct(const Decomposition& decomp,
                                 const std::vector<cdouble>& x);

// Operator norm of the synthesis map l^p -> coordinate space:
// p = 1: max_n ||x_n||_2 (exact); p = 2: largest singular value (exact).
double synthesis_norm(const Decomposition& decomp);

struct VerifyReport {
    double reconstruction_error = 0.0; // max over basis vectors
    int trials = 0;
    int norm_violations = 0;
    bool is_basis = false; // N == d and the atoms have full rank
    bool has_exact = false;
    double exact_lower = 0.0; // extremal singular values of the analysis map,
    double exact_upper = 0.0; // p = 2 only
    bool declared_valid = false; // declared bounds contain the exact ones
    std::uint64_t seed = 0;
};

// Checks reconstruction on the standard basis and the norm equivalence on
// random unit vectors; for p = 2 additionally computes the exact optimal
// bounds from the analysis map's singular values.
VerifyReport verify_atomic(const Decomposition& decomp, int trials,
                           std::uint64_t seed);

// Decomposition whose atoms are the sampled orbit {T(g_n) x}. Functionals
// are the canonical dual (pseudo-inverse of the synthesis map). Declared
// bounds: the exact optimal ones for p = 2; for p = 1 the valid pair
// (sigma_min of the analysis map, sum_n ||y_n||_2).
struct OrbitDecomposition {
    Decomposition decomposition;
    rep::DiagonalRep representation;
    rep::ModuleVector generator;
    std::vector<double> samples;
};

OrbitDecomposition make_orbit_decomposition(const rep::DiagonalRep& rep,
                                            const rep::ModuleVector& generator,
                                            const std::vector<double>& samples,
                                            int p);

struct PerturbationReport {
    int p = 0;
    double delta = 0.0;     // nominal budget
    double delta_hat = 0.0; // worst realized sup-perturbation over the trials
    double threshold = 0.0; // atomic_delta_max for the declared data
    double synthesis_norm_value = 0.0;
    double mu = 0.0; // synthesis_norm * deviation factor at delta_hat
    int trials = 0;
    int hypothesis_violations = 0; // random-c checks of ||(T_X - T_W)c|| <= mu ||c||_p
    double exact_deviation = 0.0;  // worst exact operator deviation over trials
    bool exact_within_mu = false;
    // p = 2 only: explicit dual of the perturbed atoms via pseudo-inverse.
    bool dual_constructed = false;
    double dual_reconstruction_error = 0.0; // worst over trials
    int containment_failures = 0;
    double optimal_lower = 0.0; // exact optimal perturbed bounds, worst trial
    double optimal_upper = 0.0;
    double predicted_lower = 0.0; // predicted window for that trial
    double predicted_upper = 0.0;
    bool perturbed_is_basis = true; // meaningful when N == d
    std::uint64_t seed = 0;
};

// Per trial: draw a uniform perturbation of the sample points within the
// budget, verify the synthesis-deviation hypothesis ||(T_X - T_W)c|| <=
// mu ||c||_p both on random vectors and through the exact operator norm
// (column norms for p = 1, largest singular value for p = 2); for p = 2,
// construct the dual of the perturbed atoms explicitly, verify it
// reconstructs, and check that its exact optimal bounds lie inside the
// predicted window. Requires delta < atomic_delta_max.
PerturbationReport perturbation_check(const OrbitDecomposition& orbit,
                                      const PerturbationBudget& budget,
                                      int trials, std::uint64_t seed);

} // namespace kadec::atomic
