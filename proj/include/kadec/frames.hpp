#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "kadec/linalg.hpp"
#include "kadec/rep.hpp"
#include "kadec/types.hpp"

namespace kadec::frames {

using linalg::cdouble;

// Truncated sample set, optionally paired with its perturbation.
struct SampleSet {
    std::vector<double> base;
    std::optional<std::vector<double>> perturbed;

    // max |perturbed_n - base_n|; requires perturbed points of equal length.
    double delta_hat() const;
};

// System of exponentials e^{i mu_n t} on (-pi, pi); inner products are exact.
struct ExponentialSystem {
    std::vector<double> frequencies;
};

// Sampled orbit {T(g_n) x} of a diagonal-model representation.
struct ModelOrbit {
    rep::DiagonalRep representation;
    rep::ModuleVector generator;
    std::vector<double> samples;
};

using OrbitSystem = std::variant<ExponentialSystem, ModelOrbit>;

// Hermitian matrix of pairwise inner products; realizes the quadratic form
// c* G c = ||sum c_n phi_n||^2.
struct GramMatrix {
    linalg::Matrix entries;
};

enum class EstimateMethod { gram_eigen, frame_operator_eigen };

struct FrameEstimate {
    double lower_hat = 0.0;
    double upper_hat = 0.0;
    EstimateMethod method = EstimateMethod::gram_eigen;
    std::size_t truncation = 0;
};

// Gram matrix of the exponential system: entries
// integral_{-pi}^{pi} e^{i (mu_n - mu_m) t} dt = 2 sin(pi w)/w at
// w = mu_n - mu_m, with the analytic limit 2 pi on the diagonal and for
// |w| < 1e-12.
GramMatrix exp_gram(const std::vector<double>& frequencies);

// Gram matrix of a model orbit: G_mn = sum_j |x_j|^2 e^{i (g_n - g_m) lambda_j}.
// Diagonal entries equal ||x||^2 exactly. Exponential systems must go
// through exp_gram instead.
GramMatrix orbit_gram(const OrbitSystem& system);

// d x N synthesis matrix of a model orbit; column n is T(g_n) x.
linalg::Matrix synthesis_matrix(const ModelOrbit& orbit);

// Re(c* G c)
double quadratic_form(const GramMatrix& gram, const std::vector<cdouble>& c);

// Eigen-extremes of the Gram matrix. Validates Hermitian symmetry and
// numerical positive semidefiniteness; a lower extreme within rounding of
// zero is clamped to zero.
FrameEstimate frame_bounds_estimate(const GramMatrix& gram);

// Eigen-extremes of the d x d frame operator S = sum_n phi_n phi_n* of a
// model orbit.
FrameEstimate frame_operator_bounds(const OrbitSystem& system);

struct RieszCheckReport {
    int trials = 0;
    int violations = 0;
    double min_quotient = 0.0; // extremes of c* G c / ||c||^2 over the trials
    double max_quotient = 0.0;
    std::uint64_t seed = 0;
};

// Random-vector check of A ||c||^2 <= c* G c <= B ||c||^2. Violations are
// reported, not thrown. Deterministic under a fixed seed.
RieszCheckReport riesz_inequality_check(const GramMatrix& gram,
                                        const FrameBounds& bounds, int trials,
                                        std::uint64_t seed);

struct UCheckResult {
    double u = 0.0;
    double bound = 0.0;
    double delta_hat = 0.0;
    bool violation = false;
};

// Exact synthesis-difference norm U = ||(T_Phi - T_Phi~) c|| for the
// exponential model (gamma = pi normalization), computed from the mixed
// analytic Gram matrices, against the bound
// sqrt(upper) (1 - cos(pi dhat) + sin(pi dhat)) ||c||_2.
UCheckResult kadec_U_check(const SampleSet& samples,
                           const std::vector<cdouble>& coeff, double upper);

struct ExperimentConfig {
    std::vector<double> base;
    FrameBounds declared{1.0, 1.0};
    SpectrumInterval spec{std::numbers::pi};
    double delta = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    bool force = false;      // allow delta >= delta_max; excursions become data
    double tolerance = 1e-8; // slack for the containment flags
};

struct TrialRow {
    int trial = 0;
    double delta_hat = 0.0;
    double min_eig = 0.0;
    double max_eig = 0.0;
    double predicted_lower = 0.0; // NaN when delta_hat >= delta_max
    double predicted_upper = 0.0;
    bool violation = false;
};

struct ExperimentReport {
    double delta = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double delta_max = 0.0;    // threshold for the declared (A, B, gamma)
    double window_lower = 0.0; // predicted bounds at the nominal delta
    double window_upper = 0.0; // (NaN when delta >= delta_max)
    std::vector<TrialRow> rows;
    int violations = 0;
    double min_eig = 0.0; // over all trials
    double max_eig = 0.0;
    double worst_lower_margin = 0.0; // min over rows of min_eig - predicted_lower
    double worst_upper_margin = 0.0; // min over rows of predicted_upper - max_eig
};

// Monte-Carlo verification: per trial, perturb each base point by an
// independent uniform draw from [-delta, delta], form the exact exponential
// Gram matrix and compare its eigen-extremes against the predicted window at
// the realized delta_hat. Trials run concurrently; results are independent
// of the thread count.
ExperimentReport perturbation_experiment(const ExperimentConfig& config);

namespace reference {

// Serial row-by-row Gram construction, kept as the comparison baseline for
// the parallel kernels.
GramMatrix exp_gram(const std::vector<double>& frequencies);
GramMatrix orbit_gram(const OrbitSystem& system);

} // namespace reference

} // namespace kadec::frames
