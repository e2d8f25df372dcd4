#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kadec/rep.hpp"

namespace kadec::checks {

// One verification row: `passed` is authoritative; `observed` and
// `threshold` describe the measured quantity and its allowed limit.
struct CheckRow {
    std::string suite;
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double threshold = 0.0;
};

struct Params {
    std::uint64_t seed = 12345;
    long series_terms = 100000; // M; the mass checks also run at 10 M
    int gram_trials = 200;
    int synthesis_trials = 1000;
    int atomic_trials = 500;
    int calculus_trials = 100;
    int base_size = 64;       // N, size of the integer base sample set
    int atomic_dimension = 8; // d of the atomic model
    int atomic_p = 0;         // 0 = run both p = 1 and p = 2
};

// suite "bounds"
std::vector<CheckRow> quarter_threshold_checks();
std::vector<CheckRow> formula_identity_checks();
// suite "kadec-series"
std::vector<CheckRow> series_mass_checks(const Params& params);
// suite "repspace"
std::vector<CheckRow> deviation_bound_checks(const Params& params);
std::vector<CheckRow> calculus_agreement_checks(const Params& params);
std::vector<CheckRow> module_action_checks(const Params& params);
// suite "frames"
std::vector<CheckRow> gram_containment_checks(const Params& params);
std::vector<CheckRow> synthesis_gap_checks(const Params& params);
std::vector<CheckRow> separation_consistency_checks(const Params& params);
// suite "atomic"
std::vector<CheckRow> atomic_perturbation_checks(const Params& params);

const std::vector<std::string>& suite_names();
std::vector<CheckRow> run_suite(const std::string& suite, const Params& params);
std::vector<CheckRow> run_all(const Params& params);

// Rows for a caller-supplied representation (isometry, deviation bound
// dominance, calculus agreement).
std::vector<CheckRow> user_rep_checks(const rep::DiagonalRep& model,
                                      const Params& params);

} // namespace kadec::checks
