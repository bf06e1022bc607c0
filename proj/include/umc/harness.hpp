#pragma once

#include "umc/completion.hpp"
#include "umc/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace umc {

/// Block-model sweep: for each (budget, p, sigma, trial) generate a rank-r
/// Gaussian-factor matrix and a block-model sample set, run the solver and
/// record success against the relative-error criterion.
struct SweepSpec {
    Index n = 500;
    Index r = 10;
    std::vector<double> budgets;       // p+q values
    std::vector<double> p_fractions;   // p = frac*budget; empty -> 9-point grid
    long trials = 50;
    std::vector<double> noise_sigma;   // empty -> single noiseless pass
    uint64_t seed0 = 0;
    std::string output_path;           // CSV; empty -> not written
    int threads = 0;                   // 0 -> hardware concurrency
    SolverConfig solver;               // base config; noise runs cap rank at r
};

struct SweepRow {
    double budget = 0.0;
    double p = 0.0;
    double q = 0.0;
    uint64_t seed = 0;
    double relative_gap = 0.0;
    bool success = false;
    double rel_error = 0.0;
    long iterations = 0;
    double wall_time = 0.0;
    double noise_sigma = 0.0;
    bool converged = false;
    // (||X||_* - ||M||_*) / ||M||_*: negative on genuine method failures,
    // where a feasible point beats the ground truth's objective
    double nuclear_margin = 0.0;
    std::string error;  // nonempty when the trial itself failed
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Same sweep over a fixed user-supplied matrix; errors in spectral norm
/// with the rank-1 floor sigma2(T)/sigma1(T) reported per row.
struct RealSpec {
    std::vector<double> budgets;
    std::vector<double> p_fractions;
    long trials = 10;
    uint64_t seed0 = 0;
    std::string output_path;
    int threads = 0;
    SolverConfig solver;
};

struct RealRow {
    double budget = 0.0;
    double p = 0.0;
    double q = 0.0;
    uint64_t seed = 0;
    double relative_gap = 0.0;
    double spectral_error = 0.0;   // ||X - T|| / ||T||
    double frobenius_error = 0.0;  // ||X - T||_F / ||T||_F
    double rank1_floor = 0.0;      // sigma2(T)/sigma1(T)
    long iterations = 0;
    double wall_time = 0.0;
    std::string error;
};

std::vector<RealRow> run_real(const DenseMatrix& T, const RealSpec& spec);

/// CSV emission (schema versioned in a '#' header line). wall_time is
/// excluded from the determinism contract; everything else is reproducible
/// byte-for-byte from (spec, seed0).
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string real_csv(const std::vector<RealRow>& rows);

/// Default 9-point grid: p/budget in {0.1, ..., 0.9}.
std::vector<double> default_p_fractions();

/// Per-trial seed, mixed so cells do not correlate.
uint64_t trial_seed(uint64_t seed0, size_t budget_idx, size_t p_idx,
                    size_t trial_idx);

}  // namespace umc
