#pragma once

#include "umc/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace umc {

/// How a reported delta_d was obtained.
enum class DeltaMethod { ExactEnumeration, MonteCarlo, SipBound };

std::string delta_method_label(DeltaMethod m, long trials = 0, uint64_t seed = 0);

/// Result of the A1/A2/SIP audit of a factorization against a sampling set.
struct IncoherenceReport {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double delta_d = 0.0;
    DeltaMethod delta_method = DeltaMethod::ExactEnumeration;
    long delta_trials = 0;      // Monte Carlo only
    uint64_t delta_seed = 0;    // Monte Carlo only
    Index d = 0;                // subset size the delta was computed for
    bool a1_pass = false;
    bool a2_pass = false;
    // Surfaced preconditions of the exact-recovery theorem.
    double measured_C = 0.0;
    double d_required = 0.0;    // 36 C^2 mu0^2 r^2
    bool d_pass = false;
    double claim1_upper = 0.0;  // mu1 * sqrt(r), upper bound on delta_d
    double mu0_budget = 0.0;
    double delta_budget = 0.0;
};

/// Smallest mu0 satisfying A1 for both factors:
/// max(n1 * max_i ||U^i||^2, n2 * max_j ||V^j||^2) / r.
double mu0(const LowRankFactor& f);

/// Smallest mu1 satisfying the strong incoherence inequality on both sides:
/// |(U U^T)_{ij} - (r/n) 1_{i=j}| <= mu1 sqrt(r)/n for all i, j.
double mu1_sip(const LowRankFactor& f);

/// Exact delta_d: max over all size-d row subsets S of
/// ||(n/d) sum_{k in S} U^k U^k^T - I|| on both sides (d' = d), the larger.
/// For r = 1 the extremal subsets are the d largest / d smallest squared
/// entries, so the value is closed-form at any n. For r >= 2 all subsets are
/// enumerated; throws TooLargeError beyond a 2e6-subset budget.
double delta_d_exact(const LowRankFactor& f, Index d);

/// Monte Carlo lower bound on delta_d: running max over `trials` uniform
/// size-d subsets per side. Nested in trials for a fixed seed.
double delta_d_estimate(const LowRankFactor& f, Index d, long trials, uint64_t seed);

/// Upper bound on delta_d for every d >= r implied by strong incoherence:
/// mu1 * sqrt(r).
double claim1_bound(const LowRankFactor& f);

/// Full audit: measures mu0, mu1, delta_d (exact when affordable, Monte
/// Carlo lower bound otherwise) and evaluates the caller's budgets plus the
/// exact-recovery preconditions (delta_d <= 1/6, d >= 36 C^2 mu0^2 r^2).
IncoherenceReport audit(const LowRankFactor& f, const SampleSet& omega,
                        double delta_budget = 1.0 / 6.0,
                        double mu0_budget = 0.0,
                        long mc_trials = 20000, uint64_t mc_seed = 0);

}  // namespace umc
