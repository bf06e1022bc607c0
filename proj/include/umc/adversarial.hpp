#pragma once

#include "umc/completion.hpp"
#include "umc/types.hpp"

namespace umc {

/// Two distinct rank-2 matrices agreeing exactly on Omega: the witness that
/// |Omega| <= n^2/4 observations cannot identify rank-2 matrices under the
/// row-norm incoherence assumption alone.
struct CounterexamplePair {
    DenseMatrix Ma;
    DenseMatrix Mb;
    SampleSet omega;
    double agreement_residual;  // ||P_Omega(Ma - Mb)||_F, exactly 0
    double separation;          // ||Ma - Mb||_F > 0
    Index row_a = 0, row_b = 0; // the two rows carrying the ambiguous weights
};

/// Builds the pair on a given Omega with |Omega| <= n^2/4, n even >= 8.
/// Picks the two rows whose observed-column union is smallest (it has size
/// <= n/2 by counting); places weights (a, b) = (1/sqrt(2n), sqrt(3/(2n)))
/// in those rows for Ma and swapped for Mb. Throws invalid_argument when
/// |Omega| > n^2/4 and GenerationError if no qualifying row pair exists.
CounterexamplePair build_counterexample(Index n, const SampleSet& omega);

/// Convenience Omega for the witness: all entries of the bottom-left
/// n/2 x n/2 block (exactly n^2/4 edges, rows 0..1 unobserved).
SampleSet block_corner_omega(Index n);

struct FailureReport {
    double rel_error_a;   // solver output vs Ma
    double rel_error_b;   // solver output vs Mb
    double threshold;
    bool non_recovery_confirmed;  // at least one target missed
    SolveResult solve;
};

/// Runs the nuclear-norm solver on P_Omega(Ma) and reports that the output
/// cannot be within `threshold` of both targets at once.
FailureReport demonstrate_failure(const CounterexamplePair& pair,
                                  const SolverConfig& cfg = {},
                                  double threshold = 0.005);

}  // namespace umc
