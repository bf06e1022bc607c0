#pragma once

#include "umc/types.hpp"

#include <cstdint>
#include <optional>

namespace umc {

/// Knobs of the augmented-Lagrangian nuclear-norm solver. All schedule
/// parameters are config-exposed; the defaults converge at n = 500 within
/// the iteration budget.
struct SolverConfig {
    long max_iters = 500;
    double tol = 1e-7;            // stop: ||P_Omega(X)-observed||_F/||observed||_F
    double penalty_init = 0.0;    // <= 0 means 1/sigma1(observed)
    double penalty_growth = 1.2;  // must be > 1
    uint64_t seed = 0;            // reserved; the solver itself is deterministic
    // The penalty grows only while the primal iterate has settled at the
    // current penalty: penalty*||dX||_F/||observed||_F < growth_gate. The
    // same gate doubles as the second half of the stopping test.
    double growth_gate = 1e-4;
    // Optional hard cap on the iterate rank (0 = uncapped). With a cap the
    // residual generally cannot reach tol; the stall exit below ends the run.
    Index max_rank = 0;
    // Stall exit: stop once the residual improved by less than
    // stall_eps (relative) over the last stall_window iterations.
    long stall_window = 10;
    double stall_eps = 1e-4;
    double success_threshold = 0.01;  // relative Frobenius error vs truth
    bool record_trace = false;        // keep the per-iteration residual history
};

struct SolveResult {
    DenseMatrix X;
    long iterations = 0;
    double final_residual = 0.0;
    std::optional<double> rel_error_vs_truth;
    bool success = false;    // truth supplied and rel error < success_threshold
    bool converged = false;  // residual reached tol with the primal settled
    double wall_time = 0.0;  // seconds
    std::vector<double> residual_trace;  // filled when cfg.record_trace
};

/// (n1 n2/|Omega|) * P_k(observed): the spectral approximation of M from
/// P_Omega(M). Requires a bi-regular Omega (the scaling reduces to n/d);
/// irregular Omega is rejected unless allow_irregular, which switches to the
/// mean-degree scaling n1*n2/|Omega|.
DenseMatrix spectral_approx(const DenseMatrix& observed, const SampleSet& omega,
                            Index k, bool allow_irregular = false);

struct ApproxErrorBound {
    double unprojected;  // C mu0 r ||M|| / sqrt(d)
    double rank_k;       // 2 C mu0 r ||M|| / sqrt(d)
};

ApproxErrorBound approx_error_bound(double mu0, Index r, Index d, double C,
                                    double M_norm);

/// Singular value shrinkage: U max(S - tau, 0) V^T from a full SVD of A.
DenseMatrix svt_shrink(const DenseMatrix& A, double tau);

/// Nuclear norm minimization subject to P_Omega(X) = observed, by an
/// inexact augmented-Lagrangian iteration: shrinkage step with threshold
/// 1/penalty on the observed entries filled from the dual, dual ascent on
/// the Omega-residual, geometric penalty growth gated on primal progress.
/// Returns the best iterate by residual; converged=false if the tolerance
/// was not reached.
SolveResult solve_nuclear_norm(const DenseMatrix& observed, const SampleSet& omega,
                               const SolverConfig& cfg = {},
                               const DenseMatrix* truth = nullptr);

}  // namespace umc
