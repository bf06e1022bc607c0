#include "umc/completion.hpp"

#include "umc/dense.hpp"

#include <lapacke.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

namespace umc {

namespace {

// In-place shrinkage of the full SVD of B: B <- U max(S-tau,0) V^T, keeping
// at most max_rank triples (0 = all). Returns the post-shrinkage rank.
Index svt_inplace(Matrix& B, double tau, Index max_rank, Matrix& U, Vector& S,
                  Matrix& VT) {
    const lapack_int m = static_cast<lapack_int>(B.rows());
    const lapack_int n = static_cast<lapack_int>(B.cols());
    const lapack_int k = std::min(m, n);
    U.resize(m, k);
    S.resize(k);
    VT.resize(k, n);
    lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, B.data(), m,
                                     S.data(), U.data(), m, VT.data(), k);
    if (info != 0)
        throw NumericalError("svt: dgesdd failed to converge (info=" +
                             std::to_string(info) + ")");
    Index rank = 0;
    for (Index i = 0; i < k; ++i) {
        const double v = S(i) - tau;
        if (v > 0.0 && (max_rank == 0 || rank < max_rank)) {
            S(i) = v;
            ++rank;
        } else {
            S(i) = 0.0;
        }
    }
    B.noalias() = U.leftCols(rank) * S.head(rank).asDiagonal() * VT.topRows(rank);
    return rank;
}

}  // namespace

DenseMatrix spectral_approx(const DenseMatrix& observed, const SampleSet& omega,
                            Index k, bool allow_irregular) {
    if (observed.rows() != omega.n1() || observed.cols() != omega.n2())
        throw std::invalid_argument("spectral_approx: dimension mismatch");
    if (k < 1) throw std::invalid_argument("spectral_approx: k must be >= 1");
    if (omega.size() < 1)
        throw std::invalid_argument("spectral_approx: empty sample set");
    const bool regular = omega.is_row_regular() && omega.is_col_regular();
    if (!regular && !allow_irregular)
        throw std::invalid_argument(
            "spectral_approx: Omega is not bi-regular; the n/d scaling needs "
            "regular sampling (pass allow_irregular for mean-degree scaling)");
    const double scale = static_cast<double>(omega.n1()) *
                         static_cast<double>(omega.n2()) /
                         static_cast<double>(omega.size());
    const SVDResult top = svd(observed, k);
    return DenseMatrix(scale * top.factor.assemble());
}

ApproxErrorBound approx_error_bound(double mu0, Index r, Index d, double C,
                                    double M_norm) {
    if (mu0 <= 0.0 || r < 1 || d < 1 || C < 0.0 || M_norm < 0.0)
        throw std::invalid_argument("approx_error_bound: arguments must be positive");
    const double base =
        C * mu0 * static_cast<double>(r) * M_norm / std::sqrt(static_cast<double>(d));
    return ApproxErrorBound{base, 2.0 * base};
}

DenseMatrix svt_shrink(const DenseMatrix& A, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("svt_shrink: tau must be >= 0");
    Matrix B = A.mat();
    Matrix U, VT;
    Vector S;
    svt_inplace(B, tau, 0, U, S, VT);
    return DenseMatrix(std::move(B));
}

SolveResult solve_nuclear_norm(const DenseMatrix& observed, const SampleSet& omega,
                               const SolverConfig& cfg, const DenseMatrix* truth) {
    if (observed.rows() != omega.n1() || observed.cols() != omega.n2())
        throw std::invalid_argument("solve_nuclear_norm: dimension mismatch");
    if (omega.size() < 1)
        throw std::invalid_argument("solve_nuclear_norm: empty sample set");
    if (cfg.max_iters < 1 || !(cfg.tol > 0.0) || !(cfg.penalty_growth > 1.0))
        throw std::invalid_argument("solve_nuclear_norm: invalid config");
    if (truth && (truth->rows() != observed.rows() || truth->cols() != observed.cols()))
        throw std::invalid_argument("solve_nuclear_norm: truth dimension mismatch");

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> trace;
    auto finish = [&](Matrix X, long iters, double res, bool converged) {
        SolveResult out{DenseMatrix(std::move(X)), iters, res, std::nullopt,
                        false, converged, 0.0, std::move(trace)};
        if (truth) {
            const double tn = truth->mat().norm();
            const double err = (out.X.mat() - truth->mat()).norm();
            out.rel_error_vs_truth = tn > 0.0 ? err / tn : err;
            out.success = *out.rel_error_vs_truth < cfg.success_threshold;
        }
        out.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    };

    const double norm_obs = observed.mat().norm();
    if (norm_obs == 0.0)  // all-zero observations: 0 is feasible and optimal
        return finish(Matrix::Zero(observed.rows(), observed.cols()), 0, 0.0, true);

    double penalty = cfg.penalty_init > 0.0
                         ? cfg.penalty_init
                         : 1.0 / singular_values(observed.mat())(0);

    const auto& edges = omega.edges();
    Matrix X = Matrix::Zero(observed.rows(), observed.cols());
    Matrix Y = Matrix::Zero(observed.rows(), observed.cols());
    Matrix B, U, VT, Xbest = X;
    Vector S;
    double res = 1.0, best_res = std::numeric_limits<double>::infinity();
    std::deque<double> res_hist;
    long it = 0;
    bool converged = false;

    for (it = 1; it <= cfg.max_iters; ++it) {
        // shrinkage input: observed entries refreshed from data + dual,
        // unobserved carried from the current iterate
        B = X;
        for (const auto& [i, j] : edges) B(i, j) = observed(i, j) + Y(i, j) / penalty;
        svt_inplace(B, 1.0 / penalty, cfg.max_rank, U, S, VT);
        const double dx = (B - X).norm() / norm_obs;
        X.swap(B);

        double res_sq = 0.0;
        for (const auto& [i, j] : edges) {
            const double rij = observed(i, j) - X(i, j);
            Y(i, j) += penalty * rij;
            res_sq += rij * rij;
        }
        res = std::sqrt(res_sq) / norm_obs;
        if (cfg.record_trace) trace.push_back(res);
        if (res < best_res) {
            best_res = res;
            Xbest = X;
        }

        const bool settled = penalty * dx <= cfg.growth_gate;
        if (res <= cfg.tol && settled) {
            converged = true;
            break;
        }
        res_hist.push_back(res);
        if (static_cast<long>(res_hist.size()) > cfg.stall_window) {
            const double old = res_hist.front();
            res_hist.pop_front();
            if (res > (1.0 - cfg.stall_eps) * old) break;  // no further progress
        }
        if (settled) penalty *= cfg.penalty_growth;
    }
    return finish(std::move(Xbest), std::min(it, cfg.max_iters), best_res, converged);
}

}  // namespace umc
