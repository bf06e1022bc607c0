#pragma once

#include "umc/incoherence.hpp"
#include "umc/types.hpp"

#include <optional>
#include <vector>

namespace umc {

/// Record of the golfing construction Y = sum (n/d) P_Omega(W_i),
/// W_{k+1} = W_k - (n/d) P_T P_Omega(W_k), W_0 = U V^T.
struct GolfingTrace {
    Index p = 0;                   // depth actually run
    bool depth_clamped = false;    // formula gave < 1 and was clamped
    std::vector<double> w_norms;   // ||W_k||_F, k = 0..p
    std::vector<double> c1, c2;    // measured incoherence coefficients of W_k
    Matrix Y;                      // accumulated certificate, supported on Omega
};

/// Verification of the dual-certificate conditions plus the exact-recovery
/// preconditions, with all margins.
struct CertificateReport {
    bool supported_on_omega = false;
    double pt_residual = 0.0;      // ||P_T(Y) - U V^T||_F
    double pt_threshold = 0.0;     // sqrt(d / 8n)
    double ptperp_norm = 0.0;      // ||P_Tperp(Y)||
    double ptperp_threshold = 0.5;
    bool precondition_d = false;     // d >= 36 C^2 mu0^2 r^2
    bool precondition_delta = false; // delta_d <= 1/6
    bool pass = false;  // supported && pt_residual <= thr && ptperp_norm < 1/2
    // measurements behind the preconditions
    double measured_C = 0.0;
    double mu0 = 0.0;
    double delta_d = 0.0;
    DeltaMethod delta_method = DeltaMethod::ExactEnumeration;
    Index d = 0;
};

struct LemmaCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

struct Lemma3Report {
    LemmaCheck inf_norm;  // ||Ztilde||_inf vs ((c1+c2) mu0 r/n)(delta + C mu0 r/sqrt(d))
    LemmaCheck x_row;     // max ||Xtilde^i||^2 vs (mu0 r/n)(delta c1 + 2 c2 C mu0 r/sqrt(d))^2
    LemmaCheck y_row;     // max ||Ytilde^j||^2 vs (mu0 r/n)(delta c2 + (c1+c2) C mu0 r/sqrt(d))^2
};

/// ceil(0.5 log3(n / (18 C^2 mu0^2 r))), clamped to >= 1 (the formula goes
/// nonpositive at small n and a zero-step certificate is vacuous).
Index golfing_depth(Index n, double C, double mu0, Index r);

/// Runs the golfing recursion for p steps (default: golfing_depth with the
/// measured C and mu0). Requires a bi-regular Omega.
GolfingTrace golfing_construct(const LowRankFactor& f, const SampleSet& omega,
                               std::optional<Index> p_override = std::nullopt);

/// Evaluates the three dual-certificate conditions exactly as stated
/// (Omega support is checked for exact zeros off Omega) plus the
/// exact-recovery preconditions from incoherence measurements.
CertificateReport verify_certificate(const Matrix& Y, const LowRankFactor& f,
                                     const SampleSet& omega);

/// ||(n/d) P_T P_Omega(Z) - Z||_F <= sqrt(2(delta^2 + C^2 mu0^2 r^2/d)) ||Z||_F
/// for Z in T. Throws if Z is not in T to 1e-8 relative.
LemmaCheck check_lemma1(const LowRankFactor& f, const SampleSet& omega,
                        const Matrix& Z, double delta_d, double C);

/// ||(n/d) P_Omega(Z) - Z|| <= (c1 + c2) C mu0 r / sqrt(d) for
/// Z = U X^T + Y V^T with Y orthogonal to U; c1, c2 measured from X, Y.
LemmaCheck check_lemma2(const LowRankFactor& f, const SampleSet& omega,
                        const Matrix& X, const Matrix& Y_mat);

/// Both bullets of the residual-incoherence lemma for
/// Ztilde = Z - (n/d) P_T P_Omega(Z).
Lemma3Report check_lemma3(const LowRankFactor& f, const SampleSet& omega,
                          const Matrix& X, const Matrix& Y_mat, double delta_d,
                          double C);

}  // namespace umc
