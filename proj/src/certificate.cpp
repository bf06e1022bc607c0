#include "umc/certificate.hpp"

#include "umc/dense.hpp"
#include "umc/graphs.hpp"

#include <algorithm>
#include <cmath>

namespace umc {

namespace {

constexpr double kLemmaSlack = 1e-9;

// Applies P_Omega to a plain Matrix without the DenseMatrix round trip.
Matrix apply_omega(const Matrix& Z, const SampleSet& omega) {
    Matrix out = Matrix::Zero(Z.rows(), Z.cols());
    for (const auto& [i, j] : omega.edges()) out(i, j) = Z(i, j);
    return out;
}

// Splits Z in T as Z = U X^T + Y V^T with Y orthogonal to U:
// X = Z^T U, Y = (I - U U^T) Z V.
void split_tangent(const Matrix& Z, const LowRankFactor& f, Matrix& X, Matrix& Y) {
    X = Z.transpose() * f.U();
    Y = Z * f.V();
    Y -= f.U() * (f.U().transpose() * Y);
}

double max_row_sq(const Matrix& A) { return A.rowwise().squaredNorm().maxCoeff(); }

// Measured coefficient c with ||rows||^2 <= c^2 mu0 r / n.
double measure_c(const Matrix& rows, double mu0_val, Index r, Index n) {
    return std::sqrt(max_row_sq(rows) * static_cast<double>(n) /
                     (mu0_val * static_cast<double>(r)));
}

Index require_regular(const SampleSet& omega, const char* who) {
    if (!omega.is_row_regular() || !omega.is_col_regular())
        throw std::invalid_argument(std::string(who) +
                                    ": Omega must be bi-regular for the n/d scaling");
    return omega.regular_degree();
}

}  // namespace

Index golfing_depth(Index n, double C, double mu0, Index r) {
    if (n < 1 || C <= 0.0 || mu0 <= 0.0 || r < 1)
        throw std::invalid_argument("golfing_depth: arguments must be positive");
    const double arg =
        static_cast<double>(n) / (18.0 * C * C * mu0 * mu0 * static_cast<double>(r));
    if (arg <= 1.0) return 1;  // clamp
    const double p = 0.5 * std::log(arg) / std::log(3.0);
    return std::max<Index>(1, static_cast<Index>(std::ceil(p - 1e-12)));
}

GolfingTrace golfing_construct(const LowRankFactor& f, const SampleSet& omega,
                               std::optional<Index> p_override) {
    const Index d = require_regular(omega, "golfing_construct");
    if (f.n1() != omega.n1() || f.n2() != omega.n2())
        throw std::invalid_argument("golfing_construct: dimension mismatch");
    const Index n = std::max(omega.n1(), omega.n2());
    const double scale = static_cast<double>(n) / static_cast<double>(d);
    const double mu = mu0(f);

    GolfingTrace trace;
    if (p_override) {
        if (*p_override < 1)
            throw std::invalid_argument("golfing_construct: depth must be >= 1");
        trace.p = *p_override;
    } else {
        const double C = spectrum(omega).measured_C;
        const double arg = static_cast<double>(n) /
                           (18.0 * C * C * mu * mu * static_cast<double>(f.rank()));
        trace.p = golfing_depth(n, C, mu, f.rank());
        trace.depth_clamped = arg <= 1.0;  // formula value nonpositive
    }

    Matrix W = f.U() * f.V().transpose();
    Matrix Y = Matrix::Zero(omega.n1(), omega.n2());
    Matrix Xc, Yc;
    for (Index k = 0;; ++k) {
        trace.w_norms.push_back(W.norm());
        split_tangent(W, f, Xc, Yc);
        trace.c1.push_back(measure_c(Xc, mu, f.rank(), n));
        trace.c2.push_back(measure_c(Yc, mu, f.rank(), n));
        if (k == trace.p) break;
        const Matrix PW = scale * apply_omega(W, omega);
        Y += PW;
        W -= project_T(PW, f);
    }
    trace.Y = std::move(Y);
    return trace;
}

CertificateReport verify_certificate(const Matrix& Y, const LowRankFactor& f,
                                     const SampleSet& omega) {
    if (Y.rows() != omega.n1() || Y.cols() != omega.n2() || f.n1() != omega.n1() ||
        f.n2() != omega.n2())
        throw std::invalid_argument("verify_certificate: dimension mismatch");

    CertificateReport rep;

    // exact support check: every off-Omega entry must be exactly zero
    Matrix off = Y;
    for (const auto& [i, j] : omega.edges()) off(i, j) = 0.0;
    rep.supported_on_omega = (off.array() == 0.0).all();

    const Index n = std::max(omega.n1(), omega.n2());
    const bool regular = omega.is_row_regular() && omega.is_col_regular();
    rep.d = regular ? omega.regular_degree()
                    : static_cast<Index>(std::lround(omega.mean_row_degree()));

    rep.pt_residual = (project_T(Y, f) - f.U() * f.V().transpose()).norm();
    rep.pt_threshold =
        std::sqrt(static_cast<double>(rep.d) / (8.0 * static_cast<double>(n)));
    rep.ptperp_norm = spectral_norm(project_T_perp(Y, f));

    rep.pass = rep.supported_on_omega && rep.pt_residual <= rep.pt_threshold &&
               rep.ptperp_norm < rep.ptperp_threshold;

    // preconditions from measurements
    const IncoherenceReport inc = audit(f, omega);
    rep.measured_C = inc.measured_C;
    rep.mu0 = inc.mu0;
    rep.delta_d = inc.delta_d;
    rep.delta_method = inc.delta_method;
    rep.precondition_delta = inc.delta_d <= 1.0 / 6.0;
    rep.precondition_d = static_cast<double>(rep.d) >= inc.d_required;
    return rep;
}

LemmaCheck check_lemma1(const LowRankFactor& f, const SampleSet& omega,
                        const Matrix& Z, double delta_d, double C) {
    const Index d = require_regular(omega, "check_lemma1");
    const double zn = Z.norm();
    if (zn > 0.0 && (project_T(Z, f) - Z).norm() > 1e-8 * zn)
        throw std::invalid_argument("check_lemma1: Z is not in T");

    const Index n = std::max(omega.n1(), omega.n2());
    const double scale = static_cast<double>(n) / static_cast<double>(d);
    const double mu = mu0(f);
    const double r = static_cast<double>(f.rank());

    LemmaCheck out;
    out.lhs = (scale * project_T(apply_omega(Z, omega), f) - Z).norm();
    out.rhs = std::sqrt(2.0 * (delta_d * delta_d +
                               C * C * mu * mu * r * r / static_cast<double>(d))) *
              zn;
    out.holds = out.lhs <= out.rhs + kLemmaSlack;
    return out;
}

LemmaCheck check_lemma2(const LowRankFactor& f, const SampleSet& omega,
                        const Matrix& X, const Matrix& Y_mat) {
    const Index d = require_regular(omega, "check_lemma2");
    const double yn = Y_mat.norm();
    if (yn > 0.0 && (f.U().transpose() * Y_mat).norm() > 1e-8 * yn)
        throw std::invalid_argument("check_lemma2: Y is not orthogonal to U");

    const Index n = std::max(omega.n1(), omega.n2());
    const double scale = static_cast<double>(n) / static_cast<double>(d);
    const double mu = mu0(f);
    const double r = static_cast<double>(f.rank());
    const double C = spectrum(omega).measured_C;
    const double c1 = measure_c(X, mu, f.rank(), n);
    const double c2 = measure_c(Y_mat, mu, f.rank(), n);

    const Matrix Z = f.U() * X.transpose() + Y_mat * f.V().transpose();
    LemmaCheck out;
    out.lhs = spectral_norm(scale * apply_omega(Z, omega) - Z);
    out.rhs = (c1 + c2) * C * mu * r / std::sqrt(static_cast<double>(d));
    out.holds = out.lhs <= out.rhs + kLemmaSlack;
    return out;
}

Lemma3Report check_lemma3(const LowRankFactor& f, const SampleSet& omega,
                          const Matrix& X, const Matrix& Y_mat, double delta_d,
                          double C) {
    const Index d = require_regular(omega, "check_lemma3");
    const double yn = Y_mat.norm();
    if (yn > 0.0 && (f.U().transpose() * Y_mat).norm() > 1e-8 * yn)
        throw std::invalid_argument("check_lemma3: Y is not orthogonal to U");

    const Index n = std::max(omega.n1(), omega.n2());
    const double scale = static_cast<double>(n) / static_cast<double>(d);
    const double mu = mu0(f);
    const double r = static_cast<double>(f.rank());
    const double rootd = std::sqrt(static_cast<double>(d));
    const double c1 = measure_c(X, mu, f.rank(), n);
    const double c2 = measure_c(Y_mat, mu, f.rank(), n);

    const Matrix Z = f.U() * X.transpose() + Y_mat * f.V().transpose();
    const Matrix Zt = Z - scale * project_T(apply_omega(Z, omega), f);
    Matrix Xt, Yt;
    split_tangent(Zt, f, Xt, Yt);

    Lemma3Report rep;
    rep.inf_norm.lhs = inf_norm(Zt);
    rep.inf_norm.rhs = (c1 + c2) * mu * r / static_cast<double>(n) *
                       (delta_d + C * mu * r / rootd);
    rep.inf_norm.holds = rep.inf_norm.lhs <= rep.inf_norm.rhs + kLemmaSlack;

    const double xb = delta_d * c1 + 2.0 * c2 * C * mu * r / rootd;
    rep.x_row.lhs = max_row_sq(Xt);
    rep.x_row.rhs = mu * r / static_cast<double>(n) * xb * xb;
    rep.x_row.holds = rep.x_row.lhs <= rep.x_row.rhs + kLemmaSlack;

    const double yb = delta_d * c2 + (c1 + c2) * C * mu * r / rootd;
    rep.y_row.lhs = max_row_sq(Yt);
    rep.y_row.rhs = mu * r / static_cast<double>(n) * yb * yb;
    rep.y_row.holds = rep.y_row.lhs <= rep.y_row.rhs + kLemmaSlack;
    return rep;
}

}  // namespace umc
