#include "umc/incoherence.hpp"

#include "umc/graphs.hpp"
#include "umc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace umc {

namespace {

constexpr double kSubsetBudget = 2e6;

double binomial(Index n, Index k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (Index i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > 1e18) return c;  // saturate, only compared against the budget
    }
    return c;
}

// ||(n/d) sum_{k in S} U^k U^k^T - I||_2 for the given subset of rows.
double subset_deviation(const Matrix& U, const std::vector<Index>& subset, Index d) {
    const Index r = U.cols();
    const double scale = static_cast<double>(U.rows()) / static_cast<double>(d);
    Matrix g = Matrix::Zero(r, r);
    for (Index k : subset) g.noalias() += U.row(k).transpose() * U.row(k);
    g *= scale;
    g -= Matrix::Identity(r, r);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Exact delta_d for one side. r = 1 reduces to extremal partial sums of the
// squared entries; otherwise enumerate all size-d subsets.
double delta_side_exact(const Matrix& U, Index d) {
    const Index n = U.rows();
    const Index r = U.cols();
    if (d < 1 || d > n)
        throw std::invalid_argument("delta_d: need 1 <= d <= n");

    if (r == 1) {
        std::vector<double> sq(static_cast<size_t>(n));
        for (Index i = 0; i < n; ++i) sq[static_cast<size_t>(i)] = U(i, 0) * U(i, 0);
        std::sort(sq.begin(), sq.end());
        const double scale = static_cast<double>(n) / static_cast<double>(d);
        double lo = 0.0, hi = 0.0;
        for (Index i = 0; i < d; ++i) {
            lo += sq[static_cast<size_t>(i)];
            hi += sq[sq.size() - 1 - static_cast<size_t>(i)];
        }
        return std::max(std::abs(scale * hi - 1.0), std::abs(scale * lo - 1.0));
    }

    if (binomial(n, d) > kSubsetBudget)
        throw TooLargeError(
            "delta_d_exact: C(n, d) exceeds the 2e6-subset budget; use delta_d_estimate");

    std::vector<Index> subset(static_cast<size_t>(d));
    std::iota(subset.begin(), subset.end(), Index{0});
    double best = 0.0;
    while (true) {
        best = std::max(best, subset_deviation(U, subset, d));
        // next combination in lexicographic order
        Index i = d - 1;
        while (i >= 0 && subset[static_cast<size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++subset[static_cast<size_t>(i)];
        for (Index j = i + 1; j < d; ++j)
            subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
    }
    return best;
}

double delta_side_estimate(const Matrix& U, Index d, long trials, std::mt19937_64& rng) {
    const Index n = U.rows();
    if (d < 1 || d > n)
        throw std::invalid_argument("delta_d: need 1 <= d <= n");
    std::vector<Index> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::vector<Index> subset(static_cast<size_t>(d));
    double best = 0.0;
    for (long t = 0; t < trials; ++t) {
        // partial Fisher-Yates: uniform size-d subset
        for (Index i = 0; i < d; ++i) {
            std::uniform_int_distribution<Index> pick(i, n - 1);
            std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(pick(rng))]);
            subset[static_cast<size_t>(i)] = idx[static_cast<size_t>(i)];
        }
        best = std::max(best, subset_deviation(U, subset, d));
    }
    return best;
}

double mu1_side(const Matrix& U) {
    const Index n = U.rows();
    const double r = static_cast<double>(U.cols());
    const Matrix gram = U * U.transpose();
    double dev = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const double target = (i == j) ? r / static_cast<double>(n) : 0.0;
            dev = std::max(dev, std::abs(gram(i, j) - target));
        }
    return dev * static_cast<double>(n) / std::sqrt(r);
}

}  // namespace

std::string delta_method_label(DeltaMethod m, long trials, uint64_t seed) {
    switch (m) {
        case DeltaMethod::ExactEnumeration: return "exact-enumeration";
        case DeltaMethod::MonteCarlo:
            return "monte-carlo(" + std::to_string(trials) + ", " +
                   std::to_string(seed) + ")";
        case DeltaMethod::SipBound: return "sip-bound";
    }
    return "unknown";
}

double mu0(const LowRankFactor& f) {
    const double r = static_cast<double>(f.rank());
    const double mu_u =
        static_cast<double>(f.n1()) * f.U().rowwise().squaredNorm().maxCoeff() / r;
    const double mu_v =
        static_cast<double>(f.n2()) * f.V().rowwise().squaredNorm().maxCoeff() / r;
    return std::max(mu_u, mu_v);
}

double mu1_sip(const LowRankFactor& f) {
    return std::max(mu1_side(f.U()), mu1_side(f.V()));
}

double delta_d_exact(const LowRankFactor& f, Index d) {
    return std::max(delta_side_exact(f.U(), d), delta_side_exact(f.V(), d));
}

double delta_d_estimate(const LowRankFactor& f, Index d, long trials, uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("delta_d_estimate: trials must be >= 1");
    auto rng_u = make_rng(mix_seed(seed, 0xde17aULL, 1));
    auto rng_v = make_rng(mix_seed(seed, 0xde17aULL, 2));
    return std::max(delta_side_estimate(f.U(), d, trials, rng_u),
                    delta_side_estimate(f.V(), d, trials, rng_v));
}

double claim1_bound(const LowRankFactor& f) {
    return mu1_sip(f) * std::sqrt(static_cast<double>(f.rank()));
}

IncoherenceReport audit(const LowRankFactor& f, const SampleSet& omega,
                        double delta_budget, double mu0_budget,
                        long mc_trials, uint64_t mc_seed) {
    IncoherenceReport rep;
    rep.mu0 = mu0(f);
    rep.mu1 = mu1_sip(f);
    rep.claim1_upper = rep.mu1 * std::sqrt(static_cast<double>(f.rank()));

    const bool regular = omega.is_row_regular() && omega.is_col_regular();
    rep.d = regular ? omega.regular_degree()
                    : static_cast<Index>(std::lround(omega.mean_row_degree()));
    rep.d = std::max<Index>(1, std::min(rep.d, std::min(f.n1(), f.n2())));

    const Index r = f.rank();
    bool exact_ok = r == 1;
    if (!exact_ok) {
        exact_ok = binomial(f.n1(), rep.d) <= kSubsetBudget &&
                   binomial(f.n2(), rep.d) <= kSubsetBudget;
    }
    if (exact_ok) {
        rep.delta_d = delta_d_exact(f, rep.d);
        rep.delta_method = DeltaMethod::ExactEnumeration;
    } else {
        rep.delta_d = delta_d_estimate(f, rep.d, mc_trials, mc_seed);
        rep.delta_method = DeltaMethod::MonteCarlo;
        rep.delta_trials = mc_trials;
        rep.delta_seed = mc_seed;
    }

    rep.mu0_budget = mu0_budget;
    rep.delta_budget = delta_budget;
    rep.a1_pass = mu0_budget <= 0.0 ? true : rep.mu0 <= mu0_budget;
    rep.a2_pass = rep.delta_d <= delta_budget;

    const SpectrumReport spec = spectrum(omega);
    rep.measured_C = spec.measured_C;
    const double rr = static_cast<double>(r);
    rep.d_required = 36.0 * spec.measured_C * spec.measured_C * rep.mu0 * rep.mu0 * rr * rr;
    rep.d_pass = static_cast<double>(rep.d) >= rep.d_required;
    return rep;
}

}  // namespace umc
