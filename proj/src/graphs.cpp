#include "umc/graphs.hpp"

#include "umc/dense.hpp"
#include "umc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace umc {

namespace {

// Repairs a permutation so that no (i, perm[i]) hits an already-used cell.
// Random transpositions that do not increase the collision count; gives up
// after swap_budget proposals.
bool repair_matching(std::vector<Index>& perm,
                     const std::vector<std::vector<bool>>& used,
                     std::mt19937_64& rng, long swap_budget) {
    const Index n = static_cast<Index>(perm.size());
    std::vector<Index> colliding;
    auto collides = [&](Index i) {
        return used[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
    };
    for (Index i = 0; i < n; ++i)
        if (collides(i)) colliding.push_back(i);
    if (colliding.empty()) return true;
    std::uniform_int_distribution<Index> pick_row(0, n - 1);
    for (long t = 0; t < swap_budget && !colliding.empty(); ++t) {
        std::uniform_int_distribution<size_t> pick_coll(0, colliding.size() - 1);
        const size_t ci = pick_coll(rng);
        const Index i = colliding[ci];
        const Index j = pick_row(rng);
        if (i == j) continue;
        const int before = static_cast<int>(collides(i)) + static_cast<int>(collides(j));
        std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
        const int after = static_cast<int>(collides(i)) + static_cast<int>(collides(j));
        if (after > before) {
            std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
            continue;
        }
        if (after < before) {
            colliding.clear();
            for (Index k = 0; k < n; ++k)
                if (collides(k)) colliding.push_back(k);
        }
    }
    return colliding.empty();
}

}  // namespace

SampleSet gen_random_d_regular(Index n, Index d, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random_d_regular: n must be >= 1");
    if (d < 1 || d > n)
        throw std::invalid_argument("gen_random_d_regular: need 1 <= d <= n");

    std::vector<SampleSet::Edge> edges;
    edges.reserve(static_cast<size_t>(n) * static_cast<size_t>(d));

    if (d == n) {  // forced: the union of n disjoint matchings is complete
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) edges.emplace_back(i, j);
        return SampleSet::from_edges(n, n, std::move(edges));
    }

    auto rng = make_rng(mix_seed(seed, 0xd7e9ULL, static_cast<uint64_t>(n),
                                 static_cast<uint64_t>(d)));
    std::vector<std::vector<bool>> used(static_cast<size_t>(n),
                                        std::vector<bool>(static_cast<size_t>(n), false));
    std::vector<Index> base(static_cast<size_t>(n));
    std::iota(base.begin(), base.end(), Index{0});

    const long matching_budget = 10 * static_cast<long>(d);
    long matchings_drawn = 0;
    for (Index k = 0; k < d; ++k) {
        bool placed = false;
        while (!placed) {
            if (matchings_drawn >= matching_budget)
                throw GenerationError(
                    "gen_random_d_regular: retry budget of 10*d matchings exceeded");
            ++matchings_drawn;
            std::vector<Index> perm = base;
            std::shuffle(perm.begin(), perm.end(), rng);
            if (!repair_matching(perm, used, rng, 200L * n)) continue;
            for (Index i = 0; i < n; ++i) {
                used[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])] = true;
                edges.emplace_back(i, perm[static_cast<size_t>(i)]);
            }
            placed = true;
        }
    }
    return SampleSet::from_edges(n, n, std::move(edges));
}

SampleSet gen_erdos_renyi(Index n1, Index n2, double p, uint64_t seed) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("gen_erdos_renyi: need 0 < p <= 1");
    auto rng = make_rng(mix_seed(seed, 0xe12dULL, static_cast<uint64_t>(n1),
                                 static_cast<uint64_t>(n2)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<SampleSet::Edge> edges;
    for (Index i = 0; i < n1; ++i)
        for (Index j = 0; j < n2; ++j)
            if (unif(rng) < p) edges.emplace_back(i, j);
    if (edges.empty())
        throw GenerationError("gen_erdos_renyi: empty sample set (p too small)");
    return SampleSet::from_edges(n1, n2, std::move(edges));
}

SampleSet trim(const SampleSet& omega, double factor) {
    if (!(factor > 1.0))
        throw std::invalid_argument("trim: factor must be > 1");
    const double row_thresh = factor * omega.mean_row_degree();
    const double col_thresh = factor * omega.mean_col_degree();
    std::vector<SampleSet::Edge> kept;
    kept.reserve(omega.edges().size());
    for (const auto& [i, j] : omega.edges()) {
        if (static_cast<double>(omega.row_degrees()[static_cast<size_t>(i)]) > row_thresh)
            continue;
        if (static_cast<double>(omega.col_degrees()[static_cast<size_t>(j)]) > col_thresh)
            continue;
        kept.emplace_back(i, j);
    }
    return SampleSet::from_edges(omega.n1(), omega.n2(), std::move(kept));
}

SampleSet gen_block_model(const BlockModelParams& params) {
    if (params.n1 < 1 || params.n2 < 1)
        throw std::invalid_argument("gen_block_model: dimensions must be positive");
    if (params.p < 0.0 || params.p > 1.0 || params.q < 0.0 || params.q > 1.0)
        throw std::invalid_argument("gen_block_model: probabilities must be in [0,1]");
    auto rng = make_rng(mix_seed(params.seed, 0xb10cULL,
                                 static_cast<uint64_t>(params.n1),
                                 static_cast<uint64_t>(params.n2)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Index h1 = params.n1 / 2;
    const Index h2 = params.n2 / 2;
    std::vector<SampleSet::Edge> edges;
    for (Index i = 0; i < params.n1; ++i) {
        const bool top = i < h1;
        for (Index j = 0; j < params.n2; ++j) {
            const bool left = j < h2;
            const double prob = (top == left) ? params.p : params.q;
            if (unif(rng) < prob) edges.emplace_back(i, j);
        }
    }
    if (edges.empty())
        throw GenerationError("gen_block_model: empty sample set");
    return SampleSet::from_edges(params.n1, params.n2, std::move(edges));
}

SpectrumReport spectrum(const SampleSet& omega) {
    if (omega.size() < 1)
        throw std::invalid_argument("spectrum: empty sample set");
    const Matrix G = omega.biadjacency();
    const Vector s = singular_values(G);

    SpectrumReport r;
    r.sigma1 = s(0);
    r.sigma2 = s.size() > 1 ? s(1) : 0.0;
    r.relative_gap = r.sigma1 > 0.0 ? 1.0 - r.sigma2 / r.sigma1 : 0.0;
    const double d_avg = omega.mean_row_degree();
    r.measured_C = r.sigma2 / std::sqrt(d_avg);
    r.is_row_regular = omega.is_row_regular();
    r.is_col_regular = omega.is_col_regular();
    if (r.is_row_regular && r.is_col_regular) {
        const Index d = omega.regular_degree();
        r.d = d;
        r.ramanujan = r.sigma2 <= 2.0 * std::sqrt(static_cast<double>(d - 1));
    }
    double g1 = 0.0;
    for (Index deg : omega.row_degrees()) {
        const double dev = static_cast<double>(deg) - d_avg;
        g1 += dev * dev;
    }
    r.g1_residual = std::sqrt(g1);
    return r;
}

}  // namespace umc
