#include "umc/adversarial.hpp"

#include "umc/dense.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace umc {

namespace {

Matrix build_u(Index n, Index row_a, Index row_b, double a, double b,
               Index plus_count) {
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix U(n, 2);
    Index assigned_plus = 0;
    for (Index i = 0; i < n; ++i) {
        if (i == row_a) {
            U(i, 0) = a;
            U(i, 1) = -a;
        } else if (i == row_b) {
            U(i, 0) = b;
            U(i, 1) = -b;
        } else if (assigned_plus < plus_count) {
            U(i, 0) = s;
            U(i, 1) = s;
            ++assigned_plus;
        } else {
            U(i, 0) = s;
            U(i, 1) = -s;
        }
    }
    return U;
}

}  // namespace

SampleSet block_corner_omega(Index n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("block_corner_omega: n must be even and >= 2");
    std::vector<SampleSet::Edge> edges;
    for (Index i = n / 2; i < n; ++i)
        for (Index j = 0; j < n / 2; ++j) edges.emplace_back(i, j);
    return SampleSet::from_edges(n, n, std::move(edges));
}

CounterexamplePair build_counterexample(Index n, const SampleSet& omega) {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("build_counterexample: n must be even and >= 8");
    if (omega.n1() != n || omega.n2() != n)
        throw std::invalid_argument("build_counterexample: Omega must be n x n");
    if (4 * omega.size() > n * n)
        throw std::invalid_argument("build_counterexample: |Omega| must be <= n^2/4");

    // The two rows with smallest degrees have observed-column union of size
    // <= 2|Omega|/n <= n/2 by counting.
    std::vector<Index> order(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Index x, Index y) {
        return omega.row_degrees()[static_cast<size_t>(x)] <
               omega.row_degrees()[static_cast<size_t>(y)];
    });
    const Index row_a = std::min(order[0], order[1]);
    const Index row_b = std::max(order[0], order[1]);

    std::set<Index> observed_cols;
    for (const auto& [i, j] : omega.edges())
        if (i == row_a || i == row_b) observed_cols.insert(j);
    if (static_cast<Index>(observed_cols.size()) > n / 2)
        throw GenerationError(
            "build_counterexample: observed-column union exceeds n/2 for the two "
            "lightest rows (counting violation: " +
            std::to_string(observed_cols.size()) + " > " + std::to_string(n / 2) + ")");

    // pad the union to exactly n/2 columns
    std::set<Index> s_prime = observed_cols;
    for (Index j = 0; j < n && static_cast<Index>(s_prime.size()) < n / 2; ++j)
        s_prime.insert(j);

    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix V(n, 2);
    for (Index j = 0; j < n; ++j) {
        V(j, 0) = s;
        V(j, 1) = s_prime.count(j) ? s : -s;
    }

    const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    const double b = std::sqrt(3.0 / (2.0 * static_cast<double>(n)));
    // exact column orthogonality needs two more +/+ rows than +/- rows among
    // the remaining n-2 (it cancels a^2 + b^2 = 2/n)
    const Matrix Ua = build_u(n, row_a, row_b, a, b, n / 2);
    const Matrix Ub = build_u(n, row_a, row_b, b, a, n / 2);

    Vector ones = Vector::Ones(2);
    LowRankFactor fa(Ua, ones, V);  // validates orthonormality
    LowRankFactor fb(Ub, ones, V);

    DenseMatrix Ma(fa.assemble());
    DenseMatrix Mb(fb.assemble());
    const double agreement =
        project_omega(DenseMatrix(Ma.mat() - Mb.mat()), omega).mat().norm();
    const double separation = (Ma.mat() - Mb.mat()).norm();

    return CounterexamplePair{std::move(Ma), std::move(Mb), omega,
                              agreement,     separation,    row_a, row_b};
}

FailureReport demonstrate_failure(const CounterexamplePair& pair,
                                  const SolverConfig& cfg, double threshold) {
    const DenseMatrix observed = project_omega(pair.Ma, pair.omega);
    SolveResult solve = solve_nuclear_norm(observed, pair.omega, cfg);
    const Matrix& X = solve.X.mat();
    const double rel_a = (X - pair.Ma.mat()).norm() / pair.Ma.mat().norm();
    const double rel_b = (X - pair.Mb.mat()).norm() / pair.Mb.mat().norm();
    const bool confirmed = !(rel_a < threshold && rel_b < threshold);
    return FailureReport{rel_a, rel_b, threshold, confirmed, std::move(solve)};
}

}  // namespace umc
