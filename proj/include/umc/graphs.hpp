#pragma once

#include "umc/types.hpp"

#include <cstdint>
#include <optional>

namespace umc {

/// Spectral audit of a sampling graph against G1/G2 and the Ramanujan bound.
struct SpectrumReport {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double relative_gap = 0.0;   // 1 - sigma2/sigma1
    double measured_C = 0.0;     // sigma2 / sqrt(|Omega|/n1)
    bool is_row_regular = false;
    bool is_col_regular = false;
    std::optional<Index> d;      // row degree when bi-regular
    bool ramanujan = false;      // regular and sigma2 <= 2*sqrt(d-1)
    double g1_residual = 0.0;    // ||G*1 - dbar*1||_2, 0 iff row-regular
};

struct BlockModelParams {
    Index n1 = 0, n2 = 0;
    double p = 0.0;  // intra-cluster edge probability
    double q = 0.0;  // inter-cluster edge probability
    uint64_t seed = 0;
};

/// Random bipartite d-regular graph on n+n vertices: union of d random
/// perfect matchings. A matching colliding with already-placed edges is
/// repaired by random transpositions; if a matching cannot be repaired it
/// is resampled, with a total budget of 10*d matchings before giving up
/// with GenerationError. Output is exactly bi-regular.
SampleSet gen_random_d_regular(Index n, Index d, uint64_t seed);

/// Erdos-Renyi: each pair included independently with probability p.
/// Throws GenerationError if the draw comes out empty.
SampleSet gen_erdos_renyi(Index n1, Index n2, double p, uint64_t seed);

/// Removes every row with degree > factor*(|Omega|/n1) and every column with
/// degree > factor*(|Omega|/n2); thresholds are computed from the input in a
/// single pass. Returns the reduced set on the same index space.
SampleSet trim(const SampleSet& omega, double factor);

/// Two-block stochastic model: both sides split into halves (first half
/// floor(n/2)); same-half pairs drawn with probability p, cross-half with q.
SampleSet gen_block_model(const BlockModelParams& params);

/// Dense-SVD spectrum of the biadjacency matrix. Throws on empty Omega.
SpectrumReport spectrum(const SampleSet& omega);

}  // namespace umc
