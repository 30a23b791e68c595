#ifndef TISGM_CHAIN_HPP
#define TISGM_CHAIN_HPP

#include <cstdint>
#include <vector>

#include "tisgm/spectral.hpp"

namespace tisgm {

/// Root marginal of the chain: (p_minus, p_plus) = (1, X)/(1+X) on the
/// psi alphabet.
struct RootLaw {
    double p_minus;
    double p_plus;
};

RootLaw root_law(const BoundaryLaw& law);

/// One forward-sampled ball of radius `depth`. Spins are stored doubled
/// (-3..3) in breadth-first order; the vertex at distance d holds a value
/// from the level-(d mod 3) alphabet.
struct SampledTree {
    int k;
    int depth;
    std::uint64_t seed;
    std::vector<std::int8_t> spins;  // doubled values, BFS order

    /// Index of the first vertex at the given level.
    static std::size_t level_offset(int k, int level);
    /// Number of vertices at the given level (k^level).
    static std::size_t level_size(int k, int level);
};

/// Draw the root from root_law and every child from the row of P, Q or R
/// selected by its parent's value, with the kernel cycling by parent level
/// mod 3. Bit-reproducible from the seed (splitmix64 stream).
SampledTree sample(const BoundaryLaw& law, const ScalarMapContext& ctx,
                   int depth, std::uint64_t seed);

/// Monte Carlo sublattice magnetizations: mean spin over the level classes
/// (levels == 0, 1, 2 mod 3) inside the sampled ball. Standard errors come
/// from the spread of per-tree class means across independent trees.
struct MagnetizationEstimate {
    double m0, m1, m2;
    double se0, se1, se2;
    long trees;
    int depth;
    std::uint64_t seed;
    const char* rng_id;
};

MagnetizationEstimate magnetization(const BoundaryLaw& law,
                                    const ScalarMapContext& ctx, int depth,
                                    long trees, std::uint64_t seed);

/// Exact level marginals of the chain: marginal[m] is the distribution on
/// the level-m alphabet, nu * (product of the first m kernels in the
/// P, Q, R cycle).
std::vector<std::vector<double>> exact_marginals(const BoundaryLaw& law,
                                                 const ScalarMapContext& ctx,
                                                 int depth);

/// Per-level spin-value counts aggregated over one or more sampled trees.
struct LevelHistogram {
    int k = 0;
    int depth = 0;
    long trees = 0;
    std::uint64_t seed = 0;
    /// counts[level][i] pairs with SpinAlphabets::doubled(level_of(level))[i].
    std::vector<std::vector<std::int64_t>> counts;

    void accumulate(const SampledTree& tree);
};

/// Histogram over `trees` independently seeded trees (substreams of seed).
LevelHistogram sample_histogram(const BoundaryLaw& law, const ScalarMapContext& ctx,
                                int depth, long trees, std::uint64_t seed);

} // namespace tisgm

#endif
