#include "tisgm/chain.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "tisgm/rng.hpp"

namespace tisgm {

namespace {

constexpr std::size_t kMaxVertices = 10'000'000;

std::size_t vertex_count(int k, int depth) {
    std::size_t total = 0, level = 1;
    for (int d = 0; d <= depth; ++d) {
        total += level;
        if (total > kMaxVertices) return total;
        level *= static_cast<std::size_t>(k);
    }
    return total;
}

std::span<const double> kernel_row(const TransitionSet& ts, int parent_level,
                                   int parent_index) {
    switch (parent_level % 3) {
        case 0: return ts.P[parent_index];
        case 1: return ts.Q[parent_index];
        default: return ts.R[parent_index];
    }
}

int index_in_alphabet(std::span<const int> alphabet, int doubled) {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == doubled) return static_cast<int>(i);
    }
    throw DomainError("spin value not in level alphabet");
}

} // namespace

RootLaw root_law(const BoundaryLaw& law) {
    if (!(law.X > 0.0) || !std::isfinite(law.X)) {
        throw DomainError("root_law requires X > 0");
    }
    return RootLaw{1.0 / (1.0 + law.X), law.X / (1.0 + law.X)};
}

std::size_t SampledTree::level_offset(int k, int level) {
    std::size_t off = 0, width = 1;
    for (int d = 0; d < level; ++d) {
        off += width;
        width *= static_cast<std::size_t>(k);
    }
    return off;
}

std::size_t SampledTree::level_size(int k, int level) {
    std::size_t width = 1;
    for (int d = 0; d < level; ++d) width *= static_cast<std::size_t>(k);
    return width;
}

SampledTree sample(const BoundaryLaw& law, const ScalarMapContext& ctx,
                   int depth, std::uint64_t seed) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    const int k = ctx.params.k;
    const std::size_t total = vertex_count(k, depth);
    if (total > kMaxVertices) {
        throw CapacityError("sample: ball of depth " + std::to_string(depth) +
                                " exceeds the vertex cap",
                            static_cast<double>(total),
                            static_cast<double>(kMaxVertices));
    }

    const TransitionSet ts = build_transitions(law, ctx);
    const RootLaw nu = root_law(law);

    SampledTree tree;
    tree.k = k;
    tree.depth = depth;
    tree.seed = seed;
    tree.spins.resize(total);

    SplitMix64 rng(seed);
    const double root_probs[2] = {nu.p_minus, nu.p_plus};
    std::vector<int> state_index(total);
    state_index[0] = rng.next_index(root_probs);
    tree.spins[0] = static_cast<std::int8_t>(SpinAlphabets::psi_doubled[state_index[0]]);

    std::size_t parent_begin = 0;
    for (int level = 0; level < depth; ++level) {
        const std::size_t parents = SampledTree::level_size(k, level);
        const std::size_t child_begin = parent_begin + parents;
        const auto child_alphabet =
            SpinAlphabets::doubled(SpinAlphabets::level_of(level + 1));
        for (std::size_t p = 0; p < parents; ++p) {
            const auto row = kernel_row(ts, level, state_index[parent_begin + p]);
            for (int c = 0; c < k; ++c) {
                const std::size_t child = child_begin + p * k + c;
                const int idx = rng.next_index(row);
                state_index[child] = idx;
                tree.spins[child] = static_cast<std::int8_t>(child_alphabet[idx]);
            }
        }
        parent_begin = child_begin;
    }
    return tree;
}

std::vector<std::vector<double>> exact_marginals(const BoundaryLaw& law,
                                                 const ScalarMapContext& ctx,
                                                 int depth) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    const TransitionSet ts = build_transitions(law, ctx);
    const RootLaw nu = root_law(law);

    std::vector<std::vector<double>> marginals;
    marginals.reserve(depth + 1);
    marginals.push_back({nu.p_minus, nu.p_plus});
    for (int level = 0; level < depth; ++level) {
        const auto& cur = marginals.back();
        const std::size_t ncols =
            SpinAlphabets::size(SpinAlphabets::level_of(level + 1));
        std::vector<double> next(ncols, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const auto row = kernel_row(ts, level, static_cast<int>(i));
            for (std::size_t j = 0; j < ncols; ++j) next[j] += cur[i] * row[j];
        }
        marginals.push_back(std::move(next));
    }
    return marginals;
}

void LevelHistogram::accumulate(const SampledTree& tree) {
    if (counts.empty()) {
        k = tree.k;
        depth = tree.depth;
        counts.resize(tree.depth + 1);
        for (int d = 0; d <= tree.depth; ++d) {
            counts[d].assign(SpinAlphabets::size(SpinAlphabets::level_of(d)), 0);
        }
    }
    if (tree.k != k || tree.depth != depth) {
        throw DomainError("histogram accumulation over mismatched trees");
    }
    for (int d = 0; d <= depth; ++d) {
        const auto alphabet = SpinAlphabets::doubled(SpinAlphabets::level_of(d));
        const std::size_t off = SampledTree::level_offset(k, d);
        const std::size_t n = SampledTree::level_size(k, d);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[d][index_in_alphabet(alphabet, tree.spins[off + i])];
        }
    }
    ++trees;
}

LevelHistogram sample_histogram(const BoundaryLaw& law, const ScalarMapContext& ctx,
                                int depth, long trees, std::uint64_t seed) {
    if (trees < 1) throw DomainError("trees must be >= 1");
    LevelHistogram hist;
    for (long i = 0; i < trees; ++i) {
        hist.accumulate(sample(law, ctx, depth, substream_seed(seed, i)));
    }
    hist.seed = seed;
    return hist;
}

MagnetizationEstimate magnetization(const BoundaryLaw& law,
                                    const ScalarMapContext& ctx, int depth,
                                    long trees, std::uint64_t seed) {
    if (trees < 1) throw DomainError("trees must be >= 1");
    const int k = ctx.params.k;

    // Per-tree means of the three level classes; trees are independent, so
    // the spread across trees gives honest standard errors even though
    // spins within a tree are correlated.
    double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
    for (long i = 0; i < trees; ++i) {
        const SampledTree tree = sample(law, ctx, depth, substream_seed(seed, i));
        double acc[3] = {0, 0, 0};
        long cnt[3] = {0, 0, 0};
        std::size_t v = 0;
        for (int d = 0; d <= depth; ++d) {
            const std::size_t n = SampledTree::level_size(k, d);
            for (std::size_t j = 0; j < n; ++j, ++v) {
                acc[d % 3] += SpinAlphabets::real_value(tree.spins[v]);
                ++cnt[d % 3];
            }
        }
        for (int c = 0; c < 3; ++c) {
            const double mean = cnt[c] > 0 ? acc[c] / cnt[c] : 0.0;
            sum[c] += mean;
            sumsq[c] += mean * mean;
        }
    }

    MagnetizationEstimate est{};
    double m[3], se[3];
    for (int c = 0; c < 3; ++c) {
        m[c] = sum[c] / trees;
        const double var =
            trees > 1 ? (sumsq[c] - trees * m[c] * m[c]) / (trees - 1) : 0.0;
        se[c] = std::sqrt(std::max(0.0, var) / trees);
    }
    est.m0 = m[0];
    est.m1 = m[1];
    est.m2 = m[2];
    est.se0 = se[0];
    est.se1 = se[1];
    est.se2 = se[2];
    est.trees = trees;
    est.depth = depth;
    est.seed = seed;
    est.rng_id = kRngId;
    return est;
}

} // namespace tisgm
