#ifndef TISGM_ORACLE_HPP
#define TISGM_ORACLE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tisgm/recursion.hpp"

namespace tisgm {

/// BFS bookkeeping for the ball V_depth of the rooted k-tree.
class BallIndex {
public:
    BallIndex(int k, int depth);

    int k() const { return k_; }
    int depth() const { return depth_; }
    std::size_t size() const { return offsets_.back(); }

    std::size_t level_offset(int level) const { return offsets_[level]; }
    std::size_t level_size(int level) const {
        return offsets_[level + 1] - offsets_[level];
    }
    int level(std::size_t v) const;
    std::size_t parent(std::size_t v) const;
    std::span<const int> alphabet(std::size_t v) const {
        return SpinAlphabets::doubled(SpinAlphabets::level_of(level(v)));
    }

private:
    int k_;
    int depth_;
    std::vector<std::size_t> offsets_;  // offsets_[d] = first vertex of W_d
};

/// Per-vertex field vectors on V_depth, one component per alphabet letter,
/// in the gauge where the first component of every vector is 0.
struct FieldAssignment {
    int k = 0;
    int depth = 0;
    std::vector<std::vector<double>> h;  // h[v][i], i indexes the level alphabet

    /// Constant-law fields: (0, ln X) on psi-levels, (0, -ln Y, ln Z - ln Y)
    /// on phi-levels, (0, -ln T, ln U - ln T, ln N - ln T) on upsilon-levels.
    static FieldAssignment from_law(const BoundaryLaw& law, int k, int depth);

    /// Zero fields everywhere.
    static FieldAssignment zero(int k, int depth);

    /// Fixed spins on the ring W_{depth+1} folded into effective fields on
    /// W_depth: a vertex with children carrying total doubled spin M gets
    /// the (re-gauged) vector h_i = beta*J*s_i*M/2. `ring` holds doubled
    /// spins in BFS order, k^(depth+1) entries.
    static FieldAssignment from_boundary(std::span<const std::int8_t> ring,
                                         const ScalarMapContext& ctx, int depth);
};

/// The uniform extremal ring on W_{depth+1}: all spins at the maximal
/// (sign > 0) or minimal (sign < 0) value of the level alphabet.
std::vector<std::int8_t> extremal_ring(int k, int depth, int sign);

/// Exact finite-volume measure over all configurations of V_depth, with
/// fields applied on W_depth only. Configurations are indexed mixed-radix
/// with the root as the slowest digit and W_depth as the fastest block.
struct FiniteVolumeMeasure {
    int k = 0;
    int depth = 0;
    std::vector<double> prob;          // normalized
    double log_z = 0.0;                // log partition value in the field gauge
    std::vector<int> radix;            // per vertex alphabet size
    std::vector<std::size_t> stride;   // per vertex

    int digit(std::size_t config, std::size_t v) const {
        return static_cast<int>(config / stride[v] % radix[v]);
    }

    /// Marginal distribution of a single vertex.
    std::vector<double> vertex_marginal(std::size_t v) const;
    /// Joint marginal of an ordered vertex pair, row-major (a-index major).
    std::vector<double> pair_marginal(std::size_t a, std::size_t b) const;
};

/// Enumerate and normalize. Throws CapacityError when the configuration
/// count exceeds 1e7.
FiniteVolumeMeasure exact_measure(const FieldAssignment& fields,
                                  const ScalarMapContext& ctx, int depth);

/// Raw log-weights in enumeration order (no normalization); used by the
/// Holley criterion which needs weights, not probabilities.
std::vector<double> log_weights(const FieldAssignment& fields,
                                const ScalarMapContext& ctx, int depth);

/// max over configurations of V_{depth-1} of
/// |sum_omega mu_depth(xi v omega) - mu_{depth-1}(xi)|. For fields built
/// from a constant-law solution this is the testable direction of the
/// boundary-law characterization; for arbitrary fields it is a diagnostic.
double check_compatibility(const FieldAssignment& fields,
                           const ScalarMapContext& ctx, int depth);

/// Cross-ratio K(s1,t1)K(s2,t2) / (K(s1,t2)K(s2,t1)) of the two-site
/// kernel, computed from the four kernel values. Equals
/// exp(beta*J*(s2-s1)*(t2-t1)); >= 1 iff J >= 0. Pairs must be strictly
/// ordered.
double check_tp2(std::pair<double, double> s_pair,
                 std::pair<double, double> t_pair, const ScalarMapContext& ctx);

struct HolleyReport {
    bool lattice_ok;
    double worst_lattice_margin;  // min over pairs of log lhs - log rhs
    std::size_t worst_pair_a;     // configuration indices of that pair
    std::size_t worst_pair_b;
    bool domination_ok;
    double worst_domination_margin;  // min over up-sets of E_xi - E_eta
    std::size_t pairs_checked;
    std::size_t upsets_checked;
};

/// Exhaustive Holley criterion between the boundary conditions eta <= xi
/// on W_{depth+1}: the lattice inequality
/// w^xi(s v t) * w^eta(s ^ t) >= w^eta(s) * w^xi(t) over all configuration
/// pairs, plus stochastic domination over every up-set of the volume
/// poset. Feasible for small volumes only (<= 20 configurations for the
/// up-set scan).
HolleyReport check_holley(const ScalarMapContext& ctx, int depth,
                          std::span<const std::int8_t> eta_ring,
                          std::span<const std::int8_t> xi_ring);

/// Does the kernel transform (Km)(s) = sum_t K(s,t) m(t) with parent level
/// `parent` preserve the likelihood-ratio order of the child messages?
/// Requires m, m_prime positive with m_prime/m nondecreasing.
bool check_mlr(Level parent, std::span<const double> m,
               std::span<const double> m_prime, const ScalarMapContext& ctx);

struct SandwichReport {
    bool ordering_ok;        // E_- <= E_law <= E_+ for every law and function
    double worst_ordering_margin;
    bool plus_monotone_ok;   // E_{xi+, n}[F] non-increasing in n
    bool minus_monotone_ok;  // E_{xi-, n}[F] non-decreasing in n
    double worst_monotonicity_margin;
    std::size_t functions_tested;
};

/// Sandwich test at volume V_depth: the measures with extremal +/- rings
/// bound each law-field measure and `random_boundaries` measures with
/// random boundary rings, for every tested increasing indicator (all
/// up-sets of the root and root-pair projections, plus `random_functions`
/// random monotone indicators on the full volume). The extremal
/// expectations are also monotone in the volume. Random rings stand in
/// for arbitrary boundary conditions, the desk-scale face of "every Gibbs
/// measure is sandwiched".
SandwichReport check_sandwich(const ScalarMapContext& ctx, int depth,
                              std::span<const BoundaryLaw> laws,
                              std::uint64_t seed, int random_functions = 1000,
                              int random_boundaries = 20);

} // namespace tisgm

#endif
