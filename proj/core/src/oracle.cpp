#include "tisgm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "tisgm/rng.hpp"

namespace tisgm {

namespace {

constexpr double kConfigCap = 1e7;

// Neumaier-compensated accumulation; the enumeration sums must stay exact
// to ~1 ulp for the 1e-12 normalization invariant at 1e6+ terms.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

double half_log_theta(const ScalarMapContext& ctx) {
    // beta*J*s*t with doubled spins ds, dt is (ln theta / 2) * ds * dt.
    return 0.5 * std::log(ctx.th);
}

} // namespace

BallIndex::BallIndex(int k, int depth) : k_(k), depth_(depth) {
    if (k < 1) throw DomainError("tree order k must be >= 1");
    if (depth < 0) throw DomainError("depth must be >= 0");
    offsets_.resize(depth + 2);
    offsets_[0] = 0;
    std::size_t width = 1;
    for (int d = 0; d <= depth; ++d) {
        offsets_[d + 1] = offsets_[d] + width;
        width *= static_cast<std::size_t>(k);
    }
}

int BallIndex::level(std::size_t v) const {
    for (int d = 0; d <= depth_; ++d) {
        if (v < offsets_[d + 1]) return d;
    }
    throw DomainError("vertex out of range");
}

std::size_t BallIndex::parent(std::size_t v) const {
    if (v == 0) throw DomainError("root has no parent");
    const int d = level(v);
    const std::size_t pos = v - offsets_[d];
    return offsets_[d - 1] + pos / static_cast<std::size_t>(k_);
}

FieldAssignment FieldAssignment::from_law(const BoundaryLaw& law, int k,
                                          int depth) {
    const std::array comps{law.X, law.Y, law.Z, law.T, law.U, law.N};
    for (double c : comps) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw DomainError("law components must be positive and finite");
        }
    }
    const double lX = std::log(law.X), lY = std::log(law.Y), lZ = std::log(law.Z);
    const double lT = std::log(law.T), lU = std::log(law.U), lN = std::log(law.N);
    const std::vector<double> psi{0.0, lX};
    const std::vector<double> phi{0.0, -lY, lZ - lY};
    const std::vector<double> ups{0.0, -lT, lU - lT, lN - lT};

    const BallIndex ball(k, depth);
    FieldAssignment fa;
    fa.k = k;
    fa.depth = depth;
    fa.h.resize(ball.size());
    for (std::size_t v = 0; v < ball.size(); ++v) {
        switch (SpinAlphabets::level_of(ball.level(v))) {
            case Level::psi: fa.h[v] = psi; break;
            case Level::phi: fa.h[v] = phi; break;
            case Level::upsilon: fa.h[v] = ups; break;
        }
    }
    return fa;
}

FieldAssignment FieldAssignment::zero(int k, int depth) {
    const BallIndex ball(k, depth);
    FieldAssignment fa;
    fa.k = k;
    fa.depth = depth;
    fa.h.resize(ball.size());
    for (std::size_t v = 0; v < ball.size(); ++v) {
        fa.h[v].assign(ball.alphabet(v).size(), 0.0);
    }
    return fa;
}

FieldAssignment FieldAssignment::from_boundary(std::span<const std::int8_t> ring,
                                               const ScalarMapContext& ctx,
                                               int depth) {
    const int k = ctx.params.k;
    const BallIndex ball(k, depth);
    const std::size_t ring_size =
        ball.level_size(depth) * static_cast<std::size_t>(k);
    if (ring.size() != ring_size) {
        throw DomainError("boundary ring must have k^(depth+1) spins");
    }
    const auto ring_alpha =
        SpinAlphabets::doubled(SpinAlphabets::level_of(depth + 1));
    for (std::int8_t s : ring) {
        if (std::find(ring_alpha.begin(), ring_alpha.end(), s) == ring_alpha.end()) {
            throw DomainError("boundary spin not in the ring level alphabet");
        }
    }

    FieldAssignment fa = zero(k, depth);
    const double c = half_log_theta(ctx);
    const std::size_t w_off = ball.level_offset(depth);
    const auto w_alpha = SpinAlphabets::doubled(SpinAlphabets::level_of(depth));
    for (std::size_t p = 0; p < ball.level_size(depth); ++p) {
        int ring_total = 0;
        for (int cidx = 0; cidx < k; ++cidx) {
            ring_total += ring[p * static_cast<std::size_t>(k) + cidx];
        }
        auto& vec = fa.h[w_off + p];
        for (std::size_t i = 0; i < w_alpha.size(); ++i) {
            vec[i] = c * w_alpha[i] * ring_total;
        }
        // keep the first-component-zero gauge
        const double base = vec[0];
        for (double& e : vec) e -= base;
    }
    return fa;
}

std::vector<std::int8_t> extremal_ring(int k, int depth, int sign) {
    const BallIndex ball(k, depth);
    const auto alpha = SpinAlphabets::doubled(SpinAlphabets::level_of(depth + 1));
    const std::int8_t value =
        static_cast<std::int8_t>(sign > 0 ? alpha.back() : alpha.front());
    return std::vector<std::int8_t>(
        ball.level_size(depth) * static_cast<std::size_t>(k), value);
}

namespace {

struct Enumeration {
    BallIndex ball;
    std::vector<int> radix;
    std::vector<std::size_t> stride;
    std::vector<std::size_t> parent;   // parent[v] for v >= 1
    std::vector<const int*> alphabet;  // doubled values per vertex
    std::size_t total;

    explicit Enumeration(int k, int depth) : ball(k, depth) {
        const std::size_t n = ball.size();
        radix.resize(n);
        stride.resize(n);
        parent.resize(n);
        alphabet.resize(n);
        double count = 1.0;
        for (std::size_t v = 0; v < n; ++v) {
            const auto a = ball.alphabet(v);
            radix[v] = static_cast<int>(a.size());
            alphabet[v] = a.data();
            if (v > 0) parent[v] = ball.parent(v);
            count *= radix[v];
        }
        if (count > kConfigCap) {
            char msg[96];
            std::snprintf(msg, sizeof msg,
                          "exact enumeration needs %.3g configurations, "
                          "above the %.0e cap",
                          count, kConfigCap);
            throw CapacityError(msg, count, kConfigCap);
        }
        stride[n - 1] = 1;
        for (std::size_t v = n - 1; v > 0; --v) {
            stride[v - 1] = stride[v] * static_cast<std::size_t>(radix[v]);
        }
        total = stride[0] * static_cast<std::size_t>(radix[0]);
    }
};

std::vector<double> raw_log_weights(const Enumeration& e,
                                    const FieldAssignment& fields,
                                    const ScalarMapContext& ctx) {
    if (fields.k != e.ball.k() || fields.depth < e.ball.depth()) {
        throw DomainError("field assignment does not cover the requested ball");
    }
    const double c = half_log_theta(ctx);
    const std::size_t n = e.ball.size();
    const std::size_t w_off = e.ball.level_offset(e.ball.depth());

    std::vector<int> digits(n, 0);
    std::vector<double> logw(e.total);
    for (std::size_t cfg = 0; cfg < e.total; ++cfg) {
        double acc = 0.0;
        for (std::size_t v = 1; v < n; ++v) {
            acc += c * e.alphabet[v][digits[v]] *
                   e.alphabet[e.parent[v]][digits[e.parent[v]]];
        }
        for (std::size_t v = w_off; v < n; ++v) {
            acc += fields.h[v][digits[v]];
        }
        logw[cfg] = acc;
        // increment mixed-radix counter (last vertex fastest)
        for (std::size_t v = n; v-- > 0;) {
            if (++digits[v] < e.radix[v]) break;
            digits[v] = 0;
        }
    }
    return logw;
}

} // namespace

std::vector<double> FiniteVolumeMeasure::vertex_marginal(std::size_t v) const {
    std::vector<double> out(radix[v], 0.0);
    for (std::size_t cfg = 0; cfg < prob.size(); ++cfg) {
        out[digit(cfg, v)] += prob[cfg];
    }
    return out;
}

std::vector<double> FiniteVolumeMeasure::pair_marginal(std::size_t a,
                                                       std::size_t b) const {
    std::vector<double> out(static_cast<std::size_t>(radix[a]) * radix[b], 0.0);
    for (std::size_t cfg = 0; cfg < prob.size(); ++cfg) {
        out[static_cast<std::size_t>(digit(cfg, a)) * radix[b] + digit(cfg, b)] +=
            prob[cfg];
    }
    return out;
}

FiniteVolumeMeasure exact_measure(const FieldAssignment& fields,
                                  const ScalarMapContext& ctx, int depth) {
    const Enumeration e(ctx.params.k, depth);
    std::vector<double> logw = raw_log_weights(e, fields, ctx);

    const double m = *std::max_element(logw.begin(), logw.end());
    CompensatedSum z;
    for (double& lw : logw) {
        lw = std::exp(lw - m);
        z.add(lw);
    }
    const double zval = z.value();

    FiniteVolumeMeasure mu;
    mu.k = ctx.params.k;
    mu.depth = depth;
    mu.log_z = m + std::log(zval);
    mu.radix = e.radix;
    mu.stride = e.stride;
    mu.prob = std::move(logw);
    for (double& p : mu.prob) p /= zval;
    return mu;
}

std::vector<double> log_weights(const FieldAssignment& fields,
                                const ScalarMapContext& ctx, int depth) {
    const Enumeration e(ctx.params.k, depth);
    return raw_log_weights(e, fields, ctx);
}

double check_compatibility(const FieldAssignment& fields,
                           const ScalarMapContext& ctx, int depth) {
    if (depth < 1) throw DomainError("compatibility needs depth >= 1");
    const FiniteVolumeMeasure outer = exact_measure(fields, ctx, depth);
    const FiniteVolumeMeasure inner = exact_measure(fields, ctx, depth - 1);

    // Root-slowest indexing makes the W_depth spins one contiguous block:
    // marginalizing is summing blocks of size `block`.
    const std::size_t block = outer.prob.size() / inner.prob.size();
    double worst = 0.0;
    for (std::size_t pre = 0; pre < inner.prob.size(); ++pre) {
        CompensatedSum s;
        const std::size_t base = pre * block;
        for (std::size_t i = 0; i < block; ++i) s.add(outer.prob[base + i]);
        worst = std::max(worst, std::abs(s.value() - inner.prob[pre]));
    }
    return worst;
}

double check_tp2(std::pair<double, double> s_pair,
                 std::pair<double, double> t_pair, const ScalarMapContext& ctx) {
    const auto [s1, s2] = s_pair;
    const auto [t1, t2] = t_pair;
    if (!(s1 < s2) || !(t1 < t2)) {
        throw DomainError("check_tp2 requires strictly ordered pairs");
    }
    const double bj = 2.0 * std::log(ctx.th);  // beta*J
    const auto kernel = [bj](double s, double t) { return std::exp(bj * s * t); };
    return kernel(s1, t1) * kernel(s2, t2) / (kernel(s1, t2) * kernel(s2, t1));
}

HolleyReport check_holley(const ScalarMapContext& ctx, int depth,
                          std::span<const std::int8_t> eta_ring,
                          std::span<const std::int8_t> xi_ring) {
    if (eta_ring.size() != xi_ring.size()) {
        throw DomainError("boundary rings must have equal size");
    }
    for (std::size_t i = 0; i < eta_ring.size(); ++i) {
        if (eta_ring[i] > xi_ring[i]) {
            throw DomainError("check_holley requires eta <= xi coordinatewise");
        }
    }

    const Enumeration e(ctx.params.k, depth);
    if (e.total > 20) {
        throw CapacityError(
            "check_holley: up-set scan is exhaustive only for <= 20 "
            "configurations",
            static_cast<double>(e.total), 20.0);
    }
    const int n_cfg = static_cast<int>(e.total);
    const std::size_t nv = e.ball.size();

    const FieldAssignment f_eta = FieldAssignment::from_boundary(eta_ring, ctx, depth);
    const FieldAssignment f_xi = FieldAssignment::from_boundary(xi_ring, ctx, depth);
    const std::vector<double> lw_eta = raw_log_weights(e, f_eta, ctx);
    const std::vector<double> lw_xi = raw_log_weights(e, f_xi, ctx);

    // digit matrix for joins/meets and the cover relation
    std::vector<int> digits(static_cast<std::size_t>(n_cfg) * nv);
    for (int cfg = 0; cfg < n_cfg; ++cfg) {
        for (std::size_t v = 0; v < nv; ++v) {
            digits[cfg * nv + v] =
                static_cast<int>(cfg / e.stride[v] % e.radix[v]);
        }
    }
    const auto config_of = [&](const std::vector<int>& d) {
        std::size_t cfg = 0;
        for (std::size_t v = 0; v < nv; ++v) cfg += d[v] * e.stride[v];
        return cfg;
    };

    HolleyReport rep{};
    rep.lattice_ok = true;
    rep.worst_lattice_margin = 1e300;
    std::vector<int> join(nv), meet(nv);
    for (int a = 0; a < n_cfg; ++a) {
        for (int b = 0; b < n_cfg; ++b) {
            for (std::size_t v = 0; v < nv; ++v) {
                const int da = digits[a * nv + v], db = digits[b * nv + v];
                join[v] = std::max(da, db);
                meet[v] = std::min(da, db);
            }
            const double lhs = lw_xi[config_of(join)] + lw_eta[config_of(meet)];
            const double rhs = lw_eta[a] + lw_xi[b];
            if (lhs - rhs < rep.worst_lattice_margin) {
                rep.worst_lattice_margin = lhs - rhs;
                rep.worst_pair_a = static_cast<std::size_t>(a);
                rep.worst_pair_b = static_cast<std::size_t>(b);
            }
            ++rep.pairs_checked;
        }
    }
    rep.lattice_ok = rep.worst_lattice_margin >= -1e-9;

    // Exhaustive stochastic domination: P_eta(S) <= P_xi(S) for every
    // up-set S of the configuration poset.
    const FiniteVolumeMeasure mu_eta = exact_measure(f_eta, ctx, depth);
    const FiniteVolumeMeasure mu_xi = exact_measure(f_xi, ctx, depth);

    std::vector<std::uint32_t> succ(n_cfg, 0);  // covers: one digit bumped
    for (int cfg = 0; cfg < n_cfg; ++cfg) {
        for (std::size_t v = 0; v < nv; ++v) {
            if (digits[cfg * nv + v] + 1 < e.radix[v]) {
                succ[cfg] |= 1u << (cfg + e.stride[v]);
            }
        }
    }
    rep.domination_ok = true;
    rep.worst_domination_margin = 1e300;
    const std::uint32_t n_subsets = 1u << n_cfg;
    for (std::uint32_t set = 0; set < n_subsets; ++set) {
        bool upset = true;
        for (int cfg = 0; cfg < n_cfg && upset; ++cfg) {
            if ((set >> cfg) & 1u) {
                if ((succ[cfg] & ~set) != 0) upset = false;
            }
        }
        if (!upset) continue;
        double pe = 0.0, px = 0.0;
        for (int cfg = 0; cfg < n_cfg; ++cfg) {
            if ((set >> cfg) & 1u) {
                pe += mu_eta.prob[cfg];
                px += mu_xi.prob[cfg];
            }
        }
        rep.worst_domination_margin =
            std::min(rep.worst_domination_margin, px - pe);
        ++rep.upsets_checked;
    }
    rep.domination_ok = rep.worst_domination_margin >= -1e-12;
    return rep;
}

bool check_mlr(Level parent, std::span<const double> m,
               std::span<const double> m_prime, const ScalarMapContext& ctx) {
    const Level child = static_cast<Level>((static_cast<int>(parent) + 1) % 3);
    const auto pa = SpinAlphabets::doubled(parent);
    const auto ca = SpinAlphabets::doubled(child);
    if (m.size() != ca.size() || m_prime.size() != ca.size()) {
        throw DomainError("message length must match the child alphabet");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(m[i] > 0.0) || !(m_prime[i] > 0.0)) {
            throw DomainError("messages must be strictly positive");
        }
    }
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        // require m_prime/m nondecreasing, cross-multiplied
        if (m_prime[i] * m[i + 1] > m_prime[i + 1] * m[i] * (1.0 + 1e-12)) {
            throw DomainError("messages are not likelihood-ratio ordered");
        }
    }

    const double c = half_log_theta(ctx);
    std::vector<double> km(pa.size()), kmp(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < ca.size(); ++j) {
            const double kij = std::exp(c * pa[i] * ca[j]);
            a += kij * m[j];
            b += kij * m_prime[j];
        }
        km[i] = a;
        kmp[i] = b;
    }
    for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
        if (kmp[i] * km[i + 1] > kmp[i + 1] * km[i] * (1.0 + 1e-12)) {
            return false;
        }
    }
    return true;
}

namespace {

// F = indicator of the union of up-cones of `cones` configurations,
// evaluated against a precomputed digit matrix.
double upcone_expectation(const FiniteVolumeMeasure& mu,
                          const std::vector<std::int8_t>& digit_matrix,
                          std::size_t nv,
                          const std::vector<std::vector<std::int8_t>>& cones) {
    double acc = 0.0;
    for (std::size_t cfg = 0; cfg < mu.prob.size(); ++cfg) {
        const std::int8_t* d = digit_matrix.data() + cfg * nv;
        bool hit = false;
        for (const auto& cone : cones) {
            bool ge = true;
            for (std::size_t v = 0; v < nv; ++v) {
                if (d[v] < cone[v]) {
                    ge = false;
                    break;
                }
            }
            if (ge) {
                hit = true;
                break;
            }
        }
        if (hit) acc += mu.prob[cfg];
    }
    return acc;
}

// All up-sets of the product-of-chains poset on the given radices,
// as index sets over the mixed-radix enumeration (small cells only).
std::vector<std::vector<int>> all_upsets(std::span<const int> radices) {
    int n = 1;
    for (int r : radices) n *= r;
    std::vector<std::size_t> stride(radices.size());
    stride[radices.size() - 1] = 1;
    for (std::size_t v = radices.size() - 1; v > 0; --v) {
        stride[v - 1] = stride[v] * radices[v];
    }
    std::vector<std::uint64_t> succ(n, 0);
    for (int cell = 0; cell < n; ++cell) {
        for (std::size_t v = 0; v < radices.size(); ++v) {
            if (static_cast<int>(cell / stride[v] % radices[v]) + 1 < radices[v]) {
                succ[cell] |= 1ull << (cell + stride[v]);
            }
        }
    }
    std::vector<std::vector<int>> upsets;
    for (std::uint64_t set = 1; set + 1 < (1ull << n); ++set) {  // skip trivial
        bool ok = true;
        for (int cell = 0; cell < n && ok; ++cell) {
            if ((set >> cell) & 1ull) {
                if ((succ[cell] & ~set) != 0) ok = false;
            }
        }
        if (!ok) continue;
        std::vector<int> cells;
        for (int cell = 0; cell < n; ++cell) {
            if ((set >> cell) & 1ull) cells.push_back(cell);
        }
        upsets.push_back(std::move(cells));
    }
    return upsets;
}

} // namespace

SandwichReport check_sandwich(const ScalarMapContext& ctx, int depth,
                              std::span<const BoundaryLaw> laws,
                              std::uint64_t seed, int random_functions,
                              int random_boundaries) {
    if (depth < 1) throw DomainError("check_sandwich needs depth >= 1");
    if (laws.empty()) throw DomainError("check_sandwich needs at least one law");
    const int k = ctx.params.k;

    // Extremal-ring measures for every volume up to `depth` (monotonicity
    // in the volume), law-field and random-boundary measures at the full
    // volume.
    std::vector<FiniteVolumeMeasure> mu_minus, mu_plus;
    for (int n = 1; n <= depth; ++n) {
        const auto minus_ring = extremal_ring(k, n, -1);
        const auto plus_ring = extremal_ring(k, n, +1);
        mu_minus.push_back(exact_measure(
            FieldAssignment::from_boundary(minus_ring, ctx, n), ctx, n));
        mu_plus.push_back(exact_measure(
            FieldAssignment::from_boundary(plus_ring, ctx, n), ctx, n));
    }
    std::vector<FiniteVolumeMeasure> mu_laws;
    for (const BoundaryLaw& law : laws) {
        mu_laws.push_back(exact_measure(
            FieldAssignment::from_law(law, k, depth), ctx, depth));
    }
    SplitMix64 ring_rng(mix64(seed ^ 0x53616e6477696368ull));
    const auto ring_alpha =
        SpinAlphabets::doubled(SpinAlphabets::level_of(depth + 1));
    for (int r = 0; r < random_boundaries; ++r) {
        auto ring = extremal_ring(k, depth, -1);
        for (auto& s : ring) {
            s = static_cast<std::int8_t>(
                ring_alpha[ring_rng.next() % ring_alpha.size()]);
        }
        mu_laws.push_back(exact_measure(
            FieldAssignment::from_boundary(ring, ctx, depth), ctx, depth));
    }

    SandwichReport rep{};
    rep.ordering_ok = true;
    rep.worst_ordering_margin = 1e300;
    rep.plus_monotone_ok = true;
    rep.minus_monotone_ok = true;
    rep.worst_monotonicity_margin = 1e300;

    const auto note_order = [&](double lo, double mid, double hi) {
        rep.worst_ordering_margin =
            std::min({rep.worst_ordering_margin, mid - lo, hi - mid});
        ++rep.functions_tested;
    };

    // (a) root projection: the single nontrivial up-set {+1/2}
    {
        const auto e_of = [&](const FiniteVolumeMeasure& mu) {
            return mu.vertex_marginal(0)[1];
        };
        for (const auto& mu : mu_laws) {
            note_order(e_of(mu_minus.back()), e_of(mu), e_of(mu_plus.back()));
        }
        for (int n = 1; n < depth; ++n) {
            const double dplus = e_of(mu_plus[n - 1]) - e_of(mu_plus[n]);
            const double dminus = e_of(mu_minus[n]) - e_of(mu_minus[n - 1]);
            rep.worst_monotonicity_margin =
                std::min({rep.worst_monotonicity_margin, dplus, dminus});
        }
    }

    // (b) every up-set of the (root, first-child) projection
    {
        const std::array<int, 2> radices{
            static_cast<int>(SpinAlphabets::size(Level::psi)),
            static_cast<int>(SpinAlphabets::size(Level::phi))};
        const auto upsets = all_upsets(radices);
        const auto e_of = [&](const FiniteVolumeMeasure& mu,
                              const std::vector<int>& cells) {
            const auto joint = mu.pair_marginal(0, 1);
            double acc = 0.0;
            for (int cell : cells) acc += joint[cell];
            return acc;
        };
        for (const auto& cells : upsets) {
            for (const auto& mu : mu_laws) {
                note_order(e_of(mu_minus.back(), cells), e_of(mu, cells),
                           e_of(mu_plus.back(), cells));
            }
            for (int n = 1; n < depth; ++n) {
                const double dplus =
                    e_of(mu_plus[n - 1], cells) - e_of(mu_plus[n], cells);
                const double dminus =
                    e_of(mu_minus[n], cells) - e_of(mu_minus[n - 1], cells);
                rep.worst_monotonicity_margin =
                    std::min({rep.worst_monotonicity_margin, dplus, dminus});
            }
        }
    }

    // (c) random monotone indicators on the full volume (up-cone unions)
    {
        const BallIndex ball(k, depth);
        const std::size_t nv = ball.size();
        const FiniteVolumeMeasure& ref = mu_plus.back();
        std::vector<std::int8_t> digit_matrix(ref.prob.size() * nv);
        for (std::size_t cfg = 0; cfg < ref.prob.size(); ++cfg) {
            for (std::size_t v = 0; v < nv; ++v) {
                digit_matrix[cfg * nv + v] =
                    static_cast<std::int8_t>(ref.digit(cfg, v));
            }
        }
        SplitMix64 rng(seed);
        for (int fn = 0; fn < random_functions; ++fn) {
            const int n_cones = 1 + static_cast<int>(rng.next() % 4);
            std::vector<std::vector<std::int8_t>> cones(n_cones);
            for (auto& cone : cones) {
                cone.resize(nv);
                for (std::size_t v = 0; v < nv; ++v) {
                    cone[v] = static_cast<std::int8_t>(rng.next() %
                                                       ref.radix[v]);
                }
            }
            const double lo =
                upcone_expectation(mu_minus.back(), digit_matrix, nv, cones);
            const double hi =
                upcone_expectation(mu_plus.back(), digit_matrix, nv, cones);
            for (const auto& mu : mu_laws) {
                note_order(lo, upcone_expectation(mu, digit_matrix, nv, cones), hi);
            }
        }
    }

    rep.ordering_ok = rep.worst_ordering_margin >= -1e-12;
    rep.plus_monotone_ok = rep.minus_monotone_ok =
        rep.worst_monotonicity_margin >= -1e-12;
    return rep;
}

} // namespace tisgm
