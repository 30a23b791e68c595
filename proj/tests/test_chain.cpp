#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tisgm/chain.hpp"
#include "tisgm/rng.hpp"
#include "tisgm/solver.hpp"

using namespace tisgm;

TEST_CASE("root law normalization") {
    const RootLaw a = root_law(BoundaryLaw{1, 1, 1, 1, 1, 1});
    CHECK(a.p_minus == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a.p_plus == doctest::Approx(0.5).epsilon(1e-15));

    const RootLaw b = root_law(BoundaryLaw{3, 1, 1, 1, 1, 1});
    CHECK(b.p_minus == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(b.p_plus == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("stationarity nu*H = nu at the disordered law") {
    // Only the symmetric law has a level-independent psi marginal: the
    // root of the semi-infinite tree has no parent, so for the ordered
    // laws the level-3 marginal nu*H genuinely differs from nu (the exact
    // enumeration cross-check lives in the oracle tests).
    for (double theta : {1.2, 1.6, 2.5}) {
        const ScalarMapContext ctx(make_params(theta, 2));
        const BoundaryLaw law = disordered_law(ctx);
        const TransitionSet ts = build_transitions(law, ctx);
        const RootLaw nu = root_law(law);
        const double nu0 = nu.p_minus * ts.H[0][0] + nu.p_plus * ts.H[1][0];
        const double nu1 = nu.p_minus * ts.H[0][1] + nu.p_plus * ts.H[1][1];
        CHECK(std::abs(nu0 - nu.p_minus) <= 1e-12);
        CHECK(std::abs(nu1 - nu.p_plus) <= 1e-12);
    }
}

TEST_CASE("psi marginals converge to the stationary law of H along levels") {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const auto fps = find_fixed_points(ctx);
    REQUIRE(fps.size() == 3);
    for (const auto& fp : fps) {
        const BoundaryLaw law = law_from_x(fp.x_star, ctx);
        const TransitionSet ts = build_transitions(law, ctx);
        const double pi_plus = ts.H[0][1] / (ts.H[0][1] + ts.H[1][0]);
        const auto m = exact_marginals(law, ctx, 30);
        CHECK(std::abs(m[30][1] - pi_plus) <= 1e-6);
        // contraction by |lambda2| per period
        const double d3 = std::abs(m[3][1] - pi_plus);
        const double d6 = std::abs(m[6][1] - pi_plus);
        if (d3 > 1e-12) {
            CHECK(d6 / d3 <= std::abs(ts.lambda2) + 1e-9);
        }
    }
}

TEST_CASE("exact marginals") {
    SUBCASE("level 0 is the root law") {
        const ScalarMapContext ctx(make_params(1.6, 2));
        const BoundaryLaw law = disordered_law(ctx);
        const auto m = exact_marginals(law, ctx, 0);
        REQUIRE(m.size() == 1);
        CHECK(m[0][0] == doctest::Approx(root_law(law).p_minus).epsilon(1e-15));
    }
    SUBCASE("period-3 return to nu at the disordered law") {
        const ScalarMapContext ctx(make_params(1.6, 2));
        const BoundaryLaw law = disordered_law(ctx);
        const auto m = exact_marginals(law, ctx, 6);
        const RootLaw nu = root_law(law);
        for (int lvl : {3, 6}) {
            CHECK(std::abs(m[lvl][0] - nu.p_minus) <= 1e-10);
            CHECK(std::abs(m[lvl][1] - nu.p_plus) <= 1e-10);
        }
    }
    SUBCASE("theta=1 gives uniform marginals at every level") {
        const ScalarMapContext ctx(make_params(1.0, 3));
        const auto m = exact_marginals(disordered_law(ctx), ctx, 5);
        for (const auto& dist : m) {
            for (double p : dist) {
                CHECK(p == doctest::Approx(1.0 / dist.size()).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("sampling is reproducible and respects the alphabets") {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const BoundaryLaw law = disordered_law(ctx);
    const SampledTree a = sample(law, ctx, 5, 42);
    const SampledTree b = sample(law, ctx, 5, 42);
    CHECK(a.spins == b.spins);

    const SampledTree c = sample(law, ctx, 5, 43);
    CHECK(a.spins != c.spins);

    for (int d = 0; d <= a.depth; ++d) {
        const auto alpha = SpinAlphabets::doubled(SpinAlphabets::level_of(d));
        const std::size_t off = SampledTree::level_offset(a.k, d);
        for (std::size_t i = 0; i < SampledTree::level_size(a.k, d); ++i) {
            const std::int8_t s = a.spins[off + i];
            CHECK(std::find(alpha.begin(), alpha.end(), s) != alpha.end());
        }
    }
    CHECK(a.spins.size() == 1 + 2 + 4 + 8 + 16 + 32);
}

TEST_CASE("root draw frequencies pass a chi-square check") {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const auto fps = find_fixed_points(ctx);
    REQUIRE(fps.size() == 3);
    const BoundaryLaw law = law_from_x(fps.back().x_star, ctx);
    const RootLaw nu = root_law(law);

    const long n = 100000;
    const LevelHistogram hist = sample_histogram(law, ctx, 0, n, 2024);
    const double expected_minus = n * nu.p_minus;
    const double expected_plus = n * nu.p_plus;
    const double chi2 =
        std::pow(hist.counts[0][0] - expected_minus, 2) / expected_minus +
        std::pow(hist.counts[0][1] - expected_plus, 2) / expected_plus;
    CHECK(chi2 < 10.828);  // chi-square(1) at p = 0.001
}

TEST_CASE("empirical level marginals track the exact ones") {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const auto fps = find_fixed_points(ctx);
    const BoundaryLaw law = law_from_x(fps.back().x_star, ctx);
    const auto exact = exact_marginals(law, ctx, 3);

    const long trees = 20000;
    const LevelHistogram hist = sample_histogram(law, ctx, 3, trees, 99);
    for (int d = 0; d <= 3; ++d) {
        const double n_level = static_cast<double>(trees) *
                               SampledTree::level_size(2, d);
        for (std::size_t i = 0; i < exact[d].size(); ++i) {
            const double phat = hist.counts[d][i] / n_level;
            // conservative sigma: vertices within a tree are correlated,
            // i.i.d. sigma understates the error, so use 6x
            const double sigma = std::sqrt(
                std::max(exact[d][i] * (1.0 - exact[d][i]), 1e-12) /
                (static_cast<double>(trees)));
            CHECK(std::abs(phat - exact[d][i]) <= 6.0 * sigma);
        }
    }
}

TEST_CASE("disordered-law histograms are symmetric under global sign flip") {
    const ScalarMapContext ctx(make_params(2.0, 2));
    const LevelHistogram hist =
        sample_histogram(disordered_law(ctx), ctx, 3, 30000, 13);
    for (int d = 0; d <= 3; ++d) {
        const auto& counts = hist.counts[d];
        const std::size_t n = counts.size();
        for (std::size_t i = 0; i < n / 2; ++i) {
            // two-sample z between the count of value v and of -v
            const double a = static_cast<double>(counts[i]);
            const double b = static_cast<double>(counts[n - 1 - i]);
            const double z = (a - b) / std::sqrt(std::max(a + b, 1.0));
            CHECK(std::abs(z) <= 5.0);
        }
    }
}

TEST_CASE("theta=1 level-1 marginals are uniform") {
    const ScalarMapContext ctx(make_params(1.0, 2));
    const LevelHistogram hist =
        sample_histogram(BoundaryLaw{1, 1, 1, 1, 1, 1}, ctx, 2, 30000, 7);
    const double n1 = 30000.0 * 2;
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(hist.counts[1][i] / n1 - 1.0 / 3) <= 0.01);
    }
}

TEST_CASE("magnetization estimates") {
    const ScalarMapContext ctx(make_params(1.6, 2));
    const auto fps = find_fixed_points(ctx);
    REQUIRE(fps.size() == 3);

    SUBCASE("disordered law is symmetric") {
        const MagnetizationEstimate est =
            magnetization(disordered_law(ctx), ctx, 3, 20000, 5);
        CHECK(std::abs(est.m0) <= 3.0 * est.se0);
        CHECK(std::abs(est.m1) <= 3.0 * est.se1);
        CHECK(std::abs(est.m2) <= 3.0 * est.se2);
        CHECK(est.rng_id == std::string("splitmix64"));
    }
    SUBCASE("plus law magnetizes upward, minus law mirrors it") {
        const MagnetizationEstimate plus =
            magnetization(law_from_x(fps.back().x_star, ctx), ctx, 3, 20000, 5);
        const MagnetizationEstimate minus =
            magnetization(law_from_x(fps.front().x_star, ctx), ctx, 3, 20000, 5);
        CHECK(plus.m0 > 0.0);
        CHECK(plus.m0 > minus.m0);
        CHECK(std::abs(plus.m0 + minus.m0) <=
              3.0 * std::sqrt(plus.se0 * plus.se0 + minus.se0 * minus.se0));
    }
    SUBCASE("theta=1 is symmetric") {
        const ScalarMapContext c1(make_params(1.0, 2));
        const MagnetizationEstimate est =
            magnetization(disordered_law(c1), c1, 3, 20000, 5);
        CHECK(std::abs(est.m0) <= 3.0 * est.se0);
        CHECK(std::abs(est.m1) <= 3.0 * est.se1);
        CHECK(std::abs(est.m2) <= 3.0 * est.se2);
    }
}

TEST_CASE("magnetization ranges") {
    SplitMix64 rng(83);
    for (int i = 0; i < 10; ++i) {
        const double theta = 0.5 + 3.0 * rng.next_double();
        const ScalarMapContext ctx(make_params(theta, 2));
        const MagnetizationEstimate est =
            magnetization(disordered_law(ctx), ctx, 2, 500, rng.next());
        CHECK(est.m0 >= -0.5);
        CHECK(est.m0 <= 0.5);
        CHECK(est.m1 >= -1.0);
        CHECK(est.m1 <= 1.0);
        CHECK(est.m2 >= -1.5);
        CHECK(est.m2 <= 1.5);
    }
}

TEST_CASE("sampling capacity guard") {
    const ScalarMapContext ctx(make_params(1.6, 3));
    CHECK_THROWS_AS(sample(disordered_law(ctx), ctx, 20, 1), CapacityError);
}
