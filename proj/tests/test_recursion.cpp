#include <doctest.h>

#include <cmath>

#include "tisgm/recursion.hpp"
#include "tisgm/rng.hpp"

using namespace tisgm;

namespace {

// Independent derivative oracle: Richardson-extrapolated central
// differences, kept free of the dual-number path it checks.
double fd_derivative(double x, const ScalarMapContext& ctx) {
    const double h = 1e-5 * std::max(1.0, x);
    const double d1 = (f_scalar(x + h, ctx) - f_scalar(x - h, ctx)) / (2.0 * h);
    const double d2 =
        (f_scalar(x + 0.5 * h, ctx) - f_scalar(x - 0.5 * h, ctx)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

TEST_CASE("context caches the exact theta powers") {
    SplitMix64 rng(2);
    for (int i = 0; i < 50; ++i) {
        const double theta = 0.2 + 9.0 * rng.next_double();
        const ScalarMapContext ctx(make_params(theta, 2));
        CHECK(std::abs(ctx.th2 - std::pow(theta, 2)) / ctx.th2 <= 1e-15);
        CHECK(std::abs(ctx.th3 - std::pow(theta, 3)) / ctx.th3 <= 1e-15);
        CHECK(std::abs(ctx.th4 - std::pow(theta, 4)) / ctx.th4 <= 1e-15);
        CHECK(std::abs(ctx.th6 - std::pow(theta, 6)) / ctx.th6 <= 1e-15);
    }
}

TEST_CASE("inner laws at the symmetric point and at the edges") {
    const ScalarMapContext ctx(make_params(2.0, 2));

    const InnerLaws at1 = inner_laws(1.0, ctx);
    CHECK(at1.t == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(at1.u == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(at1.v == doctest::Approx(1.5).epsilon(1e-15));

    const InnerLaws at0 = inner_laws(0.0, ctx);
    CHECK(at0.t == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(at0.u == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(at0.v == doctest::Approx(0.25).epsilon(1e-15));

    // leading-term limits, reached exactly once x^-k underflows
    const InnerLaws far = inner_laws(1e300, ctx);
    CHECK(far.t == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(far.u == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(far.v == doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(inner_laws(-0.1, ctx), DomainError);
}

TEST_CASE("middle laws: symmetry, theta=1 degeneracy, hand value") {
    SUBCASE("t=v, u=1 gives y=z") {
        const ScalarMapContext ctx(make_params(1.7, 3));
        const MiddleLaws m = middle_laws(1.4, 1.0, 1.4, ctx);
        CHECK(m.y == doctest::Approx(m.z).epsilon(1e-15));
    }
    SUBCASE("theta=1 gives y=z=1 for any inputs") {
        const ScalarMapContext ctx(make_params(1.0, 4));
        const MiddleLaws m = middle_laws(0.3, 2.0, 5.0, ctx);
        CHECK(m.y == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(m.z == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("hand-evaluated substitution at theta=2, k=1") {
        const ScalarMapContext ctx(make_params(2.0, 1));
        const MiddleLaws m = middle_laws(1.5, 1.0, 1.5, ctx);
        // (64*1.5 + 16 + 4 + 1.5) / (8 * 5) = 117.5 / 40
        CHECK(m.y == doctest::Approx(2.9375).epsilon(1e-15));
        CHECK(m.z == doctest::Approx(2.9375).epsilon(1e-15));
    }
}

TEST_CASE("f(1) = 1 on a dense (theta, k) grid") {
    for (int k = 1; k <= 6; ++k) {
        for (int i = 0; i < 100; ++i) {
            const double theta = 0.1 + (10.0 - 0.1) * i / 99.0;
            const ScalarMapContext ctx(make_params(theta, k));
            CHECK(std::abs(f_scalar(1.0, ctx) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("theta=1 degenerates f to the constant 1") {
    const ScalarMapContext ctx(make_params(1.0, 3));
    SplitMix64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const double x = std::exp(8.0 * (rng.next_double() - 0.5));
        CHECK(f_scalar(x, ctx) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(f_derivative(0.5, ctx) == 0.0);
}

TEST_CASE("image bounds bracket the map") {
    SUBCASE("theta=1 collapses the image") {
        const ScalarMapContext ctx(make_params(1.0, 2));
        const ImageBounds b = image_bounds(ctx);
        CHECK(b.L0 == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(b.Linf == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("L0 < 1 < Linf for theta > 1") {
        for (int i = 0; i < 40; ++i) {
            const double theta = 1.05 + 0.2 * i;
            for (int k : {1, 2, 3, 5}) {
                const ImageBounds b = image_bounds(ScalarMapContext(make_params(theta, k)));
                CHECK(b.L0 < 1.0);
                CHECK(1.0 < b.Linf);
            }
        }
    }
    SUBCASE("x=0 evaluates to L0, large x approaches Linf") {
        const ScalarMapContext ctx(make_params(2.0, 2));
        const ImageBounds b = image_bounds(ctx);
        CHECK(f_scalar(0.0, ctx) == doctest::Approx(b.L0).epsilon(1e-12));
        CHECK(f_scalar(1e8, ctx) == doctest::Approx(b.Linf).epsilon(1e-6));
        // frozen 40-digit reference values
        CHECK(b.L0 == doctest::Approx(0.26214538152008107).epsilon(1e-14));
        CHECK(b.Linf == doctest::Approx(3.8146771619678418).epsilon(1e-14));
    }
    SUBCASE("range containment on random points") {
        SplitMix64 rng(17);
        for (int i = 0; i < 200; ++i) {
            const double theta = 1.0 + 4.0 * rng.next_double();
            const int k = 1 + static_cast<int>(rng.next() % 5);
            const ScalarMapContext ctx(make_params(theta, k));
            const ImageBounds b = image_bounds(ctx);
            const double x = std::exp(12.0 * (rng.next_double() - 0.5));
            const double fx = f_scalar(x, ctx);
            CHECK(fx >= b.L0 * (1.0 - 1e-12));
            CHECK(fx <= b.Linf * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("evaluation stays finite across the extreme-parameter domain") {
    for (double theta : {1e2, 1e3, 1e4}) {
        for (int k : {1, 5, 10}) {
            const ScalarMapContext ctx(make_params(theta, k));
            for (double x : {0.0, 1e-300, 1.0, 1e10, 1e300}) {
                const double f = f_scalar(x, ctx);
                CHECK(std::isfinite(f));
                CHECK(f > 0.0);
            }
            CHECK(std::isfinite(f_derivative(1.0, ctx)));
            CHECK(law_residual(disordered_law(ctx), ctx) <= 1e-9);
        }
    }
}

TEST_CASE("strict monotonicity for theta > 1") {
    SplitMix64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const double theta = 1.0 + 6.0 * rng.next_double();
        const int k = 1 + static_cast<int>(rng.next() % 5);
        const ScalarMapContext ctx(make_params(theta, k));
        double a = std::exp(10.0 * (rng.next_double() - 0.5));
        double b = std::exp(10.0 * (rng.next_double() - 0.5));
        if (a > b) std::swap(a, b);
        const double fa = f_scalar(a, ctx);
        const double fb = f_scalar(b, ctx);
        CHECK(fa <= fb);
        // strictness is only observable where the first-order increment
        // clears double resolution (the far tails saturate at Linf)
        if (f_derivative(a, ctx) * (b - a) > 1e-12 * fa) {
            CHECK(fa < fb);
        }
    }
}

TEST_CASE("reciprocal symmetry f(1/x) = 1/f(x)") {
    SplitMix64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const double theta = 0.3 + 5.0 * rng.next_double();
        const int k = 1 + static_cast<int>(rng.next() % 5);
        const ScalarMapContext ctx(make_params(theta, k));
        const double x = std::exp(6.0 * (rng.next_double() - 0.5));
        CHECK(f_scalar(1.0 / x, ctx) * f_scalar(x, ctx) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("dual-number derivative against the finite-difference oracle") {
    SplitMix64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const double theta = 0.5 + 4.0 * rng.next_double();
        const int k = 1 + static_cast<int>(rng.next() % 5);
        const ScalarMapContext ctx(make_params(theta, k));
        const double x = std::exp(3.0 * (rng.next_double() - 0.5));
        const double dual = f_derivative(x, ctx);
        const double fd = fd_derivative(x, ctx);
        // FD roundoff noise is ~eps*|f|/h, so measure relative to the
        // map's scale once the derivative itself is smaller than it
        const double scale =
            std::max({std::abs(fd), std::abs(f_scalar(x, ctx)), 1.0});
        CHECK(std::abs(dual - fd) / scale <= 1e-6);
    }
}

TEST_CASE("derivative at the symmetric point") {
    // frozen 40-digit reference: f'(1, 1.6, 2) = 1.3067399528512736
    const ScalarMapContext c16(make_params(1.6, 2));
    CHECK(f_derivative(1.0, c16) ==
          doctest::Approx(1.3067399528512736).epsilon(1e-13));
    CHECK(f_derivative(1.0, c16) > 1.0);

    const ScalarMapContext c12(make_params(1.2, 2));
    CHECK(f_derivative(1.0, c12) < 1.0);
}

TEST_CASE("disordered law: closed form and self-consistency") {
    SUBCASE("theta=1 gives the all-ones law") {
        const ScalarMapContext ctx(make_params(1.0, 3));
        const BoundaryLaw law = disordered_law(ctx);
        for (double c : {law.X, law.Y, law.Z, law.T, law.U, law.N}) {
            CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    SUBCASE("T0 at theta=2, k=2") {
        const BoundaryLaw law = disordered_law(ScalarMapContext(make_params(2.0, 2)));
        CHECK(law.T == doctest::Approx(2.25).epsilon(1e-15));
        CHECK(law.N == law.T);
        CHECK(law.X == 1.0);
        CHECK(law.U == 1.0);
        CHECK(law.Y == law.Z);
    }
    SUBCASE("system residual below 1e-10 on a (theta, k) grid") {
        for (int k = 1; k <= 5; ++k) {
            for (int i = 0; i < 10; ++i) {
                const double theta = 0.4 + 0.7 * i;
                const ScalarMapContext ctx(make_params(theta, k));
                CHECK(law_residual(disordered_law(ctx), ctx) <= 1e-10);
            }
        }
    }
}

TEST_CASE("law_from_x solves the system exactly at fixed points") {
    SUBCASE("x=1 reproduces the disordered law") {
        const ScalarMapContext ctx(make_params(1.9, 3));
        const BoundaryLaw a = law_from_x(1.0, ctx);
        const BoundaryLaw b = disordered_law(ctx);
        for (auto [u, v] : {std::pair{a.X, b.X}, {a.Y, b.Y}, {a.Z, b.Z},
                            {a.T, b.T}, {a.U, b.U}, {a.N, b.N}}) {
            CHECK(std::abs(u - v) / v <= 1e-12);
        }
    }
    SUBCASE("frozen fixed points at theta=1.6, k=2") {
        const ScalarMapContext ctx(make_params(1.6, 2));
        // 40-digit references: 0.57652980909559123 and its reciprocal
        for (double x : {0.57652980909559123, 1.734515690643492}) {
            CHECK(law_residual(law_from_x(x, ctx), ctx) <= 1e-9);
        }
    }
    SUBCASE("non-fixed-point input leaves a visible residual") {
        const ScalarMapContext ctx(make_params(1.2, 2));
        CHECK(law_residual(law_from_x(2.0, ctx), ctx) > 1e-4);
    }
}
