#include "tisgm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tisgm {

namespace {

constexpr double kDedupeRel = 1e-9;
constexpr double kNeutralTol = 1e-7;
constexpr double kTangencyThreshold = 1e-8;

double g_of(double x, const ScalarMapContext& ctx) {
    return f_scalar(x, ctx) - x;
}

// Bisect a sign-change bracket [a, b] of g down to width 1e-13 * x, then
// polish with a couple of guarded Newton steps on g.
double refine_root(double a, double b, double ga, const ScalarMapContext& ctx) {
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(a, 1e-300); ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // interval at floating-point resolution
        const double gm = g_of(m, ctx);
        if (gm == 0.0) return m;
        if ((ga < 0.0) == (gm < 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    double x = 0.5 * (a + b);
    double gx = g_of(x, ctx);
    for (int it = 0; it < 3; ++it) {
        const double slope = f_derivative(x, ctx) - 1.0;
        if (slope == 0.0) break;
        const double step = gx / slope;
        const double xn = x - step;
        if (!(xn > a - (b - a) && xn < b + (b - a)) || !(xn > 0.0)) break;
        const double gxn = g_of(xn, ctx);
        if (std::abs(gxn) >= std::abs(gx)) break;
        x = xn;
        gx = gxn;
    }
    return x;
}

Stability classify_multiplier(double m) {
    const double a = std::abs(m);
    if (a < 1.0 - kNeutralTol) return Stability::attracting;
    if (a > 1.0 + kNeutralTol) return Stability::repelling;
    return Stability::neutral;
}

FixedPoint make_fixed_point(double x_star, const ScalarMapContext& ctx) {
    const double m = f_derivative(x_star, ctx);
    return FixedPoint{x_star, m, classify_multiplier(m),
                      std::abs(f_scalar(x_star, ctx) - x_star)};
}

} // namespace

FixedPointScan scan_fixed_points(const ScalarMapContext& ctx, int grid_size) {
    if (grid_size < 3) throw DomainError("grid_size must be >= 3");

    const ImageBounds bounds = image_bounds(ctx);
    double lo = 0.999 * std::min({bounds.L0, bounds.Linf, 1.0});
    double hi = 1.001 * std::max({bounds.L0, bounds.Linf, 1.0});

    // Log-spaced grid with x = 1 inserted.
    std::vector<double> grid;
    grid.reserve(grid_size + 1);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < grid_size; ++i) {
        grid.push_back(std::exp(llo + (lhi - llo) * i / (grid_size - 1)));
    }
    grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) g[i] = g_of(grid[i], ctx);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (g[i] == 0.0) {
            roots.push_back(grid[i]);
        } else if ((g[i] < 0.0) != (g[i + 1] < 0.0)) {
            roots.push_back(refine_root(grid[i], grid[i + 1], g[i], ctx));
        }
    }
    if (!g.empty() && g.back() == 0.0) roots.push_back(grid.back());

    // f(1) = 1 identically; make sure the scan reflects it.
    const bool has_one = std::any_of(roots.begin(), roots.end(), [](double r) {
        return std::abs(r - 1.0) <= kDedupeRel;
    });
    if (!has_one) roots.push_back(1.0);

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (double r : roots) {
        // Snap near-1 roots onto the exact symmetric fixed point.
        if (std::abs(r - 1.0) <= kDedupeRel) r = 1.0;
        if (unique_roots.empty() ||
            r - unique_roots.back() > kDedupeRel * std::max(1.0, r)) {
            unique_roots.push_back(r);
        }
    }

    FixedPointScan scan;
    for (double r : unique_roots) scan.fixed_points.push_back(make_fixed_point(r, ctx));

    // Sub-threshold local minima of |g| away from accepted roots hint at
    // tangent (even-multiplicity) roots that bracketing cannot see.
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double a = std::abs(g[i]);
        if (a < kTangencyThreshold && a < std::abs(g[i - 1]) &&
            a < std::abs(g[i + 1])) {
            const bool near_root =
                std::any_of(unique_roots.begin(), unique_roots.end(), [&](double r) {
                    return std::abs(grid[i] - r) <=
                           std::max(1e-6, kDedupeRel * std::max(1.0, r));
                });
            if (!near_root) scan.suspected_tangencies.push_back(grid[i]);
        }
    }
    return scan;
}

std::vector<FixedPoint> find_fixed_points(const ScalarMapContext& ctx,
                                          int grid_size) {
    return scan_fixed_points(ctx, grid_size).fixed_points;
}

FixedPoint stability_of(double x_star, const ScalarMapContext& ctx) {
    if (!(x_star > 0.0)) throw DomainError("x_star must be positive");
    const double res = std::abs(f_scalar(x_star, ctx) - x_star);
    if (res > 1e-10) {
        throw ContractViolation("stability_of: x_star is not a fixed point (|f(x)-x| = " +
                                std::to_string(res) + ")");
    }
    return make_fixed_point(x_star, ctx);
}

double s_k(double theta, int k) {
    const ScalarMapContext ctx(make_params(theta, k));
    return f_derivative(1.0, ctx) - 1.0;
}

double critical_theta(int k, std::pair<double, double> bracket) {
    const auto [lo, hi] = bracket;
    if (!(lo > 0.0 && hi > lo)) throw DomainError("invalid bracket");

    constexpr int kPreScan = 200;
    std::vector<std::pair<double, double>> sign_changes;
    double prev_theta = lo;
    double prev_s = s_k(lo, k);
    for (int i = 1; i < kPreScan; ++i) {
        const double theta = lo + (hi - lo) * i / (kPreScan - 1);
        const double s = s_k(theta, k);
        if ((prev_s < 0.0) != (s < 0.0)) sign_changes.emplace_back(prev_theta, theta);
        prev_theta = theta;
        prev_s = s;
    }
    if (sign_changes.empty()) {
        throw BracketingError("critical_theta: s_k has no sign change on [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (sign_changes.size() > 1) {
        throw AmbiguityError("critical_theta: s_k changes sign " +
                                 std::to_string(sign_changes.size()) +
                                 " times on the bracket",
                             sign_changes);
    }

    auto [a, b] = sign_changes.front();
    double sa = s_k(a, k);
    while (b - a > 1e-8) {
        const double m = 0.5 * (a + b);
        const double sm = s_k(m, k);
        if (sm == 0.0) return m;
        if ((sa < 0.0) == (sm < 0.0)) {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

OrbitResult iterate_orbit(double x0, const ScalarMapContext& ctx, int max_iter,
                          double tol) {
    if (!(x0 > 0.0)) throw DomainError("x0 must be positive");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");

    std::vector<double> orbit{x0};
    double x = x0;
    bool monotone = true;
    int direction = 0;  // set after the first effective step
    int steps = 0;
    while (true) {
        const double xn = f_scalar(x, ctx);
        if (std::abs(xn - x) <= tol) {
            const double res = std::abs(f_scalar(xn, ctx) - xn);
            if (res > 10.0 * tol) {
                orbit.push_back(xn);
                throw ConvergenceError(
                    "iterate_orbit: limit residual " + std::to_string(res) +
                        " exceeds 10*tol",
                    std::move(orbit));
            }
            return OrbitResult{xn, monotone, steps};
        }
        if (steps >= max_iter) {
            throw ConvergenceError("iterate_orbit: no convergence after " +
                                       std::to_string(max_iter) + " steps",
                                   std::move(orbit));
        }
        const double slack = 1e-14 * std::max(1.0, std::abs(x));
        if (direction == 0) {
            direction = (xn > x) ? 1 : -1;
        } else if (direction * (xn - x) < -slack) {
            monotone = false;
        }
        x = xn;
        orbit.push_back(x);
        ++steps;
    }
}

PhasePoint classify_phase(double theta, int k) {
    const ScalarMapContext ctx(make_params(theta, k));
    FixedPointScan scan = scan_fixed_points(ctx);
    PhasePoint point;
    point.theta = theta;
    point.k = k;
    point.s_k = f_derivative(1.0, ctx) - 1.0;
    point.fixed_points = std::move(scan.fixed_points);
    point.suspected_tangencies = std::move(scan.suspected_tangencies);
    point.regime = point.fixed_points.size() >= 3 ? Regime::coexistence
                                                  : Regime::unique_disordered;
    return point;
}

} // namespace tisgm
