#ifndef TISGM_SOLVER_HPP
#define TISGM_SOLVER_HPP

#include <utility>
#include <vector>

#include "tisgm/recursion.hpp"

namespace tisgm {

enum class Stability { attracting, repelling, neutral };

/// A positive fixed point of f with its linearization data.
struct FixedPoint {
    double x_star;
    double multiplier;      // f'(x_star)
    Stability stability;
    double residual;        // |f(x_star) - x_star|
};

enum class Regime { unique_disordered, coexistence };

/// Everything the classification knows about one (theta, k) point.
struct PhasePoint {
    double theta;
    int k;
    double s_k;                              // f'(1) - 1
    std::vector<FixedPoint> fixed_points;    // ascending in x_star
    Regime regime;
    std::vector<double> suspected_tangencies;
};

/// Scan result: the refined roots plus grid locations where |f(x)-x| has a
/// sub-1e-8 local minimum without a sign change (possible tangent roots,
/// reported honestly instead of silently dropped).
struct FixedPointScan {
    std::vector<FixedPoint> fixed_points;
    std::vector<double> suspected_tangencies;
};

/// Bracket every sign change of f(x)-x on a log-spaced grid over the
/// padded image interval (plus the point 1), bisect each bracket, then
/// polish. x = 1 is always included. Roots are sorted ascending and
/// deduplicated at 1e-9 relative distance.
FixedPointScan scan_fixed_points(const ScalarMapContext& ctx, int grid_size = 2001);

/// scan_fixed_points without the tangency diagnostics.
std::vector<FixedPoint> find_fixed_points(const ScalarMapContext& ctx,
                                          int grid_size = 2001);

/// Multiplier and stability class at a verified fixed point. Throws
/// ContractViolation when |f(x_star) - x_star| > 1e-10.
FixedPoint stability_of(double x_star, const ScalarMapContext& ctx);

/// s_k(theta) = f'(1, theta, k) - 1. Negative: the symmetric point is
/// locally attracting; positive: repelling, and at least three positive
/// fixed points exist.
double s_k(double theta, int k);

/// Unique zero of s_k on the bracket, bisected to |dtheta| <= 1e-8. A
/// 200-point pre-scan must find exactly one sign change: otherwise
/// BracketingError / AmbiguityError.
double critical_theta(int k, std::pair<double, double> bracket = {1.0, 5.0});

struct OrbitResult {
    double limit;
    bool trajectory_monotone;  // monotone from the first step onward
    int iterations;            // update steps before |x_{n+1}-x_n| <= tol
};

/// Iterate x -> f(x) from x0 until successive iterates differ by at most
/// tol. Throws ConvergenceError (carrying the partial orbit) after
/// max_iter steps, or if the limit fails |f(l)-l| <= 10*tol.
OrbitResult iterate_orbit(double x0, const ScalarMapContext& ctx,
                          int max_iter = 100000, double tol = 1e-13);

/// Bundle s_k, all fixed points with stability, and the regime label.
PhasePoint classify_phase(double theta, int k);

} // namespace tisgm

#endif
