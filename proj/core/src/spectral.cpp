#include "tisgm/spectral.hpp"

#include <cmath>
#include <string>

namespace tisgm {

namespace {

template <std::size_t N>
void normalize_row(std::array<double, N>& row) {
    double sum = 0.0;
    for (double e : row) sum += e;
    for (double& e : row) e /= sum;
}

void check_finite(double v) {
    if (!std::isfinite(v)) {
        throw NumericalRangeError("non-finite transition-matrix entry");
    }
}

// Second eigenvalue of a 2x2 matrix via the characteristic polynomial,
// picking the root away from the stochastic eigenvalue 1. The
// discriminant uses (h11-h22)^2 + 4*h12*h21, which for positive entries
// does not cancel even when both eigenvalues approach 1 (tr^2 - 4*det
// would).
double eigen_second(const std::array<std::array<double, 2>, 2>& h) {
    const double tr = h[0][0] + h[1][1];
    const double gap2 =
        (h[0][0] - h[1][1]) * (h[0][0] - h[1][1]) + 4.0 * h[0][1] * h[1][0];
    const double disc = std::sqrt(std::max(0.0, gap2));
    const double r1 = 0.5 * (tr + disc);
    const double r2 = 0.5 * (tr - disc);
    return std::abs(r1 - 1.0) >= std::abs(r2 - 1.0) ? r1 : r2;
}

} // namespace

TransitionSet build_transitions(const BoundaryLaw& law, const ScalarMapContext& ctx) {
    const double th = ctx.th, th2 = ctx.th2, th3 = ctx.th3, th4 = ctx.th4,
                 th6 = ctx.th6;
    const double X = law.X, Y = law.Y, Z = law.Z, T = law.T, U = law.U,
                 N = law.N;

    TransitionSet ts;
    ts.P = {{{th2 * Y, th, Z},
             {Y, th, th2 * Z}}};
    ts.Q = {{{th6 * T, th4, th2 * U, N},
             {T, 1.0, U, N},
             {T, th2, th4 * U, th6 * N}}};
    ts.R = {{{th3, X},
             {th, X},
             {1.0, th * X},
             {1.0, th3 * X}}};
    for (auto& row : ts.P) normalize_row(row);
    for (auto& row : ts.Q) normalize_row(row);
    for (auto& row : ts.R) normalize_row(row);
    for (const auto& row : ts.P)
        for (double e : row) check_finite(e);
    for (const auto& row : ts.Q)
        for (double e : row) check_finite(e);
    for (const auto& row : ts.R)
        for (double e : row) check_finite(e);

    // H = P*Q*R through the intermediate 2x4 product.
    std::array<std::array<double, 4>, 2> pq{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int l = 0; l < 3; ++l) acc += ts.P[i][l] * ts.Q[l][j];
            pq[i][j] = acc;
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            double acc = 0.0;
            for (int l = 0; l < 4; ++l) acc += pq[i][l] * ts.R[l][j];
            ts.H[i][j] = acc;
            check_finite(acc);
        }
    }

    ts.lambda2 = ts.H[0][0] + ts.H[1][1] - 1.0;
    const double cross = eigen_second(ts.H);
    if (std::abs(ts.lambda2 - cross) > 1e-12) {
        throw NumericalRangeError(
            "trace identity and eigensolve disagree: " +
            std::to_string(ts.lambda2) + " vs " + std::to_string(cross));
    }
    return ts;
}

KSReport g_k(double theta, int k) {
    const ScalarMapContext ctx(make_params(theta, k));
    const TransitionSet ts = build_transitions(disordered_law(ctx), ctx);
    const double g = static_cast<double>(k) * k * k * ts.lambda2 * ts.lambda2 - 1.0;
    return KSReport{theta, k, ts.lambda2, g, g > 0.0};
}

KSReport ks_for_fixed_point(double x_star, const ScalarMapContext& ctx) {
    if (!(x_star > 0.0)) throw DomainError("x_star must be positive");
    const double res = std::abs(f_scalar(x_star, ctx) - x_star);
    if (res > 1e-10) {
        throw ContractViolation(
            "ks_for_fixed_point: x_star is not a fixed point (|f(x)-x| = " +
            std::to_string(res) + ")");
    }
    const int k = ctx.params.k;
    const TransitionSet ts = build_transitions(law_from_x(x_star, ctx), ctx);
    const double g = static_cast<double>(k) * k * k * ts.lambda2 * ts.lambda2 - 1.0;
    return KSReport{ctx.params.theta, k, ts.lambda2, g, g > 0.0};
}

KSScan ks_scan(int k, std::span<const double> theta_grid) {
    if (theta_grid.empty()) throw DomainError("theta grid must be nonempty");
    for (std::size_t i = 0; i + 1 < theta_grid.size(); ++i) {
        if (!(theta_grid[i] < theta_grid[i + 1])) {
            throw DomainError("theta grid must be strictly ascending");
        }
    }

    KSScan scan;
    scan.reports.reserve(theta_grid.size());
    for (double theta : theta_grid) scan.reports.push_back(g_k(theta, k));

    for (std::size_t i = 0; i < scan.reports.size();) {
        if (!scan.reports[i].non_extremal) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < scan.reports.size() && scan.reports[j + 1].non_extremal) ++j;
        scan.positive_intervals.push_back(
            KSInterval{theta_grid[i], theta_grid[j]});
        i = j + 1;
    }
    return scan;
}

} // namespace tisgm
