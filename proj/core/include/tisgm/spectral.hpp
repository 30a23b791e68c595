#ifndef TISGM_SPECTRAL_HPP
#define TISGM_SPECTRAL_HPP

#include <array>
#include <span>
#include <vector>

#include "tisgm/recursion.hpp"

namespace tisgm {

/// Level-to-level transition matrices of the tree-indexed Markov chain
/// induced by a boundary law: P (psi -> phi), Q (phi -> upsilon),
/// R (upsilon -> psi), H = P*Q*R (psi -> psi across one period). All rows
/// sum to 1; lambda2 = trace(H) - 1 is the second eigenvalue of H (signed;
/// the other eigenvalue of a 2x2 stochastic matrix is 1).
struct TransitionSet {
    std::array<std::array<double, 3>, 2> P;
    std::array<std::array<double, 4>, 3> Q;
    std::array<std::array<double, 2>, 4> R;
    std::array<std::array<double, 2>, 2> H;
    double lambda2;
};

/// Build P, Q, R, H from the normalization-free ratio parameterization.
/// Throws NumericalRangeError on non-finite entries or if the closed-form
/// lambda2 disagrees with the characteristic-polynomial eigensolve by more
/// than 1e-12.
TransitionSet build_transitions(const BoundaryLaw& law, const ScalarMapContext& ctx);

/// Kesten-Stigum report for one (theta, k): over one period the compressed
/// psi-level broadcast has branching k^3 and channel H, so
/// g = k^3 * lambda2^2 - 1 > 0 certifies non-extremality.
struct KSReport {
    double theta;
    int k;
    double lambda2;
    double g;
    bool non_extremal;
};

/// g_k at the disordered law.
KSReport g_k(double theta, int k);

/// Same criterion evaluated on the law generated by an arbitrary fixed
/// point of f (informational: the Kesten-Stigum argument is only applied
/// to the disordered phase in the classification). Throws
/// ContractViolation when |f(x_star) - x_star| > 1e-10.
KSReport ks_for_fixed_point(double x_star, const ScalarMapContext& ctx);

/// Disordered-law scan over an ascending theta grid, with the maximal
/// contiguous grid runs where g > 0.
struct KSInterval {
    double theta_lo;
    double theta_hi;
    double width() const { return theta_hi - theta_lo; }
};

struct KSScan {
    std::vector<KSReport> reports;
    std::vector<KSInterval> positive_intervals;

    double total_positive_width() const {
        double w = 0.0;
        for (const auto& iv : positive_intervals) w += iv.width();
        return w;
    }
};

KSScan ks_scan(int k, std::span<const double> theta_grid);

} // namespace tisgm

#endif
