#ifndef TISGM_MODEL_HPP
#define TISGM_MODEL_HPP

#include <array>
#include <span>

#include "tisgm/errors.hpp"

namespace tisgm {

/// Model parameters. Canonical parameterization is (theta, k); the pair
/// (J, beta) is kept for reporting, with theta = exp(beta*J/2) always
/// consistent with the stored coupling.
struct ModelParams {
    int k;         // tree order, >= 1
    double J;      // coupling
    double beta;   // inverse temperature, > 0
    double theta;  // exp(beta*J/2)

    bool ferromagnetic() const { return theta > 1.0; }
};

/// Construct from the canonical pair. beta is fixed to 1, so J = 2*ln(theta).
ModelParams make_params(double theta, int k);

/// Construct from (J, beta); theta is derived.
ModelParams make_params(double J, double beta, int k);

/// Level classes of the tree by distance-from-root mod 3.
enum class Level : int { psi = 0, phi = 1, upsilon = 2 };

/// The three spin alphabets of the period-3 arrangement. Spins are kept
/// internally as doubled integers (-3..3) so ordering and level bookkeeping
/// stay exact; real values only enter Boltzmann weights.
struct SpinAlphabets {
    static constexpr std::array<int, 2> psi_doubled{-1, 1};        // -1/2, +1/2
    static constexpr std::array<int, 3> phi_doubled{-2, 0, 2};     // -1, 0, +1
    static constexpr std::array<int, 4> upsilon_doubled{-3, -1, 1, 3};

    static constexpr Level level_of(int depth) {
        return static_cast<Level>(depth % 3);
    }

    static std::span<const int> doubled(Level lv);
    static std::size_t size(Level lv);

    /// Real spin value from the doubled representation.
    static constexpr double real_value(int doubled_spin) {
        return 0.5 * doubled_spin;
    }
};

/// Constant boundary law: the six positive ratios of exponentiated field
/// differences. X lives on psi-levels, (Y, Z) on phi-levels and (T, U, N)
/// on upsilon-levels. N is sometimes written V elsewhere; both name
/// exp(h_{3/2} - h_{-1/2}).
struct BoundaryLaw {
    double X, Y, Z, T, U, N;
};

/// Componentwise k-th roots of a BoundaryLaw.
struct ReducedLaw {
    double x, y, z, t, u, v;
};

/// Componentwise k-th power; inverse of root().
BoundaryLaw lift(const ReducedLaw& r, int k);

/// Componentwise k-th root; inverse of lift().
ReducedLaw root(const BoundaryLaw& b, int k);

/// Integer power by squaring, n >= 0. Works for double and dual numbers.
template <class T>
T pow_int(T base, int n) {
    T result(1.0);
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

} // namespace tisgm

#endif
