#ifndef TISGM_DUAL_HPP
#define TISGM_DUAL_HPP

namespace tisgm {

/// Forward-mode dual number: value + first derivative carried through
/// arithmetic. Enough for the rational compositions used here; no
/// transcendental overloads are needed.
struct Dual {
    double val;
    double der;

    constexpr Dual(double v = 0.0, double d = 0.0) : val(v), der(d) {}

    friend constexpr Dual operator+(Dual a, Dual b) {
        return {a.val + b.val, a.der + b.der};
    }
    friend constexpr Dual operator-(Dual a, Dual b) {
        return {a.val - b.val, a.der - b.der};
    }
    friend constexpr Dual operator*(Dual a, Dual b) {
        return {a.val * b.val, a.der * b.val + a.val * b.der};
    }
    friend constexpr Dual operator/(Dual a, Dual b) {
        const double inv = 1.0 / b.val;
        return {a.val * inv, (a.der - a.val * inv * b.der) * inv};
    }
    friend constexpr Dual operator-(Dual a) { return {-a.val, -a.der}; }
};

/// Seed for differentiating with respect to x.
constexpr Dual dual_var(double x) { return Dual(x, 1.0); }

} // namespace tisgm

#endif
