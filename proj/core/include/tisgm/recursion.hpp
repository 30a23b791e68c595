#ifndef TISGM_RECURSION_HPP
#define TISGM_RECURSION_HPP

#include "tisgm/model.hpp"

namespace tisgm {

/// Immutable evaluation context: parameters plus cached powers of theta.
/// Safe to share across threads.
struct ScalarMapContext {
    ModelParams params;
    double th, th2, th3, th4, th6;

    explicit ScalarMapContext(const ModelParams& p)
        : params(p),
          th(p.theta),
          th2(p.theta * p.theta),
          th3(th2 * p.theta),
          th4(th2 * th2),
          th6(th4 * th2) {}
};

/// The upsilon-level components (t, u, v) produced from a psi-level ratio x.
struct InnerLaws {
    double t, u, v;
};

/// Limits of the scalar map at x -> 0+ and x -> infinity, evaluated in
/// closed form from the leading coefficients (no numerical limits).
struct ImageBounds {
    double L0;
    double Linf;
};

/// t = (x^k+th^3)/(th^2+th x^k), u = (th x^k+1)/(x^k+th),
/// v = (th^3 x^k+1)/(th^2+th x^k). Finite for every x >= 0, including the
/// x -> infinity leading-term limits.
InnerLaws inner_laws(double x, const ScalarMapContext& ctx);

/// The phi-level pair (y, z) from (t, u, v).
struct MiddleLaws {
    double y, z;
};
MiddleLaws middle_laws(double t, double u, double v, const ScalarMapContext& ctx);

/// The scalar recursion f(x, theta, k). Strictly positive for x >= 0; the
/// unique algebraic identity f(1) = 1 holds for every (theta, k).
double f_scalar(double x, const ScalarMapContext& ctx);

/// Closed-form image bounds: L0 from (t,u,v) = (th, 1/th, 1/th^2), Linf
/// from (1/th, th, th^2).
ImageBounds image_bounds(const ScalarMapContext& ctx);

/// f'(x) by forward-mode dual numbers through the exact composition.
double f_derivative(double x, const ScalarMapContext& ctx);

/// The closed-form symmetric solution of the constant-law system:
/// X = U = 1, T = N = ((1+th^3)/(th^2+th))^k, Y = Z.
BoundaryLaw disordered_law(const ScalarMapContext& ctx);

/// Full boundary law generated by substituting x through the chain
/// (t,u,v) -> (y,z) and lifting everything to k-th powers. Solves the
/// constant-law system exactly when x is a fixed point of f.
BoundaryLaw law_from_x(double x, const ScalarMapContext& ctx);

/// Maximum componentwise relative residual of the constant-law system at
/// the given law: max_i |rhs_i(law) - law_i| / law_i.
double law_residual(const BoundaryLaw& law, const ScalarMapContext& ctx);

} // namespace tisgm

#endif
