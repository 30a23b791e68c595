#include "tisgm/recursion.hpp"

#include <cmath>

#include "tisgm/dual.hpp"

namespace tisgm {

namespace {

// The whole recursion is a rational composition, so it is evaluated on a
// generic scalar type: double for values, Dual for exact derivatives.

template <class T>
struct Inner {
    T t, u, v;
};

constexpr double kInverseFormThreshold = 1.0;

double value_of(double x) { return x; }
double value_of(const Dual& x) { return x.val; }

// (t, u, v) as functions of w = x^k. For x > 1 the algebraically identical
// form in w^-1 = x^-k is used, so nothing overflows even when x^k would;
// underflow of x^-k lands exactly on the leading-term limits.
template <class T>
Inner<T> inner_from_x(const T& x, const ScalarMapContext& c) {
    const T one(1.0);
    if (value_of(x) <= kInverseFormThreshold) {
        const T w = pow_int(x, c.params.k);
        return {(w + T(c.th3)) / (T(c.th2) + T(c.th) * w),
                (T(c.th) * w + one) / (w + T(c.th)),
                (T(c.th3) * w + one) / (T(c.th2) + T(c.th) * w)};
    }
    const T wi = pow_int(one / x, c.params.k);
    return {(one + T(c.th3) * wi) / (T(c.th2) * wi + T(c.th)),
            (T(c.th) + wi) / (one + T(c.th) * wi),
            (T(c.th3) + wi) / (T(c.th2) * wi + T(c.th))};
}

template <class T>
struct Middle {
    T y, z;
};

template <class T>
Middle<T> middle_from_inner(const T& t, const T& u, const T& v,
                            const ScalarMapContext& c) {
    const T tk = pow_int(t, c.params.k);
    const T uk = pow_int(u, c.params.k);
    const T vk = pow_int(v, c.params.k);
    const T den = T(c.th3) * (tk + T(1.0) + uk + vk);
    return {(T(c.th6) * tk + T(c.th4) + T(c.th2) * uk + vk) / den,
            (tk + T(c.th2) + T(c.th4) * uk + T(c.th6) * vk) / den};
}

template <class T>
T f_from_middle(const T& y, const T& z, const ScalarMapContext& c) {
    const T p = pow_int(y, c.params.k);
    const T q = pow_int(z, c.params.k);
    return (p + T(c.th) + T(c.th2) * q) / (T(c.th2) * p + T(c.th) + q);
}

template <class T>
T f_generic(const T& x, const ScalarMapContext& c) {
    const Inner<T> in = inner_from_x(x, c);
    const Middle<T> mid = middle_from_inner(in.t, in.u, in.v, c);
    return f_from_middle(mid.y, mid.z, c);
}

double f_from_inner(double t, double u, double v, const ScalarMapContext& c) {
    const Middle<double> mid = middle_from_inner(t, u, v, c);
    return f_from_middle(mid.y, mid.z, c);
}

} // namespace

InnerLaws inner_laws(double x, const ScalarMapContext& ctx) {
    if (!(x >= 0.0)) throw DomainError("inner_laws requires x >= 0");
    const Inner<double> in = inner_from_x(x, ctx);
    return {in.t, in.u, in.v};
}

MiddleLaws middle_laws(double t, double u, double v, const ScalarMapContext& ctx) {
    if (!(t > 0.0 && u > 0.0 && v > 0.0)) {
        throw DomainError("middle_laws requires positive (t, u, v)");
    }
    const Middle<double> mid = middle_from_inner(t, u, v, ctx);
    return {mid.y, mid.z};
}

double f_scalar(double x, const ScalarMapContext& ctx) {
    if (!(x >= 0.0)) throw DomainError("f_scalar requires x >= 0");
    return f_generic(x, ctx);
}

ImageBounds image_bounds(const ScalarMapContext& ctx) {
    const double th = ctx.th;
    const double L0 = f_from_inner(th, 1.0 / th, 1.0 / ctx.th2, ctx);
    const double Linf = f_from_inner(1.0 / th, th, ctx.th2, ctx);
    return {L0, Linf};
}

double f_derivative(double x, const ScalarMapContext& ctx) {
    if (!(x > 0.0)) throw DomainError("f_derivative requires x > 0");
    return f_generic(dual_var(x), ctx).der;
}

BoundaryLaw disordered_law(const ScalarMapContext& ctx) {
    const int k = ctx.params.k;
    const double t0 = (1.0 + ctx.th3) / (ctx.th2 + ctx.th);
    const double T0 = pow_int(t0, k);
    const double Y0 = pow_int(
        (ctx.th6 * T0 + ctx.th4 + ctx.th2 + T0) / (2.0 * ctx.th3 * (T0 + 1.0)),
        k);
    return BoundaryLaw{1.0, Y0, Y0, T0, 1.0, T0};
}

BoundaryLaw law_from_x(double x, const ScalarMapContext& ctx) {
    if (!(x > 0.0)) throw DomainError("law_from_x requires x > 0");
    const int k = ctx.params.k;
    const Inner<double> in = inner_from_x(x, ctx);
    const Middle<double> mid = middle_from_inner(in.t, in.u, in.v, ctx);
    return BoundaryLaw{pow_int(x, k),    pow_int(mid.y, k), pow_int(mid.z, k),
                       pow_int(in.t, k), pow_int(in.u, k),  pow_int(in.v, k)};
}

double law_residual(const BoundaryLaw& law, const ScalarMapContext& ctx) {
    const int k = ctx.params.k;
    const double th = ctx.th, th2 = ctx.th2, th3 = ctx.th3, th4 = ctx.th4,
                 th6 = ctx.th6;
    const double phi_den = th3 * (law.T + 1.0 + law.U + law.N);

    const double rhs[6] = {
        pow_int((law.Y + th + th2 * law.Z) / (th2 * law.Y + th + law.Z), k),
        pow_int((th6 * law.T + th4 + th2 * law.U + law.N) / phi_den, k),
        pow_int((law.T + th2 + th4 * law.U + th6 * law.N) / phi_den, k),
        pow_int((law.X + th3) / (th2 + th * law.X), k),
        pow_int((th * law.X + 1.0) / (law.X + th), k),
        pow_int((th3 * law.X + 1.0) / (th2 + th * law.X), k)};
    const double lhs[6] = {law.X, law.Y, law.Z, law.T, law.U, law.N};

    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        worst = std::max(worst, std::abs(rhs[i] - lhs[i]) / lhs[i]);
    }
    return worst;
}

} // namespace tisgm
