#include "tisgm/model.hpp"

#include <cmath>
#include <string>

namespace tisgm {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite");
    }
}

} // namespace

ModelParams make_params(double theta, int k) {
    require_positive_finite(theta, "theta");
    if (k < 1) throw DomainError("tree order k must be >= 1");
    // beta = 1 convention; only the product J*beta matters downstream.
    return ModelParams{k, 2.0 * std::log(theta), 1.0, theta};
}

ModelParams make_params(double J, double beta, int k) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be positive and finite");
    }
    if (!std::isfinite(J)) throw DomainError("J must be finite");
    if (k < 1) throw DomainError("tree order k must be >= 1");
    const double theta = std::exp(0.5 * beta * J);
    require_positive_finite(theta, "theta");
    return ModelParams{k, J, beta, theta};
}

std::span<const int> SpinAlphabets::doubled(Level lv) {
    switch (lv) {
        case Level::psi: return psi_doubled;
        case Level::phi: return phi_doubled;
        case Level::upsilon: return upsilon_doubled;
    }
    throw DomainError("invalid level");
}

std::size_t SpinAlphabets::size(Level lv) { return doubled(lv).size(); }

namespace {

void check_law_components(std::span<const double> comps, const char* what) {
    for (double c : comps) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw DomainError(std::string(what) +
                              " components must be positive and finite");
        }
    }
}

} // namespace

BoundaryLaw lift(const ReducedLaw& r, int k) {
    if (k < 1) throw DomainError("tree order k must be >= 1");
    const std::array comps{r.x, r.y, r.z, r.t, r.u, r.v};
    check_law_components(comps, "ReducedLaw");
    return BoundaryLaw{pow_int(r.x, k), pow_int(r.y, k), pow_int(r.z, k),
                       pow_int(r.t, k), pow_int(r.u, k), pow_int(r.v, k)};
}

ReducedLaw root(const BoundaryLaw& b, int k) {
    if (k < 1) throw DomainError("tree order k must be >= 1");
    const std::array comps{b.X, b.Y, b.Z, b.T, b.U, b.N};
    check_law_components(comps, "BoundaryLaw");
    const double inv_k = 1.0 / k;
    return ReducedLaw{std::pow(b.X, inv_k), std::pow(b.Y, inv_k),
                      std::pow(b.Z, inv_k), std::pow(b.T, inv_k),
                      std::pow(b.U, inv_k), std::pow(b.N, inv_k)};
}

} // namespace tisgm
