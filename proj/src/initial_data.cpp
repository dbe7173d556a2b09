#include "toda/initial_data.hpp"

#include <cmath>
#include <stdexcept>

namespace toda {

namespace {

// ln(1 + e^z) without overflow for large |z|.
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

// e^{-2k u} / (1 + e^{-2k u}) = logistic(-2k u).
double soliton_tail(double kappa, double u) {
    return 1.0 / (1.0 + std::exp(2.0 * kappa * u));
}

constexpr int kSolitonDirection = -1;

} // namespace

InitialData InitialData::parse(const std::string& name) {
    if (name == "NoS") return {IdFamily::NoS};
    if (name == "PureS") return {IdFamily::PureS};
    if (name == "double") return {IdFamily::Double};
    if (name == "quad") return {IdFamily::Quad};
    if (name == "dirac") return {IdFamily::Dirac};
    throw std::invalid_argument("unknown initial data family: " + name);
}

std::string InitialData::name() const {
    switch (family) {
        case IdFamily::NoS: return "NoS";
        case IdFamily::PureS: return "PureS";
        case IdFamily::Double: return "double";
        case IdFamily::Quad: return "quad";
        case IdFamily::Dirac: return "dirac";
    }
    return "?";
}

SolitonPoint exact_soliton(double kappa, double n, double t) {
    if (!(kappa > 0.0)) throw std::invalid_argument("exact_soliton: kappa must be positive");
    const double speed = std::sinh(kappa) / kappa;
    const double x = n - kSolitonDirection * speed * t;
    // a = (1/2) sqrt((1+E(x-1))(1+E(x+1))) / (1+E(x)),  E(u) = e^{-2k u},
    // evaluated in log form so large negative x does not overflow.
    const double lr = 0.5 * (softplus(-2.0 * kappa * (x - 1.0)) + softplus(-2.0 * kappa * (x + 1.0)))
                    - softplus(-2.0 * kappa * x);
    const double a = 0.5 * std::exp(lr);
    const double b = -std::sinh(kappa) * (soliton_tail(kappa, x) - soliton_tail(kappa, x - 1.0));
    return {a, b};
}

LatticeStateAB make_id(const InitialData& id, const IndexWindow& window) {
    LatticeStateAB s(window);
    for (int n = window.k_min; n <= window.k_max; ++n) {
        const std::size_t i = window.offset(n);
        const double dn = static_cast<double>(n);
        switch (id.family) {
            case IdFamily::NoS:
                s.a[i] = 0.5 - 0.25 * std::exp(-dn * dn);
                s.b[i] = 0.1 / std::cosh(dn);
                break;
            case IdFamily::PureS: {
                const SolitonPoint pt = exact_soliton(id.kappa, dn, 0.0);
                s.a[i] = pt.a;
                s.b[i] = pt.b;
                break;
            }
            case IdFamily::Double:
                s.a[i] = 0.5 + 0.8 * dn * std::exp(-dn * dn);
                s.b[i] = 0.1 / std::cosh(dn);
                break;
            case IdFamily::Quad:
                s.a[i] = std::fabs(0.5 - dn * std::exp(-dn * dn + dn));
                s.b[i] = dn / std::cosh(dn);
                break;
            case IdFamily::Dirac:
                s.a[i] = 0.5;
                s.b[i] = (n == 0) ? 4.0 : 0.0;
                break;
        }
    }
    return s;
}

} // namespace toda
