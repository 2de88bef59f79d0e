#include <cmath>
#include <stdexcept>

#include "ringchain/band_structure.hpp"
#include "ringchain/special_functions.hpp"

namespace ringchain {

AsymptoticPoint asymptotic_negative_point(const ChainSpec& spec, double kappa_max) {
    spec.validate();
    if (spec.variant == Variant::Tight)
        throw std::invalid_argument("asymptotic negative point needs a loose or merged chain");
    if (!(kappa_max > 0)) throw std::invalid_argument("kappa_max must be positive");
    AsymptoticPoint out;
    if (spec.variant == Variant::Merged && (is_integer_flux(spec.A) || is_half_integer_flux(spec.A))) {
        out.kappa = 1.0 / spec.ell;
        out.note = "exact: 2A integer";
        return out;
    }
    auto f = [&](double x) { return f_function_scaled(spec.ell, spec.l3, spec.A, x); };
    const int n = 20000;
    double xa = kappa_max / n * 1e-3, fa = f(xa);
    for (int i = 1; i <= n; ++i) {
        const double xb = kappa_max * i / n;
        const double fb = f(xb);
        if ((fa < 0) != (fb < 0)) {
            double a = xa, b = xb;
            const bool sa = fa < 0;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                if ((f(m) < 0) == sa)
                    a = m;
                else
                    b = m;
            }
            out.kappa = 0.5 * (a + b);
            out.note = "bisection root of f";
            return out;
        }
        xa = xb;
        fa = fb;
    }
    out.note = "no negative band in asymptotic regime";
    return out;
}

}  // namespace ringchain
