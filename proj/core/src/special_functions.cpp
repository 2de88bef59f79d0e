#include "ringchain/special_functions.hpp"

#include <cmath>

namespace ringchain {

namespace {

double sh(double x, double s) { return 0.5 * (std::exp(x - s) - std::exp(-x - s)); }
double ch(double x, double s) { return 0.5 * (std::exp(x - s) + std::exp(-x - s)); }

}  // namespace

double lambda_plus(double k, double ell, double A) {
    const double kl = k * ell;
    return 4 * (kl + 1) * (kl + 1) * std::sin((A + k) * kPi) + 4 * (kl - 1) * (kl - 1) * std::sin((A - k) * kPi);
}

double lambda_minus(double k, double ell, double A) {
    const double kl = k * ell;
    return 4 * (kl + 1) * (kl + 1) * std::sin((A + k) * kPi) - 4 * (kl - 1) * (kl - 1) * std::sin((A - k) * kPi);
}

double tau_function(double k, double ell, double l1, double l3) {
    const double K = k * k * ell * ell;
    return 2 * ((K - 1) * (K - 1) * std::cos(2 * k * (kPi - l3)) - 4 * (K + 1)) * std::sin(k * l1);
}

double rho_function(double k, double ell, double l1) {
    const double K = k * k * ell * ell;
    return (K - 1) * (K - 1) * std::sin(k * (kTwoPi - l1)) - (K + 3) * (K + 3) * std::sin(k * (l1 + kTwoPi));
}

double half_integer_band_condition(double k, double ell, double l1, double l3) {
    const double K = k * k * ell * ell;
    const double ck = std::cos(k * kPi);
    const double tr = tau_function(k, ell, l1, l3) + rho_function(k, ell, l1);
    return 128 * ck * ck * (K * K - (K - 1) * (K - 1) * std::cos(2 * k * (kPi - l3)) + 6 * K + 1) - tr * tr;
}

double f_function(double ell, double l3, double A, double kappa) {
    const double K = kappa * kappa * ell * ell;
    const double x = 2 * kappa * kPi;
    return 4 * (K - 1) * (std::cos(2 * A * kPi) - std::sinh(x)) + (K * K - 2 * K + 5) * std::cosh(x) +
           8 * kappa * ell * std::sin(2 * A * kPi) - (K + 1) * (K + 1) * std::cosh(2 * kappa * (kPi - l3));
}

double f_function_scaled(double ell, double l3, double A, double kappa) {
    const double K = kappa * kappa * ell * ell;
    const double x = 2 * kappa * kPi;
    const double e = std::exp(-x);
    return 4 * (K - 1) * (std::cos(2 * A * kPi) * e - sh(x, x)) + (K * K - 2 * K + 5) * ch(x, x) +
           8 * kappa * ell * std::sin(2 * A * kPi) * e - (K + 1) * (K + 1) * ch(2 * kappa * (kPi - l3), x);
}

double g_function(double ell, double l1, int m, double kappa) {
    const double K = kappa * kappa * ell * ell;
    const double S = kappa * (kTwoPi + l1);
    const double num = (K - 3) * (K - 3) * sh(kappa * (kTwoPi + l1), S) -
                       (K + 1) * (K + 1) * sh(kappa * (kTwoPi - l1), S) -
                       2 * (K * K + 6 * K - 3) * sh(kappa * l1, S);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return num / (32 * sign * kappa * ell * ch(kappa * kPi, S));
}

double g_sech_form(double ell, double l1, int m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double x = kPi / ell;
    const double y = l1 / (2 * ell);
    return sign / 8 / std::cosh(x / 2) *
           (3 * std::sinh(x) * std::cosh(y) + (73.0 / 16 * std::cosh(x) + 23.0 / 16) * std::sinh(y));
}

double h_function(double k, double A) { return std::sin((k - A) * kPi) * std::sin((A + k) * kPi); }

std::optional<int> half_integer_index(double A, double tol) {
    const double x = A + 0.5;
    if (dist_to_int(x) > tol) return std::nullopt;
    return static_cast<int>(std::nearbyint(x));
}

bool is_integer_flux(double A, double tol) { return dist_to_int(A) <= tol; }
bool is_half_integer_flux(double A, double tol) { return dist_to_int(A + 0.5) <= tol; }

SpecialFunctions special_functions(const ChainSpec& spec, const SpectralPoint& pt) {
    pt.validate();
    SpecialFunctions out;
    const double x = pt.momentum;
    if (pt.sign == EnergySign::Positive) {
        out.lambda_plus = lambda_plus(x, spec.ell, spec.A);
        out.lambda_minus = lambda_minus(x, spec.ell, spec.A);
        if (spec.variant != Variant::Merged && is_half_integer_flux(spec.A)) {
            out.tau = tau_function(x, spec.ell, spec.l1, spec.l3);
            out.rho = rho_function(x, spec.ell, spec.l1);
        }
        if (spec.variant == Variant::Tight) out.h_value = h_function(x, spec.A);
    } else {
        if (spec.variant != Variant::Tight) out.f_value = f_function(spec.ell, spec.l3, spec.A, x);
        const auto m = half_integer_index(spec.A);
        if (m && spec.variant != Variant::Merged && spec.symmetric())
            out.g_value = g_function(spec.ell, spec.l1, *m, x);
    }
    if (spec.variant == Variant::Merged) out.calA = std::cos(2 * spec.A * kPi);
    return out;
}

}  // namespace ringchain
