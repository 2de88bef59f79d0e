#pragma once

// Independent reference formulas used only by tests: the reduced forms of
// the spectral coefficients for integer and half-integer flux, the symmetric
// chain, and a brute-force theta-grid membership test.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

struct ABC {
    double a, b, c;
};

// A integer
inline ABC loose_integer_flux(double k, double l, double l1, double l3, double A) {
    const double K = k * k * l * l;
    const double u = k * (pi - l3);
    ABC r;
    r.a = 8 * std::sin(k * pi) * (2 * (K + 1) * std::cos(A * l3) * std::cos(u) - 4 * k * l * std::sin(A * l3) * std::sin(u));
    r.b = 8 * std::sin(k * pi) * (2 * (K + 1) * std::sin(A * l3) * std::cos(u) + 4 * k * l * std::cos(A * l3) * std::sin(u));
    r.c = -(K - 1) * (K - 1) * (2 * std::sin(k * l1) * std::cos(2 * u) + std::sin(k * (2 * pi - l1))) -
          8 * (K + 1) * std::sin(k * l1) + (K + 3) * (K + 3) * std::sin(k * (l1 + 2 * pi));
    return r;
}

inline double loose_integer_ab_norm(double k, double l, double l3) {
    const double K = k * k * l * l;
    const double s = std::sin(k * pi);
    return 128 * s * s * (4 * K + (K + 1) * (K + 1) + (K - 1) * (K - 1) * std::cos(2 * k * (pi - l3)));
}

// A - 1/2 integer (a and b only)
inline ABC loose_half_flux(double k, double l, double l3, double A) {
    const double u = k * (pi - l3);
    const double m = (k * l - 1) * (k * l - 1), p = (k * l + 1) * (k * l + 1);
    ABC r;
    r.a = 8 * std::cos(k * pi) * (m * std::sin(u - A * l3) + p * std::sin(u + A * l3));
    r.b = 8 * std::cos(k * pi) * (m * std::cos(u - A * l3) - p * std::cos(u + A * l3));
    r.c = 0;
    return r;
}

// displayed c at k = n - 1/2, A - 1/2 integer; equals -4 times the true c
inline double loose_half_ladder_c_display(int n, double l, double l1, double l3) {
    const double q = 2.0 * n - 1;
    const double s = std::sin(q * l3 / 2);
    return (q * q * l * l - 4) * (q * q * l * l - 4) * std::sin(q * l1 / 2) * s * s;
}

// symmetric chain l3 = pi
inline ABC loose_symmetric(double k, double l, double l1, double A) {
    const double K = k * k * l * l;
    ABC r;
    r.a = 16 * ((K + 1) * std::sin(k * pi) * std::cos(A * pi) + 2 * k * l * std::sin(A * pi) * std::cos(k * pi));
    r.b = 0;
    r.c = (K + 3) * (K + 3) * std::sin(k * (l1 + 2 * pi)) -
          2 * ((K - 1) * (K - 1) + 4 * (K + 1) * std::cos(2 * A * pi)) * std::sin(k * l1) +
          16 * k * l * std::sin(2 * A * pi) * std::cos(k * l1) - (K - 1) * (K - 1) * std::sin(k * (2 * pi - l1));
    return r;
}

// tight chain, A - 1/2 integer
inline ABC tight_half_flux(double k, double l, double l3, double A) {
    const double K = k * k * l * l;
    const double u = k * (pi - l3);
    ABC r;
    r.a = std::cos(k * pi) * (2 * (K + 1) * std::cos(A * l3) * std::sin(u) + 4 * k * l * std::sin(A * l3) * std::cos(u));
    r.b = std::cos(k * pi) * (2 * (K + 1) * std::sin(A * l3) * std::sin(u) - 4 * k * l * std::cos(A * l3) * std::cos(u));
    r.c = 2 * (K + 1) * std::sin(k * pi) * std::cos(k * pi);
    return r;
}

inline double tight_half_band_condition(double k, double l, double l3) {
    const double K = k * k * l * l;
    return 4 * K + (K + 1) * (K + 1) * std::cos(2 * k * pi) - (K - 1) * (K - 1) * std::cos(2 * k * (pi - l3));
}

inline double merged_half_band_condition(double k, double l, double l1) {
    const double K = k * k * l * l;
    return 4 * K + (K + 1) * (K + 1) * std::cos(2 * k * (l1 + pi)) - (K - 1) * (K - 1) * std::cos(2 * k * pi);
}

// exceptional-flux closed forms of c for the tight chain
inline double tight_c_odd(double k, double l) {
    const double K = k * k * l * l, t = std::tan(k * pi);
    return (K - 1) * (K - 1) * (K + 1) * std::sin(2 * k * pi) / ((K + 1) * (K + 1) + 4 * K * t * t);
}
inline double tight_c_even(double k, double l) {
    const double K = k * k * l * l, t = std::tan(k * pi), s = std::sin(k * pi);
    return 2 * (K - 1) * (K - 1) * (K + 1) * s * s * t / (4 * K + (K + 1) * (K + 1) * t * t);
}

// negative energy, unscaled hyperbolic forms
inline ABC loose_negative(double kap, double l, double l1, double l3, double A) {
    const double K = kap * kap * l * l, l2 = 2 * pi - l3;
    ABC r;
    r.a = -4 * (K - 1) * (std::cos(A * l3) * std::sinh(kap * l2) + std::cos(A * l2) * std::sinh(kap * l3)) +
          8 * kap * l * (std::sin(A * l2) * std::cosh(kap * l3) + std::sin(A * l3) * std::cosh(kap * l2));
    r.b = 4 * (K - 1) * (std::sin(A * l2) * std::sinh(kap * l3) - std::sin(A * l3) * std::sinh(kap * l2)) +
          8 * kap * l * (std::cos(A * l2) * std::cosh(kap * l3) - std::cos(A * l3) * std::cosh(kap * l2));
    r.c = (4 * (K - 1) * std::cos(2 * A * pi) +
           (K * K + 3) * (std::cosh(2 * kap * pi) - std::cosh(2 * kap * (pi - l3)))) * std::sinh(kap * l1) +
          2 * (4 * kap * l * std::sin(2 * A * pi) - (K - 1) * (std::sinh(2 * kap * (pi - l3)) + std::sinh(2 * kap * pi))) *
              std::cosh(kap * l1) -
          4 * (K - 1) * std::cosh(kap * l2) * std::sinh(kap * (l1 + l3));
    return r;
}

inline ABC tight_negative(double kap, double l, double l3, double A) {
    const double K = kap * kap * l * l, l2 = 2 * pi - l3;
    ABC r;
    r.a = (1 - K) * (std::cos(A * l3) * std::sinh(kap * l2) + std::cos(A * l2) * std::sinh(kap * l3)) +
          2 * kap * l * (std::sin(A * l2) * std::cosh(kap * l3) + std::sin(A * l3) * std::cosh(kap * l2));
    r.b = (K - 1) * (std::sin(A * l2) * std::sinh(kap * l3) - std::sin(A * l3) * std::sinh(kap * l2)) +
          2 * kap * l * (std::cos(A * l2) * std::cosh(kap * l3) - std::cos(A * l3) * std::cosh(kap * l2));
    r.c = 2 * kap * l * std::sin(2 * A * pi) + (1 - K) * std::sinh(2 * kap * pi);
    return r;
}

inline ABC merged_negative(double kap, double l, double l1, double A) {
    const double K = kap * kap * l * l;
    ABC r;
    r.a = 2 * kap * l * std::sin(2 * A * pi) + (1 - K) * std::sinh(2 * kap * pi);
    r.b = 2 * kap * l * (std::cos(2 * A * pi) - std::cosh(2 * kap * pi));
    r.c = (K - 1) * (std::cos(2 * A * pi) * std::sinh(kap * l1) - std::sinh(kap * (l1 + 2 * pi))) +
          2 * kap * l * std::sin(2 * A * pi) * std::cosh(kap * l1);
    return r;
}

// low-energy Taylor coefficients of the discriminant
inline double taylor_positive_display(double l, double l1, double l3, double A) {
    const double s = std::sin(A * pi);
    return -8 * s * s *
           (l1 * l1 + 4 * pi * (l1 + l3) + std::cos(2 * A * pi) * (4 * l * l - l1 * l1) +
            4 * l1 * l * std::sin(2 * A * pi) - 2 * l3 * l3 - 4 * l * l);
}
inline double taylor_negative_half_flux(double l, double l1, double l3) {
    return -64 * (-4 * l * l + (l1 * l1 - l3 * l3) + 2 * pi * (l1 + l3));
}

// min over a theta grid of |a cos(theta) + b sin(theta) - c| relative to the scale:
// a point is in the spectrum iff the sinusoid reaches zero.
template <class Co>
bool brute_force_member(const Co& co, int ntheta) {
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < ntheta; ++j) {
        const double t = -pi + 2 * pi * j / ntheta;
        const double d = co.a * std::cos(t) + co.b * std::sin(t) - co.c;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return lo <= 0 && hi >= 0;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

}  // namespace oracle
