#include "ringchain/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringchain {

namespace {

// Hyperbolic functions multiplied by exp(-s), for s >= |x|.
double sh(double x, double s) { return 0.5 * (std::exp(x - s) - std::exp(-x - s)); }
double ch(double x, double s) { return 0.5 * (std::exp(x - s) + std::exp(-x - s)); }

void require(const ChainSpec& spec, Variant v, const SpectralPoint& pt) {
    if (spec.variant != v)
        throw std::invalid_argument("coefficients_" + to_string(v) + " called with a " +
                                    to_string(spec.variant) + " chain");
    pt.validate();
}

SpectralCoefficients loose_positive(const ChainSpec& s, double k) {
    const double kl = k * s.ell;
    const double p = (kl + 1) * (kl + 1);
    const double m = (kl - 1) * (kl - 1);
    const double K = kl * kl;
    const double u = kPi - s.l3;
    const double A = s.A;
    const double sp = std::sin((A + k) * kPi), sm = std::sin((A - k) * kPi);
    SpectralCoefficients co;
    co.a = 8 * (p * sp * std::cos((A - k) * u) - m * sm * std::cos((A + k) * u));
    co.b = 8 * (m * sm * std::sin((A + k) * u) - p * sp * std::sin((A - k) * u));
    co.c = -m * (4 * std::sin(2 * kPi * A + k * s.l1) +
                 p * (std::sin(k * (kTwoPi - s.l1)) + 2 * std::sin(k * s.l1) * std::cos(2 * k * u))) +
           4 * p * std::sin(2 * kPi * A - k * s.l1) + (K + 3) * (K + 3) * std::sin(k * (s.l1 + kTwoPi));
    co.scale = std::max({1.0, 8 * (p + m), 4 * m + 3 * m * p + 4 * p + (K + 3) * (K + 3)});
    return co;
}

SpectralCoefficients loose_negative(const ChainSpec& s, double kap) {
    const double kl = kap * s.ell;
    const double K = kl * kl;
    const double l2 = s.l2(), l3 = s.l3, l1 = s.l1, A = s.A;
    const double S = kap * (kTwoPi + l1);
    const double s2A = std::sin(2 * A * kPi), c2A = std::cos(2 * A * kPi);
    SpectralCoefficients co;
    co.a = -4 * (K - 1) * (std::cos(A * l3) * sh(kap * l2, S) + std::cos(A * l2) * sh(kap * l3, S)) +
           8 * kl * (std::sin(A * l2) * ch(kap * l3, S) + std::sin(A * l3) * ch(kap * l2, S));
    co.b = 4 * (K - 1) * (std::sin(A * l2) * sh(kap * l3, S) - std::sin(A * l3) * sh(kap * l2, S)) +
           8 * kl * (std::cos(A * l2) * ch(kap * l3, S) - std::cos(A * l3) * ch(kap * l2, S));
    const double P = 2 * kap * kPi;  // shift carried by the ring factors
    const double L = kap * l1;       // shift carried by the link factors
    const double t1 = (4 * (K - 1) * c2A * std::exp(-P) +
                       (K * K + 3) * (ch(2 * kap * kPi, P) - ch(2 * kap * (kPi - l3), P))) *
                      sh(kap * l1, L);
    const double t2 = 2 * (4 * kl * s2A * std::exp(-P) -
                           (K - 1) * (sh(2 * kap * (kPi - l3), P) + sh(2 * kap * kPi, P))) *
                      ch(kap * l1, L);
    const double t3 = -4 * (K - 1) * ch(kap * l2, kap * l2) * sh(kap * (l1 + l3), kap * (l1 + l3));
    co.c = t1 + t2 + t3;
    const double aK = std::fabs(K - 1);
    co.scale = std::max({1.0, 8 * aK + 16 * kl, 12 * aK + 2 * (K * K + 3) + 8 * kl});
    return co;
}

SpectralCoefficients tight_positive(const ChainSpec& s, double k) {
    const double kl = k * s.ell;
    const double p = (kl + 1) * (kl + 1);
    const double m = (kl - 1) * (kl - 1);
    const double K = kl * kl;
    const double u = kPi - s.l3;
    const double A = s.A;
    const double sp = std::sin((A + k) * kPi), sm = std::sin((A - k) * kPi);
    SpectralCoefficients co;
    co.a = p * sp * std::cos((A - k) * u) - m * sm * std::cos((A + k) * u);
    co.b = m * sm * std::sin((A + k) * u) - p * sp * std::sin((A - k) * u);
    co.c = 2 * kl * std::sin(2 * A * kPi) + (K + 1) * std::sin(2 * k * kPi);
    co.scale = std::max(1.0, p + m);
    return co;
}

SpectralCoefficients tight_negative(const ChainSpec& s, double kap) {
    const double kl = kap * s.ell;
    const double K = kl * kl;
    const double l2 = s.l2(), l3 = s.l3, A = s.A;
    const double S = 2 * kap * kPi;
    SpectralCoefficients co;
    co.a = (1 - K) * (std::cos(A * l3) * sh(kap * l2, S) + std::cos(A * l2) * sh(kap * l3, S)) +
           2 * kl * (std::sin(A * l2) * ch(kap * l3, S) + std::sin(A * l3) * ch(kap * l2, S));
    co.b = (K - 1) * (std::sin(A * l2) * sh(kap * l3, S) - std::sin(A * l3) * sh(kap * l2, S)) +
           2 * kl * (std::cos(A * l2) * ch(kap * l3, S) - std::cos(A * l3) * ch(kap * l2, S));
    co.c = 2 * kl * std::sin(2 * A * kPi) * std::exp(-S) + (1 - K) * sh(S, S);
    co.scale = std::max(1.0, 2 * std::fabs(K - 1) + 4 * kl);
    return co;
}

SpectralCoefficients merged_positive(const ChainSpec& s, double k) {
    const double kl = k * s.ell;
    const double K = kl * kl;
    const double A = s.A;
    const double s2A = std::sin(2 * A * kPi), c2A = std::cos(2 * A * kPi);
    SpectralCoefficients co;
    co.a = 2 * kl * s2A + (K + 1) * std::sin(2 * k * kPi);
    co.b = 2 * kl * (c2A - std::cos(2 * k * kPi));
    co.c = 2 * kl * s2A * std::cos(k * s.l1) -
           (K + 1) * (c2A * std::sin(k * s.l1) - std::sin(k * (s.l1 + kTwoPi)));
    co.scale = std::max(1.0, 4 * kl + 2 * (K + 1));
    return co;
}

SpectralCoefficients merged_negative(const ChainSpec& s, double kap) {
    const double kl = kap * s.ell;
    const double K = kl * kl;
    const double A = s.A, l1 = s.l1;
    const double s2A = std::sin(2 * A * kPi), c2A = std::cos(2 * A * kPi);
    const double S = kap * (kTwoPi + l1);
    const double e = std::exp(-S);
    SpectralCoefficients co;
    co.a = 2 * kl * s2A * e + (1 - K) * sh(2 * kap * kPi, S);
    co.b = 2 * kl * (c2A * e - ch(2 * kap * kPi, S));
    co.c = (K - 1) * (c2A * sh(kap * l1, S) - sh(kap * (l1 + kTwoPi), S)) + 2 * kl * s2A * ch(kap * l1, S);
    co.scale = std::max(1.0, 4 * kl + 2 * std::fabs(K - 1));
    return co;
}

}  // namespace

void SpectralPoint::validate() const {
    if (!(momentum > 0) || !std::isfinite(momentum))
        throw std::invalid_argument("spectral point momentum must be positive");
    if (theta && !(*theta >= -kPi && *theta < kPi))
        throw std::invalid_argument("quasimomentum must lie in [-pi, pi)");
}

std::optional<double> SpectralCoefficients::phase() const {
    if (a * a + b * b <= 0) return std::nullopt;
    return std::atan2(a, b);
}

double SpectralCoefficients::delta(double theta) const {
    return a * std::cos(theta) + b * std::sin(theta) - c;
}

bool SpectralCoefficients::is_flat(double eps) const {
    return a * a + b * b < eps * eps * scale * scale && std::fabs(c) < eps * scale;
}

SpectralCoefficients coefficients_loose(const ChainSpec& spec, const SpectralPoint& pt) {
    require(spec, Variant::Loose, pt);
    return pt.sign == EnergySign::Positive ? loose_positive(spec, pt.momentum)
                                           : loose_negative(spec, pt.momentum);
}

SpectralCoefficients coefficients_tight(const ChainSpec& spec, const SpectralPoint& pt) {
    require(spec, Variant::Tight, pt);
    return pt.sign == EnergySign::Positive ? tight_positive(spec, pt.momentum)
                                           : tight_negative(spec, pt.momentum);
}

SpectralCoefficients coefficients_merged(const ChainSpec& spec, const SpectralPoint& pt) {
    require(spec, Variant::Merged, pt);
    return pt.sign == EnergySign::Positive ? merged_positive(spec, pt.momentum)
                                           : merged_negative(spec, pt.momentum);
}

SpectralCoefficients coefficients(const ChainSpec& spec, const SpectralPoint& pt) {
    switch (spec.variant) {
        case Variant::Loose: return coefficients_loose(spec, pt);
        case Variant::Tight: return coefficients_tight(spec, pt);
        case Variant::Merged: return coefficients_merged(spec, pt);
    }
    throw std::logic_error("unreachable");
}

double discriminant(const SpectralCoefficients& co) { return co.discriminant(); }

ThetaSolution dispersion_theta(const SpectralCoefficients& co, double eps) {
    ThetaSolution out;
    if (co.is_flat(eps)) {
        out.kind = ThetaSolution::Kind::AllTheta;
        return out;
    }
    const double r = std::hypot(co.a, co.b);
    if (r == 0 || std::fabs(co.c) > r) {
        out.kind = ThetaSolution::Kind::Empty;
        return out;
    }
    const double vt = std::atan2(co.a, co.b);
    const double s = std::asin(std::clamp(co.c / r, -1.0, 1.0));
    auto norm = [](double t) { return wrap(t + kPi, kTwoPi) - kPi; };
    out.kind = ThetaSolution::Kind::Discrete;
    out.thetas.push_back(norm(s - vt));
    const double t2 = norm(kPi - s - vt);
    if (std::fabs(co.c) != r) out.thetas.push_back(t2);
    std::sort(out.thetas.begin(), out.thetas.end());
    return out;
}

}  // namespace ringchain
