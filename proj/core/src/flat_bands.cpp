#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ringchain/band_structure.hpp"
#include "ringchain/parallel.hpp"
#include "ringchain/special_functions.hpp"
#include "scan_internal.hpp"

namespace ringchain {

namespace {

constexpr double kFluxTol = 1e-12;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// l / (2 pi) as an exact fraction, from the pi-multiple hint or by recognition
std::optional<Rational> edge_over_two_pi(double len, const std::optional<Rational>& over_pi) {
    if (over_pi) return make_rational(over_pi->p, 2 * over_pi->q);
    return recognize_rational(len / kTwoPi);
}

void add(std::vector<FlatBandPrediction>& out, double k, FlatMechanism m, const std::string& why) {
    out.push_back({k, m, why});
}

// k > 0 with sin(k l) = 0 on the ladder k = step * (n - offset)
void rational_edge(std::vector<FlatBandPrediction>& out, std::vector<std::string>& notes, const char* name,
                   double len, const std::optional<Rational>& over_pi, bool half, double k_max) {
    const auto r = edge_over_two_pi(len, over_pi);
    if (!r) {
        notes.push_back(std::string(name) + "/(2pi) not recognized as a rational with denominator <= 1e6; " +
                        "rational-edge mechanism skipped for " + name);
        return;
    }
    const std::int64_t q = r->q;
    std::ostringstream why;
    why << name << " = 2pi*" << r->str();
    if (half) {
        // k = n - 1/2 with (2n - 1) p / q integer: needs q odd, k = q (m - 1/2)
        if (q % 2 == 0) return;
        why << ", A - 1/2 integer, q odd";
        for (std::int64_t m = 1;; ++m) {
            const double k = static_cast<double>(q) * (static_cast<double>(m) - 0.5);
            if (k > k_max) break;
            add(out, k, FlatMechanism::RationalEdge, why.str());
        }
    } else {
        // k = n with 2 n p / q integer
        const std::int64_t step = q % 2 == 0 ? q / 2 : q;
        why << ", A integer";
        for (std::int64_t m = 1;; ++m) {
            const double k = static_cast<double>(step * m);
            if (k > k_max) break;
            add(out, k, FlatMechanism::RationalEdge, why.str());
        }
    }
}

std::vector<double> sign_change_roots(const std::function<double(double)>& f, double lo, double hi,
                                      std::size_t n) {
    std::vector<double> roots;
    double xa = lo, fa = f(xa);
    for (std::size_t i = 1; i <= n; ++i) {
        const double xb = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double fb = f(xb);
        if ((fa < 0) != (fb < 0)) {
            double a = xa, b = xb;
            const bool sa = fa < 0;
            for (int it = 0; it < 200 && b - a > 0; ++it) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                if ((f(m) < 0) == sa)
                    a = m;
                else
                    b = m;
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    return roots;
}

}  // namespace

std::string to_string(FlatMechanism m) {
    switch (m) {
        case FlatMechanism::HalfIntegerLadder: return "half-integer-ladder";
        case FlatMechanism::IntegerLadder: return "integer-ladder";
        case FlatMechanism::RationalEdge: return "rational-edge";
        case FlatMechanism::EllInverse: return "ell-inverse";
        case FlatMechanism::ExceptionalFlux: return "exceptional-flux";
    }
    return "?";
}

std::vector<FlatHit> detect_flat_bands(const ChainSpec& spec, double k_max, std::size_t grid_points) {
    spec.validate();
    if (!(k_max > 0)) throw std::invalid_argument("k_max must be positive");
    if (grid_points == 0) grid_points = default_grid_points(k_max);
    const std::size_t N = grid_points;
    const double h = k_max / static_cast<double>(N);
    auto F = [&](double k) { return coefficients(spec, SpectralPoint::positive(k)); };
    std::vector<double> merit(N + 1);
    const std::size_t chunk = 4096;
    parallel_for((N + chunk) / chunk, [&](std::size_t c) {
        for (std::size_t i = c * chunk; i < std::min(N + 1, (c + 1) * chunk); ++i) {
            const double k = i == 0 ? 1e-3 * h : h * static_cast<double>(i);
            merit[i] = flat_merit(F(k));
        }
    });
    std::vector<FlatHit> hits;
    for (std::size_t i = 1; i <= N; ++i) {
        const bool left = merit[i] <= merit[i - 1];
        const bool right = i == N || merit[i] <= merit[i + 1];
        if (!left || !right || merit[i] > 1e-2) continue;
        const double k = h * static_cast<double>(i);
        const auto x = refine_flat_point(F, k, h);
        if (!x || *x > k_max * (1 + 1e-12)) continue;
        if (!hits.empty() && std::fabs(hits.back().k - *x) < 1e-8) continue;
        const auto co = F(*x);
        hits.push_back({*x, std::fabs(co.a), std::fabs(co.b), std::fabs(co.c), co.scale});
    }
    return hits;
}

double exceptional_flux(double k, double ell, Parity parity) {
    if (!(k > 0) || !(ell > 0)) throw std::invalid_argument("k and ell must be positive");
    if (dist_to_int(2 * k) < 1e-12) throw std::domain_error("exceptional flux undefined for 2k integer");
    const double kl = k * ell;
    const double K = kl * kl;
    const double x = (parity == Parity::OddM ? 2 * kl / (K + 1) : (K + 1) / (2 * kl)) * std::tan(k * kPi);
    return wrap(-std::atan(x) / kPi, 1.0);
}

std::vector<double> exceptional_l1_values(double ell, double l3, int m, double l1_max) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (std::fabs(kPi - l3) < 1e-12) throw std::invalid_argument("exceptional ladder needs l3 != pi");
    const double k = m * kPi / (2 * std::fabs(kPi - l3));
    const double A = exceptional_flux(k, ell, m % 2 == 1 ? Parity::OddM : Parity::EvenM);
    auto c = [&](double l1) { return coefficients_loose(ChainSpec::loose(ell, l1, l3, A), SpectralPoint::positive(k)).c; };
    const auto n = static_cast<std::size_t>(std::ceil(l1_max * 200 * std::max(1.0, k)));
    return sign_change_roots(c, 1e-9, l1_max, n);
}

PredictionResult predict_flat_bands(const ChainSpec& spec, double k_max) {
    spec.validate();
    if (!(k_max > 0)) throw std::invalid_argument("k_max must be positive");
    PredictionResult res;
    auto& out = res.predictions;
    const double Ar = spec.reduced_flux();
    const bool integer = is_integer_flux(spec.A, kFluxTol);
    const bool half = is_half_integer_flux(spec.A, kFluxTol);

    const double inv = 1.0 / spec.ell;
    if (dist_to_int(spec.A + inv) <= kFluxTol * std::max(1.0, std::fabs(spec.A) + inv) && inv <= k_max)
        add(out, inv, FlatMechanism::EllInverse, "A + 1/ell integer");

    if (spec.variant != Variant::Loose) {
        if (half)
            for (int n = 1; n - 0.5 <= k_max; ++n)
                add(out, n - 0.5, FlatMechanism::HalfIntegerLadder, "A - 1/2 integer");
        if (integer)
            for (int n = 1; n <= k_max; ++n) add(out, n, FlatMechanism::IntegerLadder, "A integer");
    } else if (half || integer) {
        rational_edge(out, res.notices, "l1", spec.l1, spec.l1_over_pi, half, k_max);
        rational_edge(out, res.notices, "l3", spec.l3, spec.l3_over_pi, half, k_max);
    } else {
        auto F = [&](double k) { return coefficients_loose(spec, SpectralPoint::positive(k)); };
        if (!spec.symmetric()) {
            const double d = std::fabs(kPi - spec.l3);
            for (int m = 1;; ++m) {
                const double k = m * kPi / (2 * d);
                if (k > k_max) break;
                if (dist_to_int(2 * k) < 1e-9) continue;
                const double Ax = exceptional_flux(k, spec.ell, m % 2 == 1 ? Parity::OddM : Parity::EvenM);
                if (dist_to_int(Ax - Ar) > 1e-9) continue;
                if (!F(k).is_flat()) continue;
                add(out, k, FlatMechanism::ExceptionalFlux,
                    "l3 = pi(1 - m/2k) with m=" + std::to_string(m) + ", A exceptional, c = 0");
            }
        } else {
            const double A = spec.A;
            auto a_sym = [&](double k) {
                const double kl = k * spec.ell;
                return (kl * kl + 1) * std::sin(k * kPi) * std::cos(A * kPi) +
                       2 * kl * std::sin(A * kPi) * std::cos(k * kPi);
            };
            const auto n = static_cast<std::size_t>(std::ceil(k_max * 2000));
            for (double k : sign_change_roots(a_sym, 1e-9, k_max, n)) {
                if (auto x = refine_flat_point(F, k, 1e-7))
                    add(out, *x, FlatMechanism::ExceptionalFlux, "symmetric chain, a = 0 and c = 0 at k=" + fmt(*x));
            }
        }
    }

    std::sort(out.begin(), out.end(),
              [](const FlatBandPrediction& x, const FlatBandPrediction& y) { return x.k_value < y.k_value; });
    std::vector<FlatBandPrediction> merged;
    for (const auto& p : out) {
        if (!merged.empty() && std::fabs(merged.back().k_value - p.k_value) < 1e-9) {
            if (merged.back().provenance.find(p.provenance) == std::string::npos)
                merged.back().provenance += "; " + p.provenance;
            continue;
        }
        merged.push_back(p);
    }
    out = std::move(merged);
    return res;
}

}  // namespace ringchain
