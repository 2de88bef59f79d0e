// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ringchain/band_structure.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/floquet_oracle.hpp"
#include "ringchain/probability.hpp"

using namespace ringchain;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

bool same_bands(const ScanResult& x, const ScanResult& y, double tol) {
    if (x.bands.size() != y.bands.size()) return false;
    for (std::size_t i = 0; i < x.bands.size(); ++i)
        if (x.bands[i].kind != y.bands[i].kind || std::fabs(x.bands[i].lo - y.bands[i].lo) > tol ||
            std::fabs(x.bands[i].hi - y.bands[i].hi) > tol)
            return false;
    return true;
}

Outcome tight_torus() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0, at_quarter = 0, at_zero = 0, at_half = 0;
    for (int i = 0; i <= 20; ++i) {
        const double A = 0.025 * i;
        const double v = torus_probability(Variant::Tight, A, 4000).value;
        worst = std::max(worst, std::fabs(v - (0.5 + 2 * A - 4 * A * A)));
        if (i == 10) at_quarter = v;
        if (i == 0) at_zero = v;
        if (i == 20) at_half = v;
    }
    const double t = seconds_since(t0);
    const bool ok = worst <= 1e-3 && t < 60 && std::fabs(at_quarter - 0.75) <= 1e-3 &&
                    std::fabs(at_zero - 0.5) <= 1e-3 && std::fabs(at_half - 0.5) <= 1e-3;
    return {ok, "max |torus - (1/2+2A-4A^2)| = " + num(worst) + " over 21 A-values; P(1/4) = " + num(at_quarter) +
                    ", P(0) = " + num(at_zero) + ", P(1/2) = " + num(at_half) + "; " + num(t, 3) + " s"};
}

Outcome symmetric_closed_form() {
    double worst = 0;
    double p0 = -1, ph = -1;
    for (int i = 0; i <= 20; ++i) {
        const double A = 0.025 * i;
        const double v = periodic_probability(Variant::Tight, A, make_rational(1, 1)).value;
        worst = std::max(worst, std::fabs(v - (1 - std::acos(std::cos(2 * A * kPi)) / kPi)));
        if (i == 0) p0 = v;
        if (i == 20) ph = v;
    }
    const bool ok = worst <= 1e-6 && std::fabs(p0 - 1) <= 1e-6 && std::fabs(ph) <= 1e-6;
    return {ok, "max deviation " + num(worst) + " on 21 A-values; P(0) = " + num(p0) + ", P(1/2) = " + num(ph)};
}

Outcome merged_universality() {
    double worst = 0;
    for (double A : {0.0, 0.1, 0.25, 0.4})
        worst = std::max(worst, std::fabs(torus_probability(Variant::Merged, A, 4000).value - 0.5));
    const auto area = first_octant_area(0.0, 4000);
    const double darea = std::fabs(area.value - kPi * kPi / 4);
    return {worst <= 1e-3 && darea <= 1e-4,
            "max |torus - 1/2| = " + num(worst) + "; first-octant area " + num(area.value, 12) + " vs pi^2/4, diff " +
                num(darea)};
}

Outcome rational_plateau() {
    // convergents of sqrt(2) for l2/l3
    std::string d;
    bool ok = true;
    for (auto r : {make_rational(3363, 2378), make_rational(19601, 13860), make_rational(114243, 80782)}) {
        const double v = periodic_probability(Variant::Tight, 0.25, r).value;
        ok = ok && std::fabs(v - 0.75) < 0.01;
        d += r.str() + " -> " + num(v, 8) + "; ";
    }
    return {ok, d};
}

Outcome flat_bands() {
    bool ok = true;
    std::string d;
    {
        const auto s = ChainSpec::loose(1, 2 * kPi / 3, 2, 0.5);
        const auto hits = detect_flat_bands(s, 2);
        bool found = false;
        for (const auto& h : hits)
            if (std::fabs(h.k - 1.5) < 1e-9 && h.abs_a < 1e-9 * h.scale && h.abs_b < 1e-9 * h.scale &&
                h.abs_c < 1e-9 * h.scale) {
                found = true;
                d += "k=1.5 scaled |a|,|b|,|c| = " + num(h.abs_a / h.scale, 3) + "," + num(h.abs_b / h.scale, 3) +
                     "," + num(h.abs_c / h.scale, 3) + "; ";
            }
        ok = ok && found;
    }
    int ladders = 0;
    for (double free_len : {0.4, 1.7, 3.3, 5.9}) {
        for (const auto& s : {ChainSpec::tight(1, free_len, 0.5), ChainSpec::merged(1, free_len, 0.5)}) {
            const auto hits = detect_flat_bands(s, 5);
            bool good = hits.size() == 5;
            for (std::size_t n = 0; good && n < 5; ++n) good = std::fabs(hits[n].k - (n + 0.5)) < 1e-9;
            ok = ok && good;
            ladders += good;
        }
    }
    d += std::to_string(ladders) + "/8 tight/merged ladders k=n-1/2; ";
    for (const auto& s : {ChainSpec::loose(10.0 / 3, 1.3, 2.1, 0.7), ChainSpec::merged(10.0 / 3, 1.3, 0.7)}) {
        const auto hits = detect_flat_bands(s, 1);
        const bool good = !hits.empty() && std::fabs(hits.front().k - 0.3) < 1e-9;
        ok = ok && good;
        d += to_string(s.variant) + " l=10/3 A=0.7 k=0.3 " + (good ? "found" : "missing") + "; ";
    }
    return {ok, d};
}

Outcome oracle_equivalence() {
    const auto rep = equivalence_report(random_oracle_samples(1000, 20240611), {-2.5, -0.7, 0.4, 1.9}, 1e-7);
    const bool ok = rep.ok() && rep.samples == 1000 && rep.cardinality_mismatches == 0 && rep.location_mismatches == 0;
    return {ok, std::to_string(rep.agreements) + "/" + std::to_string(rep.samples) + " agree, " +
                    std::to_string(rep.failures.size()) + " failures, max location error " +
                    num(rep.max_location_error, 3)};
}

Outcome reductions() {
    const double l = 1.2, l1 = 0.9, l3 = 2.3;
    double worst = 0;
    auto rel = [](double x, double y, double m) { return std::fabs(x - y) / m; };
    for (int i = 0; i < 100; ++i) {
        const double k = 0.05 + 0.1 * i;
        for (double A : {0.0, 1.0, 2.0}) {
            const auto co = coefficients(ChainSpec::loose(l, l1, l3, A), SpectralPoint::positive(k));
            const auto r = oracle::loose_integer_flux(k, l, l1, l3, A);
            const double m = std::max(1.0, std::fabs(co.a) + std::fabs(co.b) + std::fabs(co.c));
            worst = std::max({worst, rel(co.a, r.a, m), rel(co.b, r.b, m), rel(co.c, r.c, m),
                              rel(co.a * co.a + co.b * co.b, oracle::loose_integer_ab_norm(k, l, l3), m * m)});
        }
        for (double A : {0.5, 1.5}) {
            const auto co = coefficients(ChainSpec::loose(l, l1, l3, A), SpectralPoint::positive(k));
            const auto r = oracle::loose_half_flux(k, l, l3, A);
            const double m = std::max(1.0, std::fabs(co.a) + std::fabs(co.b) + std::fabs(co.c));
            worst = std::max({worst, rel(co.a, r.a, m), rel(co.b, r.b, m)});
        }
    }
    return {worst <= 1e-10, "max relative deviation " + num(worst, 3) + " on 100 k-values"};
}

Outcome high_energy() {
    const auto s = ChainSpec::loose(1, std::sqrt(2.0), std::exp(1.0) - 1, 0.2);
    const double f1 = scan_probability_range(s, 100, 200, 4e4).value;
    const double f2 = scan_probability_range(s, 200, 400, 6e4).value;
    const double f3 = scan_probability_range(s, 400, 800, 8e4).value;
    return {f2 < 0.05 && f1 > f2 && f2 > f3,
            "band fractions [100,200] " + num(f1, 3) + ", [200,400] " + num(f2, 3) + ", [400,800] " + num(f3, 3)};
}

Outcome negative_spectrum() {
    std::mt19937_64 g(97);
    bool ok = true;
    std::string d;
    for (Variant v : {Variant::Loose, Variant::Tight, Variant::Merged}) {
        std::size_t most = 0;
        int errors = 0;
        for (int t = 0; t < 100; ++t) {
            const double l = oracle::uniform(g, 0.3, 3);
            const double l1 = v == Variant::Tight ? 0 : oracle::uniform(g, 0.05, 8);
            const double l3 = v == Variant::Merged ? kTwoPi : oracle::uniform(g, 0.05, 6.2);
            const auto s = ChainSpec::make(v, l, l1, l3, oracle::uniform(g, -1, 1));
            try {
                most = std::max(most, find_negative_bands(s, 10 / l, 4000).bands.size());
            } catch (const NumericalError&) {
                ++errors;
            }
        }
        ok = ok && errors == 0 && most <= negative_band_cap(v);
        d += to_string(v) + " max " + std::to_string(most) + " bands; ";
    }
    const auto ts = find_negative_bands(ChainSpec::tight(1, kPi, 0.2), 5);
    const bool contains = ts.bands.size() == 1 && ts.bands[0].lo < 1 && ts.bands[0].hi > 1;
    ok = ok && contains;
    d += std::string("tight symmetric A=0.2 ") + (contains ? "contains" : "misses") + " kappa=1; ";
    const auto m = find_negative_bands(ChainSpec::merged(1, 20, 0.5), 3, 0, 1e-13);
    if (m.bands.size() == 1) {
        const auto& b = m.bands[0];
        const double w = b.hi * b.hi - b.lo * b.lo;
        const double expected = 4 * (1 + std::exp(-2 * kPi)) * std::exp(-20.0);
        const double c = 0.5 * (b.lo + b.hi);
        ok = ok && std::fabs(w / expected - 1) < 0.05 && std::fabs(c - 1) < 1e-3;
        d += "merged l1=20 width " + num(w, 4) + " vs " + num(expected, 4) + ", centre " + num(c, 10);
    } else {
        ok = false;
        d += "merged l1=20: " + std::to_string(m.bands.size()) + " bands";
    }
    return {ok, d};
}

Outcome symmetry_suite() {
    std::mt19937_64 g(313);
    int checks = 0, bad = 0;
    for (Variant v : {Variant::Loose, Variant::Tight, Variant::Merged}) {
        for (int t = 0; t < 8; ++t) {
            const double l = oracle::uniform(g, 0.4, 2);
            const double l1 = v == Variant::Tight ? 0 : oracle::uniform(g, 0.1, 5);
            const double l3 = v == Variant::Merged ? kTwoPi : oracle::uniform(g, 0.1, 6.1);
            const auto s = ChainSpec::make(v, l, l1, l3, oracle::uniform(g, -1, 1));
            const auto base = scan_bands(s, 5);
            ++checks;
            bad += !same_bands(base, scan_bands(s.with_flux(s.A + 1), 5), 1e-8);
            if (v != Variant::Merged) {
                ++checks;
                bad += !same_bands(base, scan_bands(s.with_l3(kTwoPi - l3), 5), 1e-8);
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " disagreements in " + std::to_string(checks) + " band-list comparisons"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"closed-form probability of the tight chain (torus quadrature)", tight_torus},
        {"symmetric tight chain probability by period analysis", symmetric_closed_form},
        {"merged-chain universality and first-octant area", merged_universality},
        {"rational-approximation plateau at A=1/4", rational_plateau},
        {"flat-band detection", flat_bands},
        {"oracle equivalence on 1000 draws", oracle_equivalence},
        {"integer and half-integer flux reductions", reductions},
        {"high-energy gap dominance of the loose chain", high_energy},
        {"negative-spectrum structure", negative_spectrum},
        {"symmetry suite", symmetry_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
