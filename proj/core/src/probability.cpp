#include "ringchain/probability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ringchain/band_structure.hpp"
#include "ringchain/parallel.hpp"

namespace ringchain {

namespace {

std::string describe(const ChainSpec& s, const std::string& extra) {
    return s.summary() + " " + extra;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// roots of the factors in (0, T], found by sampling with step h and bisection
std::vector<double> factor_roots(const std::vector<std::function<double(double)>>& factors, double T, double h) {
    std::vector<double> roots;
    const auto n = static_cast<std::size_t>(std::ceil(T / h));
    for (const auto& f : factors) {
        double xa = 0.0, fa = f(xa);
        for (std::size_t i = 1; i <= n; ++i) {
            const double xb = T * static_cast<double>(i) / static_cast<double>(n);
            const double fb = f(xb);
            if ((fa < 0) != (fb < 0)) {
                double a = xa, b = xb;
                const bool sa = fa < 0;
                for (int it = 0; it < 100; ++it) {
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
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// fraction of (0, T] where the product of the factors is >= 0
double nonnegative_fraction(const std::vector<std::function<double(double)>>& factors, double T, double h,
                            std::size_t* nroots) {
    const auto roots = factor_roots(factors, T, h);
    if (nroots) *nroots = roots.size();
    auto prod = [&](double x) {
        double p = 1.0;
        for (const auto& f : factors) p *= f(x);
        return p;
    };
    double acc = 0.0, x0 = 0.0;
    for (std::size_t i = 0; i <= roots.size(); ++i) {
        const double x1 = i < roots.size() ? roots[i] : T;
        if (x1 > x0 && prod(0.5 * (x0 + x1)) >= 0) acc += x1 - x0;
        x0 = x1;
    }
    return acc / T;
}

struct TorusCount {
    std::int64_t in = 0;
    std::int64_t total = 0;
};

TorusCount torus_grid(Variant v, double A, std::size_t N) {
    const double h = kTwoPi / static_cast<double>(N);
    std::vector<double> sx(N), cx(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * h;
        sx[i] = std::sin(x);
        cx[i] = std::cos(x);
    }
    const double calA = std::cos(2 * A * kPi);
    const std::size_t chunk = 64;
    const std::size_t nch = (N + chunk - 1) / chunk;
    std::vector<std::int64_t> counts(nch, 0);
    parallel_for(nch, [&](std::size_t c) {
        std::int64_t cnt = 0;
        for (std::size_t j = c * chunk; j < std::min(N, (c + 1) * chunk); ++j) {
            const double y = (static_cast<double>(j) + 0.5) * h;
            const double s2y = std::sin(2 * y), c2y = std::cos(2 * y);
            if (v == Variant::Tight) {
                const double P = std::sin(y - A * kPi) * std::sin(y + A * kPi);
                for (std::size_t i = 0; i < N; ++i) {
                    const double val = P * sx[i] * (s2y * cx[i] - c2y * sx[i]);
                    cnt += val >= 0;
                }
            } else {
                const double q = s2y * s2y;
                for (std::size_t i = 0; i < N; ++i) {
                    const double t = sx[i] * c2y + cx[i] * s2y - calA * sx[i];
                    cnt += q - t * t >= 0;
                }
            }
        }
        counts[c] = cnt;
    });
    TorusCount out;
    for (auto c : counts) out.in += c;
    out.total = static_cast<std::int64_t>(N) * static_cast<std::int64_t>(N);
    return out;
}

bool torus_condition(Variant v, double A, double x, double y) {
    if (v == Variant::Tight)
        return std::sin(y - A * kPi) * std::sin(y + A * kPi) * std::sin(x) * std::sin(2 * y - x) >= 0;
    const double s = std::sin(2 * y);
    const double t = std::sin(x + 2 * y) - std::cos(2 * A * kPi) * std::sin(x);
    return s * s - t * t >= 0;
}

}  // namespace

std::string to_string(ProbMethod m) {
    switch (m) {
        case ProbMethod::Scan: return "scan";
        case ProbMethod::Periodic: return "periodic";
        case ProbMethod::Torus: return "torus";
        case ProbMethod::ClosedForm: return "closed";
    }
    return "?";
}

double indicator_value(const ChainSpec& spec, double k) {
    const double A = spec.A;
    switch (spec.variant) {
        case Variant::Tight:
            return std::sin((k - A) * kPi) * std::sin((A + k) * kPi) * std::sin(k * spec.l3) * std::sin(k * spec.l2());
        case Variant::Merged: {
            const double s = std::sin(2 * k * kPi);
            const double t = std::sin(k * (spec.l1 + kTwoPi)) - std::cos(2 * A * kPi) * std::sin(k * spec.l1);
            return s * s - t * t;
        }
        case Variant::Loose: {
            const double kl = k * spec.ell;
            const double s1 = std::sin(k * spec.l1), s2 = std::sin(k * spec.l2()), s3 = std::sin(k * spec.l3);
            return -16 * std::pow(kl, 8) * s1 * s1 * s2 * s2 * s3 * s3;
        }
    }
    return 0.0;
}

int asymptotic_indicator(const ChainSpec& spec, double k) {
    const double v = indicator_value(spec, k);
    return (v > 0) - (v < 0);
}

ProbabilityEstimate scan_probability_range(const ChainSpec& spec, double lo, double hi, double points_per_unit) {
    if (!(hi > lo) || lo < 0) throw std::invalid_argument("probability range must satisfy 0 <= lo < hi");
    if (!(points_per_unit > 0)) throw std::invalid_argument("points_per_unit must be positive");
    const auto grid = static_cast<std::size_t>(std::max(64.0, std::ceil((hi - lo) * points_per_unit)));
    const auto res = scan_bands_range(spec, lo, hi, grid);
    const double mid = 0.5 * (lo + hi);
    double cover = 0.0, cover_half = 0.0, tol = 0.0;
    for (const auto& b : res.bands) {
        cover += std::min(b.hi, hi) - std::max(b.lo, lo);
        if (b.lo < mid) cover_half += std::min(b.hi, mid) - std::max(b.lo, lo);
        tol += 2 * b.edge_tol;
    }
    ProbabilityEstimate e;
    e.method = ProbMethod::Scan;
    e.value = std::clamp(cover / (hi - lo), 0.0, 1.0);
    e.cross_check = cover_half / (mid - lo);
    const double h = (hi - lo) / static_cast<double>(grid);
    // edge tolerance, one cell per boundary band, and the drift between halves
    e.error_bound = (tol + 2 * h) / (hi - lo) + std::fabs(e.value - *e.cross_check);
    std::ostringstream os;
    os.precision(17);
    os << "range=(" << lo << "," << hi << "] grid=" << grid;
    e.inputs = describe(spec, os.str());
    return e;
}

ProbabilityEstimate scan_probability(const ChainSpec& spec, double K, double points_per_unit) {
    if (!(K > 0)) throw std::invalid_argument("K must be positive");
    return scan_probability_range(spec, 0.0, K, points_per_unit);
}

ProbabilityEstimate periodic_probability(Variant v, double A, Rational ratio) {
    ratio = make_rational(ratio.p, ratio.q);
    if (ratio.p <= 0 || ratio.q <= 0) throw std::invalid_argument("ratio must be a positive fraction p/q");
    if (ratio.p > kMaxPeriodicDenominator || ratio.q > kMaxPeriodicDenominator)
        throw std::invalid_argument("ratio " + ratio.str() +
                                    " exceeds the periodic-analysis bound; use scan_probability instead");
    const auto p = static_cast<double>(ratio.p), q = static_cast<double>(ratio.q);
    std::vector<std::function<double(double)>> factors;
    double T = 0.0, h = 0.0;
    std::ostringstream os;
    os.precision(17);
    if (v == Variant::Tight) {
        // l2 / l3 = p / q with l2 + l3 = 2pi
        const double l3 = kTwoPi * q / (p + q), l2 = kTwoPi * p / (p + q);
        T = p + q;
        h = 1.0 / 16;
        factors = {[A](double k) { return std::sin((k - A) * kPi); },
                   [A](double k) { return std::sin((k + A) * kPi); },
                   [l3](double k) { return std::sin(k * l3); },
                   [l2](double k) { return std::sin(k * l2); }};
        os << "tight A=" << A << " l2/l3=" << ratio.str() << " period=" << T;
    } else if (v == Variant::Merged) {
        const double l1 = kPi * p / q;
        const double calA = std::cos(2 * A * kPi);
        T = 2 * q;
        h = 1.0 / (64 * (2 + l1 / kPi));
        auto t = [l1, calA](double k) { return std::sin(k * (l1 + kTwoPi)) - calA * std::sin(k * l1); };
        factors = {[t](double k) { return std::sin(2 * k * kPi) - t(k); },
                   [t](double k) { return std::sin(2 * k * kPi) + t(k); }};
        os << "merged A=" << A << " l1/pi=" << ratio.str() << " period=" << T;
    } else {
        throw std::invalid_argument("periodic probability is defined for tight and merged chains");
    }
    if (T > 2.0 * kMaxPeriodicDenominator)
        throw std::invalid_argument("period too long for exact analysis; use scan_probability instead");
    std::size_t nroots = 0;
    ProbabilityEstimate e;
    e.method = ProbMethod::Periodic;
    e.value = nonnegative_fraction(factors, T, h, &nroots);
    e.error_bound = static_cast<double>(nroots) * 1e-13 / T;
    e.inputs = os.str();
    return e;
}

ProbabilityEstimate torus_probability(Variant v, double A, std::size_t resolution, std::size_t mc_samples,
                                      std::uint64_t seed) {
    if (v == Variant::Loose) throw std::invalid_argument("torus probability is defined for tight and merged chains");
    if (resolution < 100) throw std::invalid_argument("resolution must be at least 100 per axis");
    const auto full = torus_grid(v, A, resolution);
    const auto half = torus_grid(v, A, resolution / 2);
    const double q = static_cast<double>(full.in) / static_cast<double>(full.total);
    const double qh = static_cast<double>(half.in) / static_cast<double>(half.total);

    double bound = std::fabs(q - qh);
    ProbabilityEstimate e;
    e.method = ProbMethod::Torus;
    e.value = q;
    if (mc_samples > 0) {
        const std::size_t nch = 64;
        std::vector<std::int64_t> hits(nch, 0);
        parallel_for(nch, [&](std::size_t c) {
            std::mt19937_64 g(splitmix64(seed ^ splitmix64(c)));
            const std::size_t n = mc_samples / nch + (c < mc_samples % nch ? 1 : 0);
            std::int64_t cnt = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double x = kTwoPi * unit(g);
                const double y = kTwoPi * unit(g);
                cnt += torus_condition(v, A, x, y);
            }
            hits[c] = cnt;
        });
        std::int64_t tot = 0;
        for (auto hcount : hits) tot += hcount;
        const double mc = static_cast<double>(tot) / static_cast<double>(mc_samples);
        e.cross_check = mc;
        bound = std::max(bound, 3 * std::sqrt(mc * (1 - mc) / static_cast<double>(mc_samples)));
    }
    e.error_bound = bound;
    std::ostringstream os;
    os.precision(17);
    os << to_string(v) << " A=" << A << " resolution=" << resolution << " mc=" << mc_samples << " seed=" << seed;
    e.inputs = os.str();
    return e;
}

AreaEstimate first_octant_area(double A, std::size_t resolution) {
    if (resolution < 100) throw std::invalid_argument("resolution must be at least 100");
    const double calA = std::cos(2 * A * kPi);
    auto measure = [&](std::size_t nx) {
        const double hx = kPi / static_cast<double>(nx);
        std::vector<double> col(nx);
        parallel_for(nx, [&](std::size_t i) {
            const double x = (static_cast<double>(i) + 0.5) * hx;
            const double sx = std::sin(x);
            auto t = [&](double y) { return std::sin(x + 2 * y) - calA * sx; };
            const std::vector<std::function<double(double)>> f = {
                [&](double y) { return std::sin(2 * y) - t(y); }, [&](double y) { return std::sin(2 * y) + t(y); }};
            col[i] = nonnegative_fraction(f, kPi / 2, kPi / 2 / 256, nullptr) * (kPi / 2);
        });
        double s = 0.0, comp = 0.0;
        for (double v : col) {
            const double y = v * hx - comp;
            const double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        return s;
    };
    AreaEstimate a;
    a.value = measure(resolution);
    a.error_bound = std::fabs(a.value - measure(resolution / 2));
    return a;
}

ProbabilityEstimate closed_form_probability(Variant v, double A, bool symmetric) {
    ProbabilityEstimate e;
    e.method = ProbMethod::ClosedForm;
    e.error_bound = 0.0;
    std::ostringstream os;
    os.precision(17);
    os << to_string(v) << " A=" << A << (symmetric ? " symmetric" : " incommensurate");
    e.inputs = os.str();
    switch (v) {
        case Variant::Loose: e.value = 0.0; break;
        case Variant::Merged: e.value = 0.5; break;
        case Variant::Tight:
            if (symmetric) {
                e.value = 1.0 - std::acos(std::clamp(std::cos(2 * A * kPi), -1.0, 1.0)) / kPi;
            } else {
                const double a = wrap(A, 0.5);
                e.value = 0.5 + 2 * a - 4 * a * a;
            }
            break;
    }
    return e;
}

UniversalityReport universality_check(Variant v, double A, const std::vector<ChainSpec>& geometries,
                                      const UniversalityOptions& opt) {
    if (geometries.size() < 2) throw std::invalid_argument("universality check needs at least two geometries");
    if (v == Variant::Loose) throw std::invalid_argument("universality check covers tight and merged chains");
    UniversalityReport rep;
    const auto torus = torus_probability(v, A, opt.resolution, opt.mc_samples);
    const auto closed = closed_form_probability(v, A, false);
    rep.routes.push_back({"any", ProbMethod::Torus, torus.value, torus.error_bound});
    rep.routes.push_back({"any", ProbMethod::ClosedForm, closed.value, 0.0});
    for (const auto& g : geometries) {
        if (g.variant != v) throw std::invalid_argument("geometry variant does not match the requested variant");
        const ChainSpec s = g.with_flux(A);
        const auto sc = scan_probability(s, opt.K, opt.points_per_unit);
        rep.routes.push_back({s.summary(), ProbMethod::Scan, sc.value, sc.error_bound});
    }
    for (std::size_t i = 0; i < rep.routes.size(); ++i)
        for (std::size_t j = i + 1; j < rep.routes.size(); ++j) {
            const auto& x = rep.routes[i];
            const auto& y = rep.routes[j];
            const double allowed = x.error_bound + y.error_bound + opt.slack;
            if (std::fabs(x.value - y.value) > allowed) {
                std::ostringstream os;
                os.precision(10);
                os << to_string(x.method) << "[" << x.geometry << "]=" << x.value << " vs " << to_string(y.method)
                   << "[" << y.geometry << "]=" << y.value << " differ by more than " << allowed;
                rep.failures.push_back(os.str());
            }
        }
    return rep;
}

}  // namespace ringchain
