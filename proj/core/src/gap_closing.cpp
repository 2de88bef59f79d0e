#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ringchain/band_structure.hpp"
#include "scan_internal.hpp"

namespace ringchain {

namespace {

ChainSpec with_param(const ChainSpec& s, SweepParam p, double v) {
    return p == SweepParam::L1 ? s.with_l1(v) : s.with_l3(v);
}

double depth(const SpectralCoefficients& co) {
    const double r = std::hypot(co.a, co.b);
    return std::min(r - co.c, r + co.c) / co.scale;
}

struct LocalGap {
    double width = 0.0;  // 0 when no gap
    double k = 0.0;      // deepest point
    double depth = 0.0;  // min over k of min(r - c, r + c) / S
};

// Gap nearest to kc within [kc - half, kc + half], resolved by bisection
// outward from the deepest point so arbitrarily thin gaps are measured.
LocalGap local_gap(const ChainSpec& s, double kc, double half) {
    auto F = [&](double k) { return coefficients(s, SpectralPoint::positive(k)); };
    const int n = 400;
    const double lo = std::max(kc - half, 1e-6), hi = kc + half;
    const double h = (hi - lo) / n;
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double d = depth(F(lo + h * i));
        const double w = std::fabs(lo + h * i - kc) * 1e-12;  // prefer the one nearest kc
        if (d + w < bd) {
            bd = d + w;
            best = i;
        }
    }
    const double a = lo + h * std::max(0, best - 1), b = lo + h * std::min(n, best + 1);
    LocalGap g;
    g.k = golden_minimize([&](double k) { return depth(F(k)); }, a, b, 120);
    g.depth = depth(F(g.k));
    if (g.depth >= 0) return g;
    auto edge = [&](double inside, double outside) {
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (inside + outside);
            if (m == inside || m == outside) break;
            if (depth(F(m)) < 0)
                inside = m;
            else
                outside = m;
        }
        return 0.5 * (inside + outside);
    };
    // walk outward on the grid to bracket the gap edges
    double left = g.k, right = g.k;
    while (left > lo && depth(F(left)) < 0) left = std::max(lo, left - h);
    while (right < hi && depth(F(right)) < 0) right = std::min(hi, right + h);
    g.width = edge(g.k, right) - edge(g.k, left);
    return g;
}

std::vector<std::pair<double, double>> gaps_of(const ScanResult& r, double k_lo, double k_hi) {
    std::vector<std::pair<double, double>> out;
    const Band* prev = nullptr;
    for (const auto& b : r.bands) {
        if (b.kind != BandKind::Continuous) continue;
        if (prev && prev->hi > k_lo && b.lo < k_hi) out.emplace_back(prev->hi, b.lo);
        prev = &b;
    }
    return out;
}

}  // namespace

std::vector<GapTouch> gap_closing_search(const ChainSpec& spec, SweepParam param, double p_lo, double p_hi,
                                         double k_lo, double k_hi, const GapSearchOptions& opt) {
    if (!(p_hi > p_lo)) throw std::invalid_argument("parameter window must be nonempty");
    if (!(k_hi > k_lo) || !(k_lo >= 0)) throw std::invalid_argument("k window must be nonempty");
    const std::size_t ns = std::max<std::size_t>(opt.samples, 3);
    const double dp = (p_hi - p_lo) / static_cast<double>(ns - 1);
    auto pval = [&](std::size_t i) { return p_lo + dp * static_cast<double>(i); };
    const double half = std::min(0.05, 0.25 * (k_hi - k_lo));
    const auto grid = static_cast<std::size_t>(std::max(64.0, (k_hi - k_lo) * opt.points_per_unit));

    std::vector<GapTouch> touches;
    for (std::size_t i = 0; i < ns; ++i) {
        const ChainSpec s = with_param(spec, param, pval(i));
        const auto gaps = gaps_of(scan_bands_range(s, k_lo, k_hi, grid), k_lo, k_hi);
        for (const auto& [glo, ghi] : gaps) {
            const double kc = 0.5 * (glo + ghi);
            const double w0 = local_gap(s, kc, half).width;
            const double pa = i > 0 ? pval(i - 1) : pval(i);
            const double pb = i + 1 < ns ? pval(i + 1) : pval(i);
            const double wa = i > 0 ? local_gap(with_param(spec, param, pa), kc, half).width : w0;
            const double wb = i + 1 < ns ? local_gap(with_param(spec, param, pb), kc, half).width : w0;
            if (w0 > wa || w0 > wb) continue;
            if (wa == w0 && wb == w0) continue;  // flat profile, no V
            auto W = [&](double p) { return local_gap(with_param(spec, param, p), kc, half).width; };
            const double ps = golden_minimize(W, pa, pb, 80);
            const ChainSpec st = with_param(spec, param, ps);
            const LocalGap g = local_gap(st, kc, half);
            if (g.width >= opt.touch_tol || std::fabs(g.depth) > 1e-6) continue;

            bool dup = false;
            for (const auto& t : touches)
                if (std::fabs(t.param - ps) < 1e-6 && std::fabs(t.k - g.k) < 1e-6) dup = true;
            if (dup) continue;

            GapTouch t;
            t.param = ps;
            t.k = g.k;
            t.gap_width = g.width;
            const auto co = coefficients(st, SpectralPoint::positive(g.k));
            const double hk = 1e-6 * std::max(1.0, g.k);
            const auto cp = coefficients(st, SpectralPoint::positive(g.k + hk));
            const auto cm = coefficients(st, SpectralPoint::positive(g.k - hk));
            if (co.is_flat()) {
                // conical touch: the quasimomentum where the k-derivative vanishes
                SpectralCoefficients dk{(cp.a - cm.a) / (2 * hk), (cp.b - cm.b) / (2 * hk), (cp.c - cm.c) / (2 * hk),
                                        co.scale};
                const auto sol = dispersion_theta(dk, 0.0);
                t.theta = sol.thetas.empty() ? 0.0 : sol.thetas.front();
                t.note = "touch at a flat point";
            } else {
                const auto vt = std::atan2(co.a, co.b);
                t.theta = wrap((co.c >= 0 ? kPi / 2 : -kPi / 2) - vt + kPi, kTwoPi) - kPi;
                t.note = "tangential touch";
            }
            if (g.width < 1e-9)
                t.note += "; width below 1e-9 after refinement, reported as touching (a gap of this width is "
                          "numerically indistinguishable)";
            const double th = t.theta;
            t.dDelta_dtheta = (-co.a * std::sin(th) + co.b * std::cos(th)) / co.scale;
            t.dDelta_dk = (cp.delta(th) - cm.delta(th)) / (2 * hk) / co.scale;
            const double hp = 1e-6 * std::max(1.0, std::fabs(ps));
            const auto pp = coefficients(with_param(spec, param, ps + hp), SpectralPoint::positive(g.k));
            const auto pm = coefficients(with_param(spec, param, ps - hp), SpectralPoint::positive(g.k));
            t.dDelta_dparam = (pp.delta(th) - pm.delta(th)) / (2 * hp) / co.scale;
            touches.push_back(t);
        }
    }
    std::sort(touches.begin(), touches.end(), [](const GapTouch& a, const GapTouch& b) { return a.param < b.param; });
    return touches;
}

}  // namespace ringchain
