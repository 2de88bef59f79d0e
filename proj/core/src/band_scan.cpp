#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ringchain/band_structure.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/parallel.hpp"
#include "scan_internal.hpp"

namespace ringchain {

namespace {

constexpr int kMaxIter = 80;
constexpr int kMaxDepth = 12;

struct UV {
    double u = 0.0;
    double v = 0.0;
};

bool pos(double x) { return x >= 0.0; }
bool member(const UV& e) { return e.u >= 0.0 && e.v >= 0.0; }

// boundary of a piece; `w` is the achieved bracket width (0 on grid points)
struct Piece {
    double x0, x1;
    double w0, w1;
    bool in;
};

struct Cut {
    double x;
    double w;
    int which;  // 0: r - c, 1: r + c
};

struct ChunkOut {
    std::vector<Piece> pieces;
    std::vector<Cut> cuts;
    std::vector<double> unresolved;
};

class CellScanner {
public:
    CellScanner(const std::function<SpectralCoefficients(double)>& F, double tol, ChunkOut& out)
        : F_(F), tol_(tol), out_(out) {}

    UV eval(double x) const {
        const auto co = F_(x);
        const double r = std::hypot(co.a, co.b);
        return {r - co.c, r + co.c};
    }

    void cell(double xa, const UV& ea, double xb, const UV& eb, int depth) {
        const double xm = 0.5 * (xa + xb);
        const UV em = eval(xm);
        const bool hidden_u = pos(ea.u) == pos(eb.u) && pos(em.u) != pos(ea.u);
        const bool hidden_v = pos(ea.v) == pos(eb.v) && pos(em.v) != pos(ea.v);
        if (hidden_u || hidden_v) {
            if (depth < kMaxDepth && xm > xa && xm < xb) {
                cell(xa, ea, xm, em, depth + 1);
                cell(xm, em, xb, eb, depth + 1);
                return;
            }
            out_.unresolved.push_back(xm);
        }
        std::vector<Cut> cuts;
        if (pos(ea.u) != pos(eb.u)) cuts.push_back(bisect(xa, ea, xb, 0));
        if (pos(ea.v) != pos(eb.v)) cuts.push_back(bisect(xa, ea, xb, 1));
        std::sort(cuts.begin(), cuts.end(), [](const Cut& p, const Cut& q) { return p.x < q.x; });
        if (cuts.empty()) {
            push({xa, xb, 0.0, 0.0, member(em)});
            return;
        }
        double x0 = xa, w0 = 0.0;
        for (std::size_t i = 0; i <= cuts.size(); ++i) {
            const double x1 = i < cuts.size() ? cuts[i].x : xb;
            const double w1 = i < cuts.size() ? cuts[i].w : 0.0;
            bool in;
            if (i == 0)
                in = member(ea);
            else if (i == cuts.size())
                in = member(eb);
            else
                in = member(eval(0.5 * (x0 + x1)));
            push({x0, x1, w0, w1, in});
            x0 = x1;
            w0 = w1;
        }
        for (const auto& c : cuts) out_.cuts.push_back(c);
    }

private:
    Cut bisect(double lo, const UV& elo, double hi, int which) const {
        const bool slo = which == 0 ? pos(elo.u) : pos(elo.v);
        for (int it = 0; it < kMaxIter && hi - lo > tol_; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const UV em = eval(mid);
            const bool sm = which == 0 ? pos(em.u) : pos(em.v);
            if (sm == slo)
                lo = mid;
            else
                hi = mid;
        }
        return {0.5 * (lo + hi), hi - lo, which};
    }

    void push(const Piece& p) {
        if (p.x1 <= p.x0 && !out_.pieces.empty()) {
            // zero-length piece: keep its boundary information only
            out_.pieces.back().w1 = std::max(out_.pieces.back().w1, p.w1);
            return;
        }
        if (!out_.pieces.empty() && out_.pieces.back().in == p.in) {
            out_.pieces.back().x1 = p.x1;
            out_.pieces.back().w1 = p.w1;
            return;
        }
        out_.pieces.push_back(p);
    }

    const std::function<SpectralCoefficients(double)>& F_;
    double tol_;
    ChunkOut& out_;
};

}  // namespace

double flat_merit(const SpectralCoefficients& co) {
    return std::max({std::fabs(co.a), std::fabs(co.b), std::fabs(co.c)}) / co.scale;
}

double golden_minimize(const std::function<double(double)>& f, double a, double b, int iters) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 0; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
        if (!(x1 > a && x2 < b)) break;
    }
    return f1 <= f2 ? x1 : x2;
}

std::optional<double> refine_flat_point(const std::function<SpectralCoefficients(double)>& F, double x,
                                        double halfwidth) {
    const double lo = std::max(x - halfwidth, x * 0.5);
    const double xm = golden_minimize([&](double t) { return flat_merit(F(t)); }, lo, x + halfwidth, 200);
    double best = xm;
    double bm = flat_merit(F(xm));
    for (double t : {x, lo, x + halfwidth}) {
        const double m = flat_merit(F(t));
        if (m < bm) {
            bm = m;
            best = t;
        }
    }
    if (F(best).is_flat()) return best;
    return std::nullopt;
}

std::string to_string(BandKind k) { return k == BandKind::Continuous ? "continuous" : "flat"; }

std::size_t default_grid_points(double range) {
    return std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(range * kDefaultPointsPerUnit)));
}

ScanResult scan_spectrum(const std::function<SpectralCoefficients(double)>& F, double lo, double hi,
                         std::size_t grid_points, double edge_tol) {
    if (!(hi > lo) || lo < 0) throw std::invalid_argument("scan range must satisfy 0 <= lo < hi");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
    if (!(edge_tol > 0)) throw std::invalid_argument("edge_tol must be positive");
    const std::size_t N = grid_points - 1;
    const double h = (hi - lo) / static_cast<double>(N);
    const double x0 = lo > 0 ? lo : 1e-3 * h;
    auto grid = [&](std::size_t i) {
        if (i == N) return hi;
        return x0 + (hi - x0) * static_cast<double>(i) / static_cast<double>(N);
    };

    const std::size_t cells_per_chunk = 2048;
    const std::size_t nchunks = (N + cells_per_chunk - 1) / cells_per_chunk;
    std::vector<ChunkOut> outs(nchunks);
    parallel_for(nchunks, [&](std::size_t c) {
        CellScanner sc(F, edge_tol, outs[c]);
        const std::size_t i0 = c * cells_per_chunk;
        const std::size_t i1 = std::min(N, i0 + cells_per_chunk);
        double xa = grid(i0);
        UV ea = sc.eval(xa);
        for (std::size_t i = i0; i < i1; ++i) {
            const double xb = grid(i + 1);
            const UV eb = sc.eval(xb);
            sc.cell(xa, ea, xb, eb, 0);
            xa = xb;
            ea = eb;
        }
    });

    // deterministic sequential reduce
    std::vector<Piece> pieces;
    std::vector<Cut> cuts;
    std::vector<double> unresolved;
    for (auto& o : outs) {
        for (const auto& p : o.pieces) {
            if (!pieces.empty() && pieces.back().in == p.in) {
                pieces.back().x1 = p.x1;
                pieces.back().w1 = p.w1;
            } else {
                pieces.push_back(p);
            }
        }
        cuts.insert(cuts.end(), o.cuts.begin(), o.cuts.end());
        unresolved.insert(unresolved.end(), o.unresolved.begin(), o.unresolved.end());
    }

    ScanResult res;
    const double tiny = 16 * edge_tol;
    std::vector<double> flats;
    auto try_flat = [&](double x) {
        for (double f : flats)
            if (std::fabs(f - x) <= tiny) return true;
        if (auto fx = refine_flat_point(F, x, std::max(tiny, 4 * edge_tol))) {
            flats.push_back(*fx);
            return true;
        }
        return false;
    };

    for (const auto& p : pieces) {
        if (!p.in) continue;
        Band b{p.x0, p.x1, BandKind::Continuous, std::max(p.w0, p.w1), false};
        if (p.x1 - p.x0 <= tiny && try_flat(0.5 * (p.x0 + p.x1))) continue;
        res.bands.push_back(b);
    }
    // coincident crossings of r - c and r + c inside a gap: isolated flat points
    std::sort(cuts.begin(), cuts.end(), [](const Cut& p, const Cut& q) { return p.x < q.x; });
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i].which == cuts[i + 1].which || cuts[i + 1].x - cuts[i].x > tiny) continue;
        const double xm = 0.5 * (cuts[i].x + cuts[i + 1].x);
        bool inside = false;
        for (const auto& b : res.bands)
            if (xm > b.lo + tiny && xm < b.hi - tiny) inside = true;
        if (!inside) try_flat(xm);
    }
    for (double f : flats) {
        bool inside = false;
        for (const auto& b : res.bands)
            if (b.kind == BandKind::Continuous && f >= b.lo && f <= b.hi) inside = true;
        if (!inside) res.bands.push_back({f, f, BandKind::FlatPoint, 0.0, false});
    }
    std::sort(res.bands.begin(), res.bands.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
    if (!res.bands.empty() && res.bands.back().hi >= hi) res.bands.back().truncated = true;

    if (!unresolved.empty()) {
        std::ostringstream os;
        os.precision(10);
        os << "grid too coarse: " << unresolved.size()
           << " cell(s) with unresolved sign changes (first near x=" << unresolved.front()
           << "); rerun with at least " << 4 * grid_points << " grid points";
        res.warnings.push_back(os.str());
    }
    return res;
}

ScanResult scan_bands_range(const ChainSpec& spec, double k_lo, double k_hi, std::size_t grid_points,
                            double edge_tol) {
    spec.validate();
    if (grid_points == 0) grid_points = default_grid_points(k_hi - k_lo);
    return scan_spectrum([&](double k) { return coefficients(spec, SpectralPoint::positive(k)); }, k_lo, k_hi,
                         grid_points, edge_tol);
}

ScanResult scan_bands(const ChainSpec& spec, double k_max, std::size_t grid_points, double edge_tol) {
    if (!(k_max > 0)) throw std::invalid_argument("k_max must be positive");
    return scan_bands_range(spec, 0.0, k_max, grid_points, edge_tol);
}

std::size_t negative_band_cap(Variant v) { return v == Variant::Loose ? 2 : 1; }

ScanResult find_negative_bands(const ChainSpec& spec, double kappa_max, std::size_t grid_points,
                               double edge_tol) {
    spec.validate();
    if (!(kappa_max > 0)) throw std::invalid_argument("kappa_max must be positive");
    if (grid_points == 0) grid_points = default_grid_points(kappa_max);
    auto res = scan_spectrum([&](double x) { return coefficients(spec, SpectralPoint::negative(x)); }, 0.0,
                             kappa_max, grid_points, edge_tol);
    const std::size_t cap = negative_band_cap(spec.variant);
    if (res.bands.size() > cap) {
        std::ostringstream os;
        os << "found " << res.bands.size() << " negative bands for " << spec.summary() << ", at most " << cap
           << " allowed";
        throw NumericalError(os.str());
    }
    return res;
}

}  // namespace ringchain
