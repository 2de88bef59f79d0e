#include "ringchain/floquet_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ringchain/coefficients.hpp"

namespace ringchain {

namespace {

using Row = std::array<Complex, 12>;
constexpr Complex I{0.0, 1.0};

enum class Side { A, B };

double edge_phase(int j, double A) { return j == 1 ? 0.0 : (j == 2 ? -A : A); }

// psi_j or phi_j evaluated at x, as a row over the 12 coefficients
Row value_row(int j, double x, Side side, Complex k, double A) {
    Row r{};
    const int off = (side == Side::A ? 0 : 6) + 2 * (j - 1);
    const Complex ph = std::exp(I * edge_phase(j, A) * x);
    r[off] = std::exp(I * k * x) * ph;
    r[off + 1] = std::exp(-I * k * x) * ph;
    return r;
}

// quasi-derivative D = d/dx - i A_j; the magnetic phase cancels
Row deriv_row(int j, double x, Side side, Complex k, double A) {
    Row r{};
    const int off = (side == Side::A ? 0 : 6) + 2 * (j - 1);
    const Complex ph = std::exp(I * edge_phase(j, A) * x);
    r[off] = I * k * std::exp(I * k * x) * ph;
    r[off + 1] = -I * k * std::exp(-I * k * x) * ph;
    return r;
}

Row lin(const Row& x, Complex cx, const Row& y, Complex cy) {
    Row r{};
    for (int i = 0; i < 12; ++i) r[i] = cx * x[i] + cy * y[i];
    return r;
}

Row add(const Row& x, const Row& y) { return lin(x, 1.0, y, 1.0); }
Row sub(const Row& x, const Row& y) { return lin(x, 1.0, y, -1.0); }

CellSystem build(const ChainSpec& spec, Complex k, double theta) {
    if (spec.variant != Variant::Loose)
        throw std::invalid_argument("the cell-system oracle covers the loose chain only");
    const double A = spec.A, l1 = spec.l1, l2 = spec.l2(), l3 = spec.l3;
    const Complex e = std::exp(I * theta);
    const Complex il = I * spec.ell;
    auto v = [&](int j, double x, Side s) { return value_row(j, x, s, k, A); };
    auto d = [&](int j, double x, Side s) { return deriv_row(j, x, s, k, A); };

    std::array<Row, 12> rows;
    // Floquet matching across the cell boundary on the arcs
    rows[0] = lin(v(2, l2 / 2, Side::A), 1.0, v(2, -l2 / 2, Side::B), -e);
    rows[1] = lin(d(2, l2 / 2, Side::A), 1.0, d(2, -l2 / 2, Side::B), -e);
    rows[2] = lin(v(3, l3 / 2, Side::A), 1.0, v(3, -l3 / 2, Side::B), -e);
    rows[3] = lin(d(3, l3 / 2, Side::A), 1.0, d(3, -l3 / 2, Side::B), -e);
    // smooth match at the link midpoint
    rows[4] = sub(v(1, 0, Side::A), v(1, 0, Side::B));
    rows[5] = sub(d(1, 0, Side::A), d(1, 0, Side::B));
    // vertex conditions, derivatives taken outward
    rows[6] = add(sub(v(3, 0, Side::A), v(1, l1 / 2, Side::A)),
                  lin(d(3, 0, Side::A), il, d(1, l1 / 2, Side::A), -il));
    rows[7] = add(sub(v(2, 0, Side::A), v(3, 0, Side::A)),
                  lin(d(2, 0, Side::A), il, d(3, 0, Side::A), il));
    rows[8] = add(sub(v(1, l1 / 2, Side::A), v(2, 0, Side::A)),
                  lin(d(2, 0, Side::A), il, d(1, l1 / 2, Side::A), -il));
    rows[9] = add(sub(v(2, 0, Side::B), v(1, -l1 / 2, Side::B)),
                  lin(d(1, -l1 / 2, Side::B), il, d(2, 0, Side::B), -il));
    rows[10] = add(sub(v(3, 0, Side::B), v(2, 0, Side::B)),
                   lin(d(2, 0, Side::B), -il, d(3, 0, Side::B), -il));
    rows[11] = add(sub(v(1, -l1 / 2, Side::B), v(3, 0, Side::B)),
                   lin(d(1, -l1 / 2, Side::B), il, d(3, 0, Side::B), -il));

    CellSystem sys;
    sys.spec = spec;
    sys.k = k;
    sys.theta = theta;
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) sys.at(r, c) = rows[r][c];
    return sys;
}

double circ_dist(double x, double y) {
    const double d = std::fabs(wrap(x - y + kPi, kTwoPi) - kPi);
    return d;
}

std::vector<double> merge_clusters(std::vector<double> t, double tol) {
    std::sort(t.begin(), t.end());
    std::vector<double> out;
    for (double x : t) {
        bool merged = false;
        for (double y : out)
            if (circ_dist(x, y) <= tol) merged = true;
        if (!merged) out.push_back(x);
    }
    return out;
}

double uniform(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace

CellSystem build_cell_system(const ChainSpec& spec, double k, double theta) {
    if (!(k > 0)) throw std::invalid_argument("k must be positive");
    return build(spec, Complex(k, 0.0), theta);
}

CellSystem build_cell_system_negative(const ChainSpec& spec, double kappa, double theta) {
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
    return build(spec, Complex(0.0, kappa), theta);
}

DeterminantValue determinant(const CellMatrix& m) {
    CellMatrix lu = m;
    DeterminantValue out;
    out.row_norm_product = 1.0;
    for (int r = 0; r < 12; ++r) {
        double s = 0;
        for (int c = 0; c < 12; ++c) s += std::norm(lu[12 * r + c]);
        out.row_norm_product *= std::sqrt(s);
    }
    if (out.row_norm_product == 0.0) {
        out.value = 0.0;
        out.row_norm_product = 1.0;
        return out;
    }
    Complex det = 1.0;
    for (int col = 0; col < 12; ++col) {
        int piv = col;
        double best = std::abs(lu[12 * col + col]);
        for (int r = col + 1; r < 12; ++r) {
            const double v = std::abs(lu[12 * r + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) {
            out.value = 0.0;
            return out;
        }
        if (piv != col) {
            for (int c = 0; c < 12; ++c) std::swap(lu[12 * piv + c], lu[12 * col + c]);
            det = -det;
        }
        const Complex p = lu[12 * col + col];
        det *= p;
        for (int r = col + 1; r < 12; ++r) {
            const Complex f = lu[12 * r + col] / p;
            if (f == Complex(0.0)) continue;
            for (int c = col + 1; c < 12; ++c) lu[12 * r + c] -= f * lu[12 * col + c];
        }
    }
    out.value = det;
    return out;
}

DeterminantValue determinant(const CellSystem& sys) { return determinant(sys.matrix); }

OracleRoots oracle_theta_roots(const ChainSpec& spec, double k, const OracleTolerances& tol) {
    constexpr int N = 8;
    std::array<Complex, N> d;
    OracleRoots out;
    out.scale = 0.0;
    for (int n = 0; n < N; ++n) {
        const auto dv = determinant(build_cell_system(spec, k, kTwoPi * n / N));
        d[n] = dv.value;
        out.scale = std::max(out.scale, dv.row_norm_product);
    }
    std::array<Complex, N> coef;
    for (int j = 0; j < N; ++j) {
        Complex s = 0.0;
        for (int n = 0; n < N; ++n) s += d[n] * std::exp(-I * (kTwoPi * j * n / N));
        coef[j] = s / static_cast<double>(N);
    }
    double main = 0.0, leak = 0.0;
    for (int j = 0; j < N; ++j) {
        if (j >= 1 && j <= 3)
            main = std::max(main, std::abs(coef[j]));
        else
            leak = std::max(leak, std::abs(coef[j]));
    }
    out.poly = {coef[1], coef[2], coef[3]};
    out.leakage = main > 0 ? leak / main : 0.0;
    if (main < tol.flat * out.scale) {
        out.all_theta = true;
        return out;
    }
    // roots of c3 z^2 + c2 z + c1
    const Complex c1 = coef[1], c2 = coef[2], c3 = coef[3];
    std::vector<Complex> zs;
    if (std::abs(c3) <= std::numeric_limits<double>::epsilon() * main) {
        if (std::abs(c2) > 0) zs.push_back(-c1 / c2);
    } else {
        const Complex sq = std::sqrt(c2 * c2 - 4.0 * c3 * c1);
        const Complex q = (std::real(std::conj(c2) * sq) >= 0) ? -0.5 * (c2 + sq) : -0.5 * (c2 - sq);
        if (std::abs(q) > 0) {
            zs.push_back(q / c3);
            zs.push_back(c1 / q);
        } else {
            zs.push_back(0.0);
            zs.push_back(0.0);
        }
    }
    for (const Complex& z : zs) {
        if (std::fabs(std::abs(z) - 1.0) < tol.circle) out.thetas.push_back(wrap(std::arg(z) + kPi, kTwoPi) - kPi);
    }
    std::sort(out.thetas.begin(), out.thetas.end());
    return out;
}

double reduced_condition_lhs(const ChainSpec& spec, double k, double theta) {
    const double l = spec.ell, l1 = spec.l1, l3 = spec.l3, l2 = spec.l2(), A = spec.A;
    const double K = k * k * l * l;
    const double kl = k * l;
    double s = -(2 * kl * std::sin(A * l2) * std::cos(A * l3) + (K + 1) * std::sin(k * l2) * std::cos(k * l3)) *
               std::cos(k * l1);
    s += 0.5 * std::sin(k * l1) *
         ((K * K + 3) * std::sin(k * l2) * std::sin(k * l3) - 2 * (K + 1) * std::sin(A * l2) * std::sin(A * l3));
    s += ((K + 1) * std::cos(A * l3) * std::sin(k * l1) - 2 * kl * std::sin(A * l3) * std::cos(k * l1)) *
         std::cos(A * l2);
    s -= (K + 1) * std::cos(k * l2) * std::sin(k * (l1 + l3));
    s += std::cos(theta) * ((K + 1) * (std::cos(A * l3) * std::sin(k * l2) + std::cos(A * l2) * std::sin(k * l3)) +
                            2 * kl * std::sin(A * l2) * std::cos(k * l3) + 2 * kl * std::sin(A * l3) * std::cos(k * l2));
    s += std::sin(theta) * ((K + 1) * (std::sin(A * l3) * std::sin(k * l2) - std::sin(A * l2) * std::sin(k * l3)) -
                            2 * kl * std::cos(A * l3) * std::cos(k * l2) + 2 * kl * std::cos(A * l2) * std::cos(k * l3));
    return s;
}

std::vector<OracleSample> random_oracle_samples(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<OracleSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ell = uniform(g, 0.2, 3.0);
        const double l1 = uniform(g, 0.05, kTwoPi);
        const double l3 = uniform(g, 0.05, kTwoPi - 0.05);
        const double A = uniform(g, -2.0, 2.0);
        const double k = uniform(g, 0.05, 12.0);
        out.push_back({ChainSpec::loose(ell, l1, l3, A), k});
    }
    return out;
}

EquivalenceReport equivalence_report(const std::vector<OracleSample>& samples,
                                     const std::vector<double>& theta_samples, double location_tol) {
    EquivalenceReport rep;
    rep.reduced_factor_min = rep.det_factor_min = std::numeric_limits<double>::infinity();
    rep.reduced_factor_max = rep.det_factor_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& smp = samples[i];
        ++rep.samples;
        const auto co = coefficients_loose(smp.spec, SpectralPoint::positive(smp.k));
        const auto disp = dispersion_theta(co);
        const auto orc = oracle_theta_roots(smp.spec, smp.k);
        rep.max_leakage = std::max(rep.max_leakage, orc.leakage);

        std::ostringstream why;
        why.precision(17);
        const bool disp_all = disp.kind == ThetaSolution::Kind::AllTheta;
        if (disp_all || orc.all_theta) {
            if (disp_all && orc.all_theta) {
                ++rep.all_theta_samples;
                ++rep.agreements;
            } else {
                ++rep.cardinality_mismatches;
                why << "sample " << i << " (" << smp.spec.summary() << ", k=" << smp.k
                    << "): all-theta classification differs";
                rep.failures.push_back(why.str());
            }
        } else {
            const auto dz = merge_clusters(disp.thetas, location_tol);
            const auto oz = merge_clusters(orc.thetas, location_tol);
            if (dz.size() != oz.size()) {
                ++rep.cardinality_mismatches;
                why << "sample " << i << " (" << smp.spec.summary() << ", k=" << smp.k << "): "
                    << dz.size() << " closed-form roots vs " << oz.size() << " determinant roots";
                rep.failures.push_back(why.str());
            } else {
                double worst = 0.0;
                for (double x : dz) {
                    double best = kPi;
                    for (double y : oz) best = std::min(best, circ_dist(x, y));
                    worst = std::max(worst, best);
                }
                for (double y : oz) {
                    double best = kPi;
                    for (double x : dz) best = std::min(best, circ_dist(x, y));
                    worst = std::max(worst, best);
                }
                rep.max_location_error = std::max(rep.max_location_error, worst);
                if (worst > location_tol) {
                    ++rep.location_mismatches;
                    why << "sample " << i << " (" << smp.spec.summary() << ", k=" << smp.k
                        << "): root location differs by " << worst;
                    rep.failures.push_back(why.str());
                } else {
                    ++rep.agreements;
                }
            }
        }

        for (double th : theta_samples) {
            const double dl = co.delta(th);
            if (std::fabs(dl) < 1e-6 * co.scale) continue;
            const double red = reduced_condition_lhs(smp.spec, smp.k, th) / dl;
            rep.reduced_factor_min = std::min(rep.reduced_factor_min, red);
            rep.reduced_factor_max = std::max(rep.reduced_factor_max, red);
            const auto dv = determinant(build_cell_system(smp.spec, smp.k, th));
            const double kl = smp.k * smp.spec.ell;
            const Complex f = dv.value / (std::pow(smp.k, 3) * kl * kl * std::exp(2.0 * I * th) * dl);
            rep.det_factor_min = std::min(rep.det_factor_min, f.real());
            rep.det_factor_max = std::max(rep.det_factor_max, f.real());
        }
    }
    if (rep.reduced_factor_min > rep.reduced_factor_max) rep.reduced_factor_min = rep.reduced_factor_max = 0.0;
    if (rep.det_factor_min > rep.det_factor_max) rep.det_factor_min = rep.det_factor_max = 0.0;
    return rep;
}

}  // namespace ringchain
