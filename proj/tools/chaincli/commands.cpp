#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lengths.hpp"
#include "output.hpp"
#include "ringchain/band_structure.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/floquet_oracle.hpp"
#include "ringchain/probability.hpp"

#ifndef RINGCHAIN_VERSION
#define RINGCHAIN_VERSION "dev"
#endif

namespace chaincli {

namespace {

using namespace ringchain;
using nlohmann::json;

struct SpecArgs {
    std::string variant;
    std::string ell = "1";
    std::string l1;
    std::string l3;
    double A = 0.0;
};

struct OutArgs {
    std::string out = "-";
    std::string format;
    std::string gnuplot;
};

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void add_spec(CLI::App* c, SpecArgs& s) {
    c->add_option("--variant", s.variant, "loose, tight or merged")
        ->required()
        ->check(CLI::IsMember({"loose", "tight", "merged"}));
    c->add_option("--ell", s.ell, "coupling length scale");
    c->add_option("--l1", s.l1, "connecting-link length (number or p pi/q)");
    c->add_option("--l3", s.l3, "lower-arc length (number or p pi/q)");
    c->add_option("--A", s.A, "magnetic potential (flux / 2pi)");
}

void add_out(CLI::App* c, OutArgs& o) {
    c->add_option("--out", o.out, "output file, '-' for stdout");
    c->add_option("--format", o.format, "csv or json (default from the file extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--gnuplot", o.gnuplot, "also write a gnuplot script for the CSV output");
}

ChainSpec make_spec(const SpecArgs& a) {
    const Variant v = parse_variant(a.variant);
    const Length ell = parse_length(a.ell);
    Length l1{0.0, std::nullopt}, l3{kPi, make_rational(1, 1)};
    if (!a.l1.empty()) l1 = parse_length(a.l1);
    if (!a.l3.empty()) l3 = parse_length(a.l3);
    if (v == Variant::Tight && !a.l1.empty() && l1.value != 0.0)
        throw Usage("the tight chain has l1 = 0; drop --l1");
    if (v == Variant::Merged) {
        if (!a.l3.empty() && std::fabs(l3.value - kTwoPi) > 1e-12)
            throw Usage("the merged chain has l3 = 2pi; drop --l3");
        l3 = {kTwoPi, make_rational(2, 1)};
    }
    if (v != Variant::Tight && a.l1.empty()) throw Usage("--l1 is required for the " + a.variant + " chain");
    if (v == Variant::Loose && a.l3.empty()) throw Usage("--l3 is required for the loose chain");
    ChainSpec s = ChainSpec::make(v, ell.value, l1.value, l3.value, a.A);
    s.l1_over_pi = l1.over_pi;
    s.l3_over_pi = l3.over_pi;
    return s;
}

json spec_json(const ChainSpec& s) {
    json j = {{"variant", to_string(s.variant)}, {"ell", s.ell}, {"l1", s.l1}, {"l3", s.l3}, {"A", s.A}};
    if (s.l1_over_pi) j["l1_over_pi"] = s.l1_over_pi->str();
    if (s.l3_over_pi) j["l3_over_pi"] = s.l3_over_pi->str();
    return j;
}

json base_meta(const std::string& cmd) {
    return {{"tool", "chaincli"}, {"version", RINGCHAIN_VERSION}, {"command", cmd}};
}

void emit(const OutArgs& o, const Table& t, const json& meta, const std::string& plot_title,
          const std::string& plot_body) {
    std::string fmt = o.format;
    if (fmt.empty()) fmt = o.out.size() > 5 && o.out.substr(o.out.size() - 5) == ".json" ? "json" : "csv";
    const std::string text = fmt == "json" ? to_json(t, meta).dump(2) + "\n" : to_csv(t);
    if (!o.gnuplot.empty() && (o.out == "-" || fmt != "csv")) throw Usage("--gnuplot needs --out with CSV output");
    try {
        if (o.out == "-")
            std::cout << text;
        else
            write_atomic(o.out, text);
        if (!o.gnuplot.empty()) write_atomic(o.gnuplot, gnuplot_script(o.out, plot_title, plot_body));
    } catch (const std::runtime_error& e) {
        throw Usage(e.what());
    }
}

void report_warnings(const std::vector<std::string>& w) {
    for (const auto& s : w) std::cerr << "warning: " << s << "\n";
}

Table band_table(const ScanResult& r) {
    Table t{{"index", "lo", "hi", "width", "kind", "edge_tol", "truncated"}, {}};
    long long i = 0;
    for (const auto& b : r.bands)
        t.rows.push_back({i++, b.lo, b.hi, b.width(), to_string(b.kind), b.edge_tol, (long long)b.truncated});
    return t;
}

}  // namespace

int run(const std::vector<std::string>& argv_in) {
    CLI::App app{"Spectral analysis of periodic chains of magnetic rings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(RINGCHAIN_VERSION));

    SpecArgs sa;
    OutArgs oa;
    double kmax = 0, kappa_max = 0, edge_tol = kDefaultEdgeTol;
    std::size_t grid = 0;

    auto* bands = app.add_subcommand("bands", "positive-energy bands in k");
    add_spec(bands, sa);
    add_out(bands, oa);
    bands->add_option("--kmax", kmax, "upper end of the k range")->required()->check(CLI::PositiveNumber);
    bands->add_option("--grid", grid, "grid points (default 2e4 per unit k)");
    bands->add_option("--edge-tol", edge_tol, "edge bisection tolerance")->check(CLI::PositiveNumber);

    auto* neg = app.add_subcommand("negbands", "negative-energy bands in kappa (E = -kappa^2)");
    add_spec(neg, sa);
    add_out(neg, oa);
    neg->add_option("--kappa-max", kappa_max, "upper end of the kappa range")->required()->check(CLI::PositiveNumber);
    neg->add_option("--grid", grid, "grid points");
    neg->add_option("--edge-tol", edge_tol, "edge bisection tolerance")->check(CLI::PositiveNumber);

    auto* flat = app.add_subcommand("flatbands", "detected and predicted flat bands");
    add_spec(flat, sa);
    add_out(flat, oa);
    flat->add_option("--kmax", kmax, "upper end of the k range")->required()->check(CLI::PositiveNumber);
    flat->add_option("--grid", grid, "grid points");

    std::string mode = "closed", ratio;
    double K = 1e4, ppu = 400;
    std::size_t resolution = 4000, mc = 10000000;
    std::uint64_t seed = kDefaultSeed;
    bool symmetric = false, incommensurate = false;
    auto* prob = app.add_subcommand("prob", "probability of belonging to the spectrum");
    add_spec(prob, sa);
    add_out(prob, oa);
    prob->add_option("--mode", mode, "scan, periodic, torus or closed")
        ->check(CLI::IsMember({"scan", "periodic", "torus", "closed"}));
    prob->add_option("--K", K, "scan: upper end of the k range")->check(CLI::PositiveNumber);
    prob->add_option("--ppu", ppu, "scan: grid points per unit k")->check(CLI::PositiveNumber);
    prob->add_option("--ratio", ratio, "periodic: l2/l3 (tight) or l1/pi (merged) as p/q");
    prob->add_option("--resolution", resolution, "torus: cells per axis");
    prob->add_option("--mc", mc, "torus: Monte Carlo samples");
    prob->add_option("--seed", seed, "seed for stochastic paths");
    auto* fsym = prob->add_flag("--symmetric", symmetric, "closed: the chain has l3 = pi");
    prob->add_flag("--incommensurate", incommensurate, "closed: the edge lengths are incommensurate")->excludes(fsym);

    std::string axis, range;
    auto* sweep = app.add_subcommand("sweep", "band lists along a parameter axis");
    add_spec(sweep, sa);
    add_out(sweep, oa);
    sweep->add_option("--axis", axis, "l1, l3, A or ell")->required()->check(CLI::IsMember({"l1", "l3", "A", "ell"}));
    sweep->add_option("--range", range, "lo:hi:n")->required();
    sweep->add_option("--kmax", kmax, "upper end of the k range")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--grid", grid, "grid points per sample");

    std::size_t samples = 1000;
    std::uint64_t oseed = 1;
    double loc_tol = 1e-7;
    auto* oracle = app.add_subcommand("oracle-check", "compare the closed-form condition with the 12x12 determinant");
    add_out(oracle, oa);
    oracle->add_option("--samples", samples, "random (spec, k) draws");
    oracle->add_option("--seed", oseed, "seed of the draws");
    oracle->add_option("--tol", loc_tol, "location tolerance")->check(CLI::PositiveNumber);

    std::vector<std::string> args(argv_in.rbegin(), argv_in.rend());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (bands->parsed()) {
            const auto s = make_spec(sa);
            const auto r = scan_bands(s, kmax, grid, edge_tol);
            report_warnings(r.warnings);
            json meta = base_meta("bands");
            meta["spec"] = spec_json(s);
            meta["kmax"] = kmax;
            meta["edge_tol"] = edge_tol;
            meta["grid"] = grid ? grid : default_grid_points(kmax);
            meta["warnings"] = r.warnings;
            emit(oa, band_table(r), meta, "bands " + s.summary(),
                 "set xlabel 'k'\nunset ytics\nplot data using 2:(0):($3-$2):(0) with vectors nohead lw 4 title 'bands'\n");
        } else if (neg->parsed()) {
            const auto s = make_spec(sa);
            const auto r = find_negative_bands(s, kappa_max, grid, edge_tol);
            report_warnings(r.warnings);
            Table t{{"index", "kappa_lo", "kappa_hi", "energy_lo", "energy_hi", "kind", "edge_tol", "truncated"}, {}};
            long long i = 0;
            for (const auto& b : r.bands)
                t.rows.push_back({i++, b.lo, b.hi, -b.hi * b.hi, -b.lo * b.lo, to_string(b.kind), b.edge_tol,
                                  (long long)b.truncated});
            json meta = base_meta("negbands");
            meta["spec"] = spec_json(s);
            meta["kappa_max"] = kappa_max;
            meta["edge_tol"] = edge_tol;
            if (s.variant != Variant::Tight) {
                const auto ap = asymptotic_negative_point(s, kappa_max);
                meta["asymptotic_kappa"] = ap.kappa ? json(*ap.kappa) : json(nullptr);
                meta["asymptotic_note"] = ap.note;
            }
            emit(oa, t, meta, "negative bands " + s.summary(),
                 "set xlabel 'E'\nunset ytics\nplot data using 4:(0):($5-$4):(0) with vectors nohead lw 4 title 'bands'\n");
        } else if (flat->parsed()) {
            const auto s = make_spec(sa);
            const auto hits = detect_flat_bands(s, kmax, grid);
            const auto pred = predict_flat_bands(s, kmax);
            for (const auto& n : pred.notices) std::cerr << "notice: " << n << "\n";
            Table t{{"source", "k", "energy", "abs_a", "abs_b", "abs_c", "scale", "mechanism", "provenance"}, {}};
            for (const auto& h : hits)
                t.rows.push_back({std::string("detected"), h.k, h.k * h.k, h.abs_a, h.abs_b, h.abs_c, h.scale,
                                  std::string(""), std::string("")});
            for (const auto& p : pred.predictions) {
                const auto co = coefficients(s, SpectralPoint::positive(p.k_value));
                t.rows.push_back({std::string("predicted"), p.k_value, p.k_value * p.k_value, std::fabs(co.a),
                                  std::fabs(co.b), std::fabs(co.c), co.scale, to_string(p.mechanism), p.provenance});
            }
            json meta = base_meta("flatbands");
            meta["spec"] = spec_json(s);
            meta["kmax"] = kmax;
            meta["flat_tol"] = kFlatTol;
            meta["notices"] = pred.notices;
            emit(oa, t, meta, "flat bands " + s.summary(),
                 "set xlabel 'E'\nplot data using 3:(1) every ::0 with impulses title 'flat bands'\n");
        } else if (prob->parsed()) {
            const Variant v = parse_variant(sa.variant);
            ProbabilityEstimate e;
            json meta = base_meta("prob");
            meta["mode"] = mode;
            if (mode == "scan") {
                const auto s = make_spec(sa);
                e = scan_probability(s, K, ppu);
                meta["spec"] = spec_json(s);
            } else if (mode == "periodic") {
                Rational r;
                if (!ratio.empty()) {
                    r = parse_rational(ratio);
                } else {
                    const auto s = make_spec(sa);
                    if (v == Variant::Tight && s.l3_over_pi)
                        r = make_rational(2 * s.l3_over_pi->q - s.l3_over_pi->p, s.l3_over_pi->p);
                    else if (v == Variant::Merged && s.l1_over_pi)
                        r = *s.l1_over_pi;
                    else
                        throw Usage("periodic mode needs --ratio or a length given as a rational multiple of pi");
                }
                e = periodic_probability(v, sa.A, r);
                meta["ratio"] = r.str();
            } else if (mode == "torus") {
                e = torus_probability(v, sa.A, resolution, mc, seed);
                meta["seed"] = seed;
                meta["resolution"] = resolution;
                meta["mc_samples"] = mc;
            } else {
                if (v == Variant::Tight && !symmetric && !incommensurate)
                    throw Usage("closed forms need --symmetric or --incommensurate");
                e = closed_form_probability(v, sa.A, symmetric);
            }
            Table t{{"method", "value", "error_bound", "cross_check", "inputs"}, {}};
            t.rows.push_back({to_string(e.method), e.value, e.error_bound,
                              e.cross_check ? Cell(*e.cross_check) : Cell(std::string("")), e.inputs});
            emit(oa, t, meta, "probability", "plot data using 0:2:3 with yerrorbars title 'P'\n");
        } else if (sweep->parsed()) {
            const auto base = make_spec(sa);
            const auto rg = parse_range(range);
            Table t{{"param", "index", "lo", "hi", "kind"}, {}};
            std::vector<std::string> warnings;
            for (std::size_t i = 0; i < rg.n; ++i) {
                const double p = rg.at(i);
                ChainSpec s = base;
                if (axis == "l1") s = base.with_l1(p);
                else if (axis == "l3") s = base.with_l3(p);
                else if (axis == "A") s = base.with_flux(p);
                else s = base.with_ell(p);
                const auto r = scan_bands(s, kmax, grid);
                for (const auto& w : r.warnings) warnings.push_back(axis + "=" + format_number(p) + ": " + w);
                long long j = 0;
                for (const auto& b : r.bands) t.rows.push_back({p, j++, b.lo, b.hi, to_string(b.kind)});
            }
            report_warnings(warnings);
            json meta = base_meta("sweep");
            meta["spec"] = spec_json(base);
            meta["axis"] = axis;
            meta["range"] = {{"lo", rg.lo}, {"hi", rg.hi}, {"n", rg.n}};
            meta["kmax"] = kmax;
            meta["warnings"] = warnings;
            emit(oa, t, meta, "sweep over " + axis,
                 "set xlabel '" + axis + "'\nset ylabel 'k'\nplot data using 1:3:(0):($4-$3) with vectors nohead title 'bands'\n");
        } else if (oracle->parsed()) {
            const auto smp = random_oracle_samples(samples, oseed);
            const auto rep = equivalence_report(smp, {-2.5, -0.7, 0.4, 1.9}, loc_tol);
            Table t{{"metric", "value"}, {}};
            t.rows.push_back({std::string("samples"), (long long)rep.samples});
            t.rows.push_back({std::string("agreements"), (long long)rep.agreements});
            t.rows.push_back({std::string("all_theta_samples"), (long long)rep.all_theta_samples});
            t.rows.push_back({std::string("cardinality_mismatches"), (long long)rep.cardinality_mismatches});
            t.rows.push_back({std::string("location_mismatches"), (long long)rep.location_mismatches});
            t.rows.push_back({std::string("max_location_error"), rep.max_location_error});
            t.rows.push_back({std::string("reduced_factor_min"), rep.reduced_factor_min});
            t.rows.push_back({std::string("reduced_factor_max"), rep.reduced_factor_max});
            t.rows.push_back({std::string("det_factor_min"), rep.det_factor_min});
            t.rows.push_back({std::string("det_factor_max"), rep.det_factor_max});
            t.rows.push_back({std::string("max_leakage"), rep.max_leakage});
            t.rows.push_back({std::string("failures"), (long long)rep.failures.size()});
            json meta = base_meta("oracle-check");
            meta["seed"] = oseed;
            meta["location_tol"] = loc_tol;
            meta["failures"] = rep.failures;
            emit(oa, t, meta, "oracle check", "plot data using 0:2 with points\n");
            for (const auto& f : rep.failures) std::cerr << "failure: " << f << "\n";
            if (!rep.ok()) return 2;
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace chaincli
