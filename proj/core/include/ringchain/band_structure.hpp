#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringchain/chain_spec.hpp"
#include "ringchain/coefficients.hpp"

namespace ringchain {

enum class BandKind { Continuous, FlatPoint };

std::string to_string(BandKind k);

// Closed interval in k (or kappa for negative bands).
struct Band {
    double lo = 0.0;
    double hi = 0.0;
    BandKind kind = BandKind::Continuous;
    double edge_tol = 0.0;
    bool truncated = false;  // touches the upper end of the scanned range

    double width() const { return hi - lo; }
};

struct ScanResult {
    std::vector<Band> bands;
    std::vector<std::string> warnings;
};

inline constexpr double kDefaultPointsPerUnit = 2.0e4;
inline constexpr double kDefaultEdgeTol = 1e-10;

std::size_t default_grid_points(double range);

// Bands of a*cos(theta) + b*sin(theta) = c for x in (lo, hi], where F maps
// x to the coefficients. x = 0 is never evaluated.
ScanResult scan_spectrum(const std::function<SpectralCoefficients(double)>& F, double lo, double hi,
                         std::size_t grid_points, double edge_tol = kDefaultEdgeTol);

ScanResult scan_bands(const ChainSpec& spec, double k_max, std::size_t grid_points = 0,
                      double edge_tol = kDefaultEdgeTol);
ScanResult scan_bands_range(const ChainSpec& spec, double k_lo, double k_hi, std::size_t grid_points = 0,
                            double edge_tol = kDefaultEdgeTol);

// Throws NumericalError if the band count exceeds 2 (loose) or 1 (tight, merged).
ScanResult find_negative_bands(const ChainSpec& spec, double kappa_max, std::size_t grid_points = 0,
                               double edge_tol = kDefaultEdgeTol);
std::size_t negative_band_cap(Variant v);

// ---- flat bands ----

struct FlatHit {
    double k = 0.0;
    double abs_a = 0.0;
    double abs_b = 0.0;
    double abs_c = 0.0;
    double scale = 1.0;
};

std::vector<FlatHit> detect_flat_bands(const ChainSpec& spec, double k_max, std::size_t grid_points = 0);

enum class FlatMechanism { HalfIntegerLadder, IntegerLadder, RationalEdge, EllInverse, ExceptionalFlux };

std::string to_string(FlatMechanism m);

struct FlatBandPrediction {
    double k_value = 0.0;
    FlatMechanism mechanism = FlatMechanism::HalfIntegerLadder;
    std::string provenance;
};

struct PredictionResult {
    std::vector<FlatBandPrediction> predictions;  // sorted by k, one entry per k
    std::vector<std::string> notices;
};

PredictionResult predict_flat_bands(const ChainSpec& spec, double k_max);

enum class Parity { OddM, EvenM };

// Flux in [0, 1) at which Lambda+ (odd m) or Lambda- (even m) vanishes.
// Throws std::domain_error when 2k is an integer.
double exceptional_flux(double k, double ell, Parity parity);

// l1 values in (0, l1_max] where c vanishes at the exceptional point
// k = m pi / (2 |pi - l3|), A = exceptional_flux(k, ell, parity of m).
std::vector<double> exceptional_l1_values(double ell, double l3, int m, double l1_max);

// ---- gap closings ----

enum class SweepParam { L1, L3 };

struct GapTouch {
    double param = 0.0;
    double k = 0.0;
    double gap_width = 0.0;
    double theta = 0.0;
    double dDelta_dtheta = 0.0;  // scaled by the coefficient magnitude
    double dDelta_dk = 0.0;
    double dDelta_dparam = 0.0;
    std::string note;
};

struct GapSearchOptions {
    std::size_t samples = 120;
    double points_per_unit = 4000;
    double touch_tol = 1e-8;
};

std::vector<GapTouch> gap_closing_search(const ChainSpec& spec, SweepParam param, double p_lo, double p_hi,
                                         double k_lo, double k_hi, const GapSearchOptions& opt = {});

// ---- negative spectrum asymptotics ----

struct AsymptoticPoint {
    std::optional<double> kappa;
    std::string note;
};

AsymptoticPoint asymptotic_negative_point(const ChainSpec& spec, double kappa_max = 10.0);

}  // namespace ringchain
