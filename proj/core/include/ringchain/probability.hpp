#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringchain/chain_spec.hpp"
#include "ringchain/rational.hpp"

namespace ringchain {

enum class ProbMethod { Scan, Periodic, Torus, ClosedForm };

std::string to_string(ProbMethod m);

struct ProbabilityEstimate {
    double value = 0.0;
    ProbMethod method = ProbMethod::ClosedForm;
    double error_bound = 0.0;
    std::string inputs;
    std::optional<double> cross_check;  // Monte Carlo value (torus) or P(K/2) (scan)
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// Leading-order high-energy band indicator; its sign decides membership.
double indicator_value(const ChainSpec& spec, double k);
int asymptotic_indicator(const ChainSpec& spec, double k);

// Fraction of (lo, hi] covered by bands of the full band condition.
ProbabilityEstimate scan_probability_range(const ChainSpec& spec, double lo, double hi,
                                           double points_per_unit = 400);
ProbabilityEstimate scan_probability(const ChainSpec& spec, double K, double points_per_unit = 400);

// Exact-period analysis of the indicator for commensurate lengths:
// tight: ratio = l2 / l3; merged: ratio = l1 / pi. Throws std::invalid_argument
// when the period exceeds the supported bound.
inline constexpr std::int64_t kMaxPeriodicDenominator = 1000000;
ProbabilityEstimate periodic_probability(Variant v, double A, Rational ratio);

// Fraction of [0, 2pi)^2 satisfying the torus condition; midpoint quadrature
// on resolution^2 cells cross-checked by seeded Monte Carlo.
ProbabilityEstimate torus_probability(Variant v, double A, std::size_t resolution = 4000,
                                      std::size_t mc_samples = 10000000, std::uint64_t seed = kDefaultSeed);

// Area of the merged-chain torus condition in x in [0, pi), y in [0, pi/2).
struct AreaEstimate {
    double value = 0.0;
    double error_bound = 0.0;
};
AreaEstimate first_octant_area(double A, std::size_t resolution = 4000);

ProbabilityEstimate closed_form_probability(Variant v, double A, bool symmetric);

struct UniversalityRoute {
    std::string geometry;
    ProbMethod method;
    double value;
    double error_bound;
};

struct UniversalityReport {
    std::vector<UniversalityRoute> routes;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

struct UniversalityOptions {
    double K = 10000;
    double points_per_unit = 400;
    std::size_t resolution = 2000;
    std::size_t mc_samples = 1000000;
    double slack = 0.01;  // finite-K allowance added to the combined bounds
};

UniversalityReport universality_check(Variant v, double A, const std::vector<ChainSpec>& geometries,
                                      const UniversalityOptions& opt = {});

}  // namespace ringchain
