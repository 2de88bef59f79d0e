#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ringchain/chain_spec.hpp"

namespace ringchain {

using Complex = std::complex<double>;
using CellMatrix = std::array<Complex, 144>;

// Unreduced linear system for the coefficients
// (a1+, a1-, a2+, a2-, a3+, a3-, b1+, b1-, b2+, b2-, b3+, b3-) of one cell.
struct CellSystem {
    CellMatrix matrix{};
    ChainSpec spec;
    Complex k;
    double theta = 0.0;

    Complex& at(int r, int c) { return matrix[static_cast<std::size_t>(12 * r + c)]; }
    const Complex& at(int r, int c) const { return matrix[static_cast<std::size_t>(12 * r + c)]; }
};

CellSystem build_cell_system(const ChainSpec& spec, double k, double theta);
// same system at k = i kappa (negative energy)
CellSystem build_cell_system_negative(const ChainSpec& spec, double kappa, double theta);

struct DeterminantValue {
    Complex value;
    double row_norm_product = 1.0;
    double relative() const { return std::abs(value) / row_norm_product; }
};

DeterminantValue determinant(const CellMatrix& m);
DeterminantValue determinant(const CellSystem& sys);

// Zero set in theta of the determinant at fixed (spec, k). The determinant
// is a trigonometric polynomial in z = exp(i theta) supported on z^1..z^3;
// its coefficients are recovered by an 8-point DFT.
struct OracleRoots {
    bool all_theta = false;
    std::vector<double> thetas;  // sorted, in [-pi, pi)
    std::array<Complex, 3> poly{};
    double scale = 1.0;
    double leakage = 0.0;  // relative size of DFT terms outside z^1..z^3
};

struct OracleTolerances {
    double flat = 1e-11;
    double circle = 1e-7;
};

OracleRoots oracle_theta_roots(const ChainSpec& spec, double k, const OracleTolerances& tol = {});

// Left-hand side of the reduced 6x6 spectral condition, before it is
// rewritten in terms of a, b, c.
double reduced_condition_lhs(const ChainSpec& spec, double k, double theta);

struct OracleSample {
    ChainSpec spec;
    double k = 1.0;
};

std::vector<OracleSample> random_oracle_samples(std::size_t n, std::uint64_t seed);

struct EquivalenceReport {
    std::size_t samples = 0;
    std::size_t agreements = 0;
    std::size_t all_theta_samples = 0;
    std::size_t cardinality_mismatches = 0;
    std::size_t location_mismatches = 0;
    double max_location_error = 0.0;
    double reduced_factor_min = 0.0;
    double reduced_factor_max = 0.0;
    double det_factor_min = 0.0;
    double det_factor_max = 0.0;
    double max_leakage = 0.0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

EquivalenceReport equivalence_report(const std::vector<OracleSample>& samples,
                                     const std::vector<double>& theta_samples,
                                     double location_tol = 1e-7);

}  // namespace ringchain
