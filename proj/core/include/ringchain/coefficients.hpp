#pragma once

#include <optional>
#include <vector>

#include "ringchain/chain_spec.hpp"

namespace ringchain {

enum class EnergySign { Positive, Negative };

// Positive energy E = k^2 or negative energy E = -kappa^2.
struct SpectralPoint {
    double momentum = 1.0;
    EnergySign sign = EnergySign::Positive;
    std::optional<double> theta;

    static SpectralPoint positive(double k) { return {k, EnergySign::Positive, std::nullopt}; }
    static SpectralPoint negative(double kappa) { return {kappa, EnergySign::Negative, std::nullopt}; }
    void validate() const;
};

inline constexpr double kFlatTol = 1e-9;

// Coefficients of the spectral condition a cos(theta) + b sin(theta) = c.
// `scale` is the magnitude scale S used for the scale-aware flat test;
// negative-energy coefficients carry a common positive rescaling.
struct SpectralCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double scale = 1.0;

    double discriminant() const { return a * a + b * b - c * c; }
    std::optional<double> phase() const;
    double delta(double theta) const;
    bool is_flat(double eps = kFlatTol) const;
};

SpectralCoefficients coefficients_loose(const ChainSpec& spec, const SpectralPoint& pt);
SpectralCoefficients coefficients_tight(const ChainSpec& spec, const SpectralPoint& pt);
SpectralCoefficients coefficients_merged(const ChainSpec& spec, const SpectralPoint& pt);
// dispatches on spec.variant
SpectralCoefficients coefficients(const ChainSpec& spec, const SpectralPoint& pt);

double discriminant(const SpectralCoefficients& co);

struct ThetaSolution {
    enum class Kind { AllTheta, Empty, Discrete };
    Kind kind = Kind::Empty;
    std::vector<double> thetas;  // in [-pi, pi), sorted
};

ThetaSolution dispersion_theta(const SpectralCoefficients& co, double eps = kFlatTol);

}  // namespace ringchain
