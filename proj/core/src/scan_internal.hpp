#pragma once

#include <functional>
#include <optional>

#include "ringchain/coefficients.hpp"

namespace ringchain {

// max(|a|, |b|, |c|) / S
double flat_merit(const SpectralCoefficients& co);

double golden_minimize(const std::function<double(double)>& f, double a, double b, int iters);

// Minimizes the flat merit near x; returns the point if it passes the flat test.
std::optional<double> refine_flat_point(const std::function<SpectralCoefficients(double)>& F, double x,
                                        double halfwidth);

}  // namespace ringchain
