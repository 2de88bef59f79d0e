#pragma once

#include <optional>

#include "ringchain/chain_spec.hpp"
#include "ringchain/coefficients.hpp"

namespace ringchain {

// Auxiliary functions of the model; a field is empty when the point lies
// outside the context in which the function is defined.
struct SpecialFunctions {
    std::optional<double> lambda_plus;
    std::optional<double> lambda_minus;
    std::optional<double> tau;
    std::optional<double> rho;
    std::optional<double> f_value;
    std::optional<double> g_value;
    std::optional<double> h_value;
    std::optional<double> calA;
};

SpecialFunctions special_functions(const ChainSpec& spec, const SpectralPoint& pt);

double lambda_plus(double k, double ell, double A);
double lambda_minus(double k, double ell, double A);

// half-integer flux band condition: 128 cos^2(k pi) (...) - (tau + rho)^2 >= 0
double tau_function(double k, double ell, double l1, double l3);
double rho_function(double k, double ell, double l1);
double half_integer_band_condition(double k, double ell, double l1, double l3);

// large-l1 limit of the negative spectrum; l3 = 2pi gives the merged form
double f_function(double ell, double l3, double A, double kappa);
// f multiplied by exp(-2 kappa pi), safe for large kappa
double f_function_scaled(double ell, double l3, double A, double kappa);

// symmetric (l3 = pi) half-integer negative condition cos(theta) = g(kappa),
// with A = m - 1/2
double g_function(double ell, double l1, int m, double kappa);
double g_sech_form(double ell, double l1, int m);

double h_function(double k, double A);

// the integer m with A = m - 1/2, if A is half-integer within tol
std::optional<int> half_integer_index(double A, double tol = 1e-12);
bool is_integer_flux(double A, double tol = 1e-12);
bool is_half_integer_flux(double A, double tol = 1e-12);

}  // namespace ringchain
