#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ringchain {

struct Rational {
    std::int64_t p = 0;
    std::int64_t q = 1;

    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    std::string str() const;
};

Rational make_rational(std::int64_t p, std::int64_t q);

// Best continued-fraction approximation of x with denominator <= max_den,
// accepted only if |x - p/q| <= tol.
std::optional<Rational> recognize_rational(double x, std::int64_t max_den = 1000000,
                                           double tol = 1e-12);

// Parses "p/q" or a plain integer.
Rational parse_rational(const std::string& text);

}  // namespace ringchain
