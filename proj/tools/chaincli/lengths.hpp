#pragma once

#include <optional>
#include <string>

#include "ringchain/rational.hpp"

namespace chaincli {

struct Length {
    double value = 0.0;
    std::optional<ringchain::Rational> over_pi;  // set for "2pi/3"-style input
};

// Accepts a decimal number or p pi / q with integer p, q ("pi", "2pi/3", "pi/2", "-3pi").
Length parse_length(const std::string& text);

// "lo:hi:n"
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 1;
    double at(std::size_t i) const;
};
Range parse_range(const std::string& text);

}  // namespace chaincli
