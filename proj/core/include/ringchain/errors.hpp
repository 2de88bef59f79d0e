#pragma once

#include <stdexcept>
#include <string>

namespace ringchain {

// Raised when a computation produces a result that would falsify an
// invariant of the model (e.g. too many negative bands).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ringchain
