#pragma once

#include <stdexcept>
#include <string>

namespace cocycle {

// Raised when a computation produced a non-finite or degenerate value
// (overflow in a generator, rank collapse, a triangle that went flat).
// Usage mistakes are reported with std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cocycle
