#pragma once

#include <stdexcept>
#include <string>

namespace bsplanner {

// Thrown whenever a parameter violates a documented precondition or type
// invariant (negative rates, probabilities outside [0,1], ...).
struct invalid_parameter : std::invalid_argument {
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace bsplanner
