#pragma once

#include <stdexcept>
#include <string>

namespace lthill {

// Raised when an input file or dataset is unusable (parse failure,
// non-positive values without --drop-nonpositive, too few rows).
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an iterative numeric routine fails to reach its tolerance.
class NonConvergence : public std::runtime_error {
  public:
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lthill
