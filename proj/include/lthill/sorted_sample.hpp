#pragma once

#include <cstddef>
#include <vector>

namespace lthill {

// Strictly positive data in descending order, the substrate for every
// order-statistic operation. Immutable once built; safe to share across
// threads.
class SortedSample {
  public:
    // Sorts descending and validates positivity. Throws std::domain_error if
    // any value is <= 0 (message carries the offending count) or fewer than
    // two values remain.
    static SortedSample from_data(std::vector<double> values);

    // For data already in descending order; validates order and positivity.
    static SortedSample from_sorted(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

  private:
    explicit SortedSample(std::vector<double> values) : values_(std::move(values)) {}
    std::vector<double> values_;
};

// Log-excesses z_i = log(X_{n-i+1,n} / X_{n-k,n}), i = 1..k, stored 0-based.
// Non-increasing and non-negative by construction.
struct LogExcesses {
    std::size_t k = 0;
    std::vector<double> z;
};

// Requires 1 <= k <= n-1 (the denominator order statistic must exist).
LogExcesses log_excesses(const SortedSample& s, std::size_t k);

}  // namespace lthill
