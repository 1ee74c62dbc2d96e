#pragma once

#include <cstddef>
#include <vector>

#include "lthill/sorted_sample.hpp"

namespace lthill {

// omega_bar(q, k) = sum_{j=1}^k (k - max(j,q) + 1) / (k - j + 1).
// Equals b (1 + sum_{j=b+1}^k 1/j) with b = k - q + 1.
double omega_bar(std::size_t q, std::size_t k);

// Lower-trimmed Hill statistic
//   T_{b,k} = [(1/b) sum_{i<=b} z_i] / (1 + sum_{j=b+1}^k 1/j),
// with the harmonic sum taken as 0 at b = k (where it reduces to the Hill
// estimator). Unbiased for the tail index under an exact Pareto tail.
double trimmed_hill(const LogExcesses& z, std::size_t b);

// Hill estimator, the b = k member of the family.
double hill(const LogExcesses& z);

// All of T_{1,k}..T_{k,k} plus the two flatness diagnostics: the empirical
// variance with the 1/k normalizer and the magnitude of the OLS slope of
// T_{b,k} on b. Single O(k) pass.
struct LthTrajectory {
    std::size_t k = 0;
    std::vector<double> t;
    double emp_var = 0.0;
    double slope = 0.0;  // |OLS slope|; 0 when k == 1
};

LthTrajectory lth_trajectory(const SortedSample& s, std::size_t k);

// Average of T_{b,k} over b = 1..k; equivalently a theta-weighted Hill
// estimator (see theta_weights).
double averaged_trimmed(const SortedSample& s, std::size_t k);

// theta_i = sum_{b=i}^k 1 / (b (1 + sum_{j=b+1}^k 1/j)), i = 1..k, by reverse
// accumulation. The averaged estimator is (1/k) sum_i theta_i z_i.
std::vector<double> theta_weights(std::size_t k);

// Large-k approximation log((log(i/k) - 1) / (log(1 - 1/k) - 1)) of theta_i.
double theta_asymptotic(std::size_t i, std::size_t k);

// Upper-trimmed Hill estimator, the outlier-robust counterpart:
//   ((k0+1)/(k-k0)) z_{k0+1} + (1/(k-k0)) sum_{i=k0+2}^k z_i,  0 <= k0 < k.
double upper_trimmed_hill(const SortedSample& s, std::size_t k0, std::size_t k);

// Upper bound xi^2 / (b + sum_{j=1}^{k-b} (b/(k-j+1))^2) for the exact-
// Pareto variance of T_{b,k}; equals the exact Hill variance xi^2/k at b = k.
double variance_bound(std::size_t b, std::size_t k, double xi);

namespace detail {

// Trajectory values from precomputed log order statistics (descending,
// log_values[i] = log X_{n-i,n}, needs at least k+1 entries). Same arithmetic
// as lth_trajectory; the k-scan shares one log pass through this.
std::vector<double> trajectory_from_logs(const std::vector<double>& log_values,
                                         std::size_t k);

// (1/n) sum (x - mean)^2, accumulated in the trajectory order.
double population_variance(const std::vector<double>& values);

}  // namespace detail

}  // namespace lthill
