#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lthill/exec.hpp"
#include "lthill/sorted_sample.hpp"
#include "lthill/special_functions.hpp"

namespace lthill {

// Second-order tail characteristics of a parametric family with quantile
// function U(x) = A x^xi (1 + D x^p (1 + o(1))). A and D are unset for
// families where no map is available (|Student-t|).
struct HallParams {
    double xi = 0.0;
    double p = -1.0;
    std::optional<double> A;
    std::optional<double> D;
};

struct VarianceCurvePoint {
    std::size_t k = 0;
    double emp_var = 0.0;
};

// Empirical variance of the trimmed-Hill trajectory for every k in
// [k_lo, k_hi]. The parallel driver distributes k across threads; each point
// is computed independently and written by index, so output is bit-identical
// to the serial reference.
std::vector<VarianceCurvePoint> variance_curve(const SortedSample& s,
                                               std::size_t k_lo, std::size_t k_hi,
                                               Exec exec = Exec::Parallel);
std::vector<VarianceCurvePoint> variance_curve_serial(const SortedSample& s,
                                                      std::size_t k_lo,
                                                      std::size_t k_hi);
std::vector<VarianceCurvePoint> variance_curve_parallel(const SortedSample& s,
                                                        std::size_t k_lo,
                                                        std::size_t k_hi);

// Index of the curve minimum; ties resolve to the smallest k.
std::size_t argmin_curve(const std::vector<VarianceCurvePoint>& curve);

struct ThresholdReport {
    std::size_t k_star = 0;
    std::size_t k0_star = 0;   // 0 until convert step has run
    double factor = 0.0;       // 0 until convert step has run
    std::vector<VarianceCurvePoint> variance_curve;
    std::size_t search_lo = 0;
    std::size_t search_hi = 0;
    double p_used = 0.0;
};

// Scans k over [max(1, floor(lower_frac * n)), upper] (default upper = n-1)
// and returns the variance-curve argmin with the full curve. The floor
// convention matches a scan start of 167 at n = 837, lower_frac = 0.2. An
// explicit `lower` index takes precedence over the fraction. Conversion
// fields are left unset. Throws std::invalid_argument if the scan range is
// empty.
ThresholdReport select_k_star(const SortedSample& s, double lower_frac = 0.2,
                              std::optional<std::size_t> upper = std::nullopt,
                              Exec exec = Exec::Parallel,
                              std::optional<std::size_t> lower = std::nullopt);

// k0* = round(k* . conversion_factor(p)), half away from zero, clipped to
// at least 1.
std::size_t convert_to_k0(std::size_t k_star, SecondOrderP p);

// select_k_star followed by the conversion; k0* additionally clipped to n-1.
ThresholdReport select_threshold(const SortedSample& s, SecondOrderP p,
                                 double lower_frac = 0.2,
                                 std::optional<std::size_t> upper = std::nullopt,
                                 Exec exec = Exec::Parallel,
                                 std::optional<std::size_t> lower = std::nullopt);

// AMSE-optimal threshold of the plain Hill estimator in the Hall class:
//   (n^{-2p} xi^2 (1-p)^2 / (-2 p^3 D^2))^{1/(1-2p)}.
// Returns +inf when D = 0 (exact Pareto: use all data). Throws when D is
// unavailable for the family.
double theoretical_k0_star(const HallParams& h, std::size_t n);

// Minimizer of the expected trajectory variance:
//   (n^{-2p} C xi^2 / (-2 p^3 D^2 f(p)))^{1/(1-2p)}.
double theoretical_k_star(const HallParams& h, std::size_t n);

// Asymptotic expected trajectory variance C xi^2 / k + (p D (n/k)^p)^2 f(p).
double expected_empirical_variance(const HallParams& h, std::size_t n,
                                   std::size_t k);

}  // namespace lthill
