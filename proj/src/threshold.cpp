#include "lthill/threshold.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lthill/estimators.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lthill {

namespace {

void check_scan_range(const SortedSample& s, std::size_t k_lo, std::size_t k_hi) {
    if (k_lo < 1 || k_lo > k_hi || k_hi >= s.size()) {
        throw std::invalid_argument("variance_curve: need 1 <= k_lo <= k_hi <= n-1");
    }
}

// One log pass shared across the whole scan; per-k work is then pure
// arithmetic, identical to what lth_trajectory computes.
std::vector<double> scan_logs(const SortedSample& s, std::size_t k_hi) {
    std::vector<double> log_values(k_hi + 1);
    for (std::size_t i = 0; i <= k_hi; ++i) log_values[i] = std::log(s[i]);
    return log_values;
}

double emp_var_at(const std::vector<double>& log_values, std::size_t k) {
    return detail::population_variance(detail::trajectory_from_logs(log_values, k));
}

}  // namespace

std::vector<VarianceCurvePoint> variance_curve_serial(const SortedSample& s,
                                                      std::size_t k_lo,
                                                      std::size_t k_hi) {
    check_scan_range(s, k_lo, k_hi);
    const std::vector<double> log_values = scan_logs(s, k_hi);
    std::vector<VarianceCurvePoint> curve(k_hi - k_lo + 1);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const std::size_t k = k_lo + i;
        curve[i] = {k, emp_var_at(log_values, k)};
    }
    return curve;
}

std::vector<VarianceCurvePoint> variance_curve_parallel(const SortedSample& s,
                                                        std::size_t k_lo,
                                                        std::size_t k_hi) {
    check_scan_range(s, k_lo, k_hi);
    const std::vector<double> log_values = scan_logs(s, k_hi);
    std::vector<VarianceCurvePoint> curve(k_hi - k_lo + 1);
    const long m = static_cast<long>(curve.size());
    // Larger k means more work per point; dynamic scheduling balances it.
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < m; ++i) {
        const std::size_t k = k_lo + static_cast<std::size_t>(i);
        curve[static_cast<std::size_t>(i)] = {k, emp_var_at(log_values, k)};
    }
    return curve;
}

std::vector<VarianceCurvePoint> variance_curve(const SortedSample& s,
                                               std::size_t k_lo, std::size_t k_hi,
                                               Exec exec) {
    return exec == Exec::Serial ? variance_curve_serial(s, k_lo, k_hi)
                                : variance_curve_parallel(s, k_lo, k_hi);
}

std::size_t argmin_curve(const std::vector<VarianceCurvePoint>& curve) {
    if (curve.empty()) throw std::invalid_argument("argmin_curve: empty curve");
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].emp_var < curve[best].emp_var) best = i;
    }
    return best;
}

ThresholdReport select_k_star(const SortedSample& s, double lower_frac,
                              std::optional<std::size_t> upper, Exec exec,
                              std::optional<std::size_t> lower) {
    const std::size_t n = s.size();
    if (n < 10) throw std::invalid_argument("select_k_star: need n >= 10");
    if (!(lower_frac > 0.0 && lower_frac < 1.0)) {
        throw std::invalid_argument("select_k_star: lower_frac must be in (0,1)");
    }
    std::size_t k_lo = lower.value_or(static_cast<std::size_t>(
        std::floor(lower_frac * static_cast<double>(n))));
    if (k_lo < 1) k_lo = 1;
    const std::size_t k_hi = upper.value_or(n - 1);
    if (k_lo > k_hi || k_hi > n - 1) {
        throw std::invalid_argument("select_k_star: empty scan range");
    }

    ThresholdReport report;
    report.search_lo = k_lo;
    report.search_hi = k_hi;
    report.variance_curve = variance_curve(s, k_lo, k_hi, exec);
    report.k_star = report.variance_curve[argmin_curve(report.variance_curve)].k;
    return report;
}

std::size_t convert_to_k0(std::size_t k_star, SecondOrderP p) {
    if (k_star < 1) throw std::out_of_range("convert_to_k0: k_star >= 1");
    const double scaled =
        std::floor(static_cast<double>(k_star) * conversion_factor(p) + 0.5);
    return scaled < 1.0 ? 1 : static_cast<std::size_t>(scaled);
}

ThresholdReport select_threshold(const SortedSample& s, SecondOrderP p,
                                 double lower_frac,
                                 std::optional<std::size_t> upper, Exec exec,
                                 std::optional<std::size_t> lower) {
    ThresholdReport report = select_k_star(s, lower_frac, upper, exec, lower);
    report.p_used = p.value();
    report.factor = conversion_factor(p);
    report.k0_star = convert_to_k0(report.k_star, p);
    if (report.k0_star > s.size() - 1) report.k0_star = s.size() - 1;
    return report;
}

namespace {

void require_second_order(const HallParams& h) {
    if (!(h.xi > 0.0)) throw std::domain_error("HallParams: xi must be > 0");
    if (!(h.p < 0.0)) throw std::domain_error("HallParams: p must be < 0");
    if (!h.D.has_value()) {
        throw std::invalid_argument("HallParams: D is unavailable for this family");
    }
}

}  // namespace

double theoretical_k0_star(const HallParams& h, std::size_t n) {
    require_second_order(h);
    const double D = *h.D;
    if (D == 0.0) return std::numeric_limits<double>::infinity();
    const double p = h.p;
    const double num = std::pow(static_cast<double>(n), -2.0 * p) * h.xi * h.xi *
                       (1.0 - p) * (1.0 - p);
    const double den = -2.0 * p * p * p * D * D;
    return std::pow(num / den, 1.0 / (1.0 - 2.0 * p));
}

double theoretical_k_star(const HallParams& h, std::size_t n) {
    require_second_order(h);
    const double D = *h.D;
    if (D == 0.0) return std::numeric_limits<double>::infinity();
    const double p = h.p;
    const double C = universal_constants().C;
    const double num =
        std::pow(static_cast<double>(n), -2.0 * p) * C * h.xi * h.xi;
    const double den = -2.0 * p * p * p * D * D * f_of_p(SecondOrderP(p));
    return std::pow(num / den, 1.0 / (1.0 - 2.0 * p));
}

double expected_empirical_variance(const HallParams& h, std::size_t n,
                                   std::size_t k) {
    require_second_order(h);
    if (k < 1 || k >= n) {
        throw std::out_of_range("expected_empirical_variance: need 1 <= k < n");
    }
    const double p = h.p;
    const double q0 = p * (*h.D) *
                      std::pow(static_cast<double>(n) / static_cast<double>(k), p);
    return universal_constants().C * h.xi * h.xi / static_cast<double>(k) +
           q0 * q0 * f_of_p(SecondOrderP(p));
}

}  // namespace lthill
