#include "lthill/estimators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lthill {

namespace {

// 1 + sum_{j=b+1}^k 1/j for b = 1..k, built from the top down. rescale[b-1]
// is the denominator of T_{b,k}.
std::vector<double> rescale_denominators(std::size_t k) {
    std::vector<double> denom(k);
    denom[k - 1] = 1.0;
    for (std::size_t b = k - 1; b >= 1; --b) {
        denom[b - 1] = denom[b] + 1.0 / static_cast<double>(b + 1);
    }
    return denom;
}

}  // namespace

double omega_bar(std::size_t q, std::size_t k) {
    if (q < 1 || q > k) {
        throw std::out_of_range("omega_bar requires 1 <= q <= k");
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const std::size_t jq = j > q ? j : q;
        total += static_cast<double>(k - jq + 1) / static_cast<double>(k - j + 1);
    }
    return total;
}

double trimmed_hill(const LogExcesses& z, std::size_t b) {
    const std::size_t k = z.k;
    if (b < 1 || b > k) {
        throw std::out_of_range("trimmed_hill requires 1 <= b <= k");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < b; ++i) mean += z.z[i];
    mean /= static_cast<double>(b);
    double harmonic = 0.0;
    for (std::size_t j = k; j > b; --j) harmonic += 1.0 / static_cast<double>(j);
    return mean / (1.0 + harmonic);
}

double hill(const LogExcesses& z) { return trimmed_hill(z, z.k); }

namespace detail {

std::vector<double> trajectory_from_logs(const std::vector<double>& log_values,
                                         std::size_t k) {
    const double base = log_values[k];
    const std::vector<double> denom = rescale_denominators(k);
    std::vector<double> t(k);
    double prefix = 0.0;
    for (std::size_t b = 1; b <= k; ++b) {
        prefix += log_values[b - 1] - base;
        t[b - 1] = prefix / static_cast<double>(b) / denom[b - 1];
    }
    return t;
}

double population_variance(const std::vector<double>& values) {
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                        static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(values.size());
}

}  // namespace detail

LthTrajectory lth_trajectory(const SortedSample& s, std::size_t k) {
    if (k < 1 || k >= s.size()) {
        throw std::out_of_range("lth_trajectory requires 1 <= k <= n-1");
    }
    std::vector<double> log_values(k + 1);
    for (std::size_t i = 0; i <= k; ++i) log_values[i] = std::log(s[i]);

    LthTrajectory out;
    out.k = k;
    out.t = detail::trajectory_from_logs(log_values, k);
    out.emp_var = detail::population_variance(out.t);

    if (k > 1) {
        const double mean = std::accumulate(out.t.begin(), out.t.end(), 0.0) /
                            static_cast<double>(k);
        // OLS of t on b = 1..k; centered form keeps the sums small.
        const double b_mean = 0.5 * static_cast<double>(k + 1);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t b = 1; b <= k; ++b) {
            const double dx = static_cast<double>(b) - b_mean;
            sxy += dx * (out.t[b - 1] - mean);
            sxx += dx * dx;
        }
        out.slope = std::fabs(sxy / sxx);
    }
    return out;
}

double averaged_trimmed(const SortedSample& s, std::size_t k) {
    const LthTrajectory traj = lth_trajectory(s, k);
    return std::accumulate(traj.t.begin(), traj.t.end(), 0.0) /
           static_cast<double>(k);
}

std::vector<double> theta_weights(std::size_t k) {
    if (k < 1) throw std::out_of_range("theta_weights requires k >= 1");
    std::vector<double> theta(k);
    const std::vector<double> denom = rescale_denominators(k);
    double acc = 0.0;
    for (std::size_t b = k; b >= 1; --b) {
        acc += 1.0 / (static_cast<double>(b) * denom[b - 1]);
        theta[b - 1] = acc;
    }
    return theta;
}

double theta_asymptotic(std::size_t i, std::size_t k) {
    if (i < 1 || i > k) {
        throw std::out_of_range("theta_asymptotic requires 1 <= i <= k");
    }
    const double num = std::log(static_cast<double>(i) / static_cast<double>(k)) - 1.0;
    const double den = std::log(1.0 - 1.0 / static_cast<double>(k)) - 1.0;
    return std::log(num / den);
}

double upper_trimmed_hill(const SortedSample& s, std::size_t k0, std::size_t k) {
    if (k0 >= k) {
        throw std::out_of_range("upper_trimmed_hill requires k0 < k");
    }
    const LogExcesses ex = log_excesses(s, k);
    const double m = static_cast<double>(k - k0);
    double total = static_cast<double>(k0 + 1) * ex.z[k0];
    for (std::size_t i = k0 + 2; i <= k; ++i) total += ex.z[i - 1];
    return total / m;
}

double variance_bound(std::size_t b, std::size_t k, double xi) {
    if (b < 1 || b > k) {
        throw std::out_of_range("variance_bound requires 1 <= b <= k");
    }
    if (!(xi > 0.0)) throw std::domain_error("variance_bound requires xi > 0");
    // Denominator b + sum_{j=1}^{k-b} (b/(k-j+1))^2: one unit term for each of
    // the b order statistics that enter with full weight, plus the squared
    // partial weights. At b = k the sum is empty and the bound is xi^2/k,
    // the exact Hill variance.
    double denom = static_cast<double>(b);
    for (std::size_t j = 1; j + b <= k; ++j) {
        const double frac = static_cast<double>(b) / static_cast<double>(k - j + 1);
        denom += frac * frac;
    }
    return xi * xi / denom;
}

}  // namespace lthill
