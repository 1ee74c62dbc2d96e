#pragma once

// Shared test utilities: independent oracles and small statistics helpers.
// Everything here is deliberately written from the defining formulas, not
// via the library code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace testutil {

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;    // population normalizer
    double se_mean = 0.0;     // sd / sqrt(n)
    double se_variance = 0.0; // sqrt((m4 - var^2)/n), large-sample form
    std::size_t n = 0;
};

inline MeanVar summarize(const std::vector<double>& xs) {
    MeanVar out;
    out.n = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(xs.size());
    m4 /= static_cast<double>(xs.size());
    out.mean = mean;
    out.variance = m2;
    out.se_mean = std::sqrt(m2 / static_cast<double>(xs.size()));
    out.se_variance = std::sqrt(std::max(0.0, m4 - m2 * m2) /
                                static_cast<double>(xs.size()));
    return out;
}

// Exact variance of T_{b,k} under an exact Pareto tail, from the weight
// representation: xi^2 sum_j w_j^2 / (sum_j w_j)^2 with
// w_j = (k - max(j,q) + 1)/(k - j + 1), q = k - b + 1.
inline double exact_tbk_variance(std::size_t b, std::size_t k, double xi) {
    const std::size_t q = k - b + 1;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const std::size_t jq = j > q ? j : q;
        const double w = static_cast<double>(k - jq + 1) / static_cast<double>(k - j + 1);
        sum += w;
        sum_sq += w * w;
    }
    return xi * xi * sum_sq / (sum * sum);
}

// Exact E[(1/k) sum_b (T_{b,k} - Tbar_k)^2] under an exact Pareto tail:
// (xi^2/k) sum_b sum_j (w_{bj} - wbar_j)^2 with normalized weight rows.
// O(k^2); fine for k up to a few thousand.
inline double exact_trajectory_variance_mean(std::size_t k, double xi) {
    std::vector<double> wbar(k, 0.0);
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (std::size_t b = 1; b <= k; ++b) {
        const std::size_t q = k - b + 1;
        double norm = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            const std::size_t jq = j > q ? j : q;
            rows[b - 1][j - 1] =
                static_cast<double>(k - jq + 1) / static_cast<double>(k - j + 1);
            norm += rows[b - 1][j - 1];
        }
        for (std::size_t j = 0; j < k; ++j) {
            rows[b - 1][j] /= norm;
            wbar[j] += rows[b - 1][j] / static_cast<double>(k);
        }
    }
    double acc = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
        for (std::size_t j = 0; j < k; ++j) {
            const double d = rows[b][j] - wbar[j];
            acc += d * d;
        }
    }
    return xi * xi * acc / static_cast<double>(k);
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        const double fa = static_cast<double>(ia) / static_cast<double>(a.size());
        const double fb = static_cast<double>(ib) / static_cast<double>(b.size());
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

// Golden-section minimizer over [lo, hi] for unimodal f.
template <class F>
double golden_min(F f, double lo, double hi, double tol = 1e-8) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::fabs(a))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace testutil
