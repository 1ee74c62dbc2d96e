#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lthill/distributions.hpp"
#include "lthill/exec.hpp"
#include "lthill/rng.hpp"
#include "lthill/sorted_sample.hpp"
#include "lthill/threshold.hpp"

namespace lthill {

// A replicated estimator study: bias/variance/MSE curves over a k grid plus
// replicate-level draws at adaptively selected thresholds.
struct StudyConfig {
    DistributionSpec spec = Pareto(1.0, 1.0);
    std::size_t n = 500;
    std::size_t n_sim = 200;
    std::vector<std::size_t> k_grid;
    bool use_hill = true;
    bool use_averaged = true;
    bool selector_canonical_p = true;  // empirical-variance selector at p = -1
    bool selector_true_p = false;      // same selector with the family's p
    std::function<std::size_t(const SortedSample&)> plugin_selector;  // optional
    double lower_frac = 0.2;
    std::uint64_t seed = 0;
};

struct CellStats {
    double bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;  // bias^2 + variance, assembled from the same moments
};

struct EstimatorCurve {
    std::string estimator;  // "hill" or "averaged_trimmed"
    std::vector<CellStats> cells;  // one per k_grid entry
};

struct SelectorDraws {
    std::string estimator;
    std::string selector;  // "canonical_p", "true_p", "plugin"
    std::vector<double> estimates;       // one per successful replicate
    std::vector<std::size_t> k_selected;
};

struct StudyResult {
    double true_xi = 0.0;
    std::vector<std::size_t> k_grid;
    std::vector<EstimatorCurve> curves;
    std::vector<SelectorDraws> draws;
    std::size_t n_failed = 0;
    std::string first_failure;  // "replicate <r>: <what>" when n_failed > 0
};

// Runs the study with one RNG substream per replicate ((seed, replicate));
// aggregation order is fixed, so results are bit-identical across worker
// counts and execution policies. Degenerate replicates are counted and
// reported, never silently dropped; throws only if every replicate fails.
StudyResult run_study(const StudyConfig& cfg, Exec exec = Exec::Parallel);
StudyResult run_study_serial(const StudyConfig& cfg);
StudyResult run_study_parallel(const StudyConfig& cfg);

// Draws from the asymptotic distributional identity of T_{b,k}:
//   xi (Ebar_b + sum_{j=b+1}^k E_j/j) / (1 + sum_{j=b+1}^k 1/j) + Q0(n/k) c_{b,k,p}
// with Q0(x) = p D x^p. Distributional oracle for the data route.
std::vector<double> simulate_tbk_representation(std::size_t b, std::size_t k,
                                                std::size_t n, const HallParams& h,
                                                std::size_t n_mc, Rng& rng);

// Same for the averaged estimator: (xi/k) sum_j E_j S(j,k) + Q0(n/k) cbar.
std::vector<double> simulate_tbar_representation(std::size_t k, std::size_t n,
                                                 const HallParams& h,
                                                 std::size_t n_mc, Rng& rng);

}  // namespace lthill
