#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "helpers.hpp"
#include "lthill/estimators.hpp"
#include "lthill/special_functions.hpp"
#include "lthill/study.hpp"

using namespace lthill;

namespace {

StudyConfig small_pareto_cfg() {
    StudyConfig cfg;
    cfg.spec = Pareto(1.0, 1.0);
    cfg.n = 200;
    cfg.n_sim = 400;
    cfg.k_grid = {10, 40, 80, 150};
    cfg.selector_canonical_p = true;
    cfg.seed = 90210;
    return cfg;
}

}  // namespace

TEST_CASE("study output is bit-identical across execution policies") {
    const StudyConfig cfg = small_pareto_cfg();
    const StudyResult a = run_study_serial(cfg);
    const StudyResult b = run_study_parallel(cfg);
    REQUIRE(a.curves.size() == b.curves.size());
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (std::size_t i = 0; i < a.curves[c].cells.size(); ++i) {
            CHECK(a.curves[c].cells[i].bias == b.curves[c].cells[i].bias);
            CHECK(a.curves[c].cells[i].variance == b.curves[c].cells[i].variance);
            CHECK(a.curves[c].cells[i].mse == b.curves[c].cells[i].mse);
        }
    }
    REQUIRE(a.draws.size() == b.draws.size());
    for (std::size_t d = 0; d < a.draws.size(); ++d) {
        REQUIRE(a.draws[d].estimates.size() == b.draws[d].estimates.size());
        for (std::size_t r = 0; r < a.draws[d].estimates.size(); ++r) {
            CHECK(a.draws[d].estimates[r] == b.draws[d].estimates[r]);
            CHECK(a.draws[d].k_selected[r] == b.draws[d].k_selected[r]);
        }
    }
}

TEST_CASE("mse identity holds per cell") {
    const StudyResult res = run_study(small_pareto_cfg(), Exec::Parallel);
    for (const auto& curve : res.curves) {
        for (const auto& cell : curve.cells) {
            CHECK(std::fabs(cell.mse - cell.bias * cell.bias - cell.variance) <
                  1e-10);
        }
    }
}

TEST_CASE("exact Pareto: every trimmed estimator is statistically unbiased") {
    const StudyResult res = run_study(small_pareto_cfg(), Exec::Parallel);
    for (const auto& curve : res.curves) {
        for (std::size_t i = 0; i < curve.cells.size(); ++i) {
            const CellStats& c = curve.cells[i];
            const double se = std::sqrt(c.variance / 400.0);
            CHECK(std::fabs(c.bias) < 4.0 * se);
        }
    }
    CHECK(res.n_failed == 0);
}

TEST_CASE("averaged estimator improves MSE on most of the k grid (Frechet)") {
    StudyConfig cfg;
    cfg.spec = Frechet(1.0);
    cfg.n = 500;
    cfg.n_sim = 150;
    for (std::size_t k = 10; k <= 490; k += 20) cfg.k_grid.push_back(k);
    cfg.selector_canonical_p = false;
    cfg.seed = 5150;
    const StudyResult res = run_study(cfg, Exec::Parallel);
    REQUIRE(res.curves.size() == 2);
    const auto& hill_curve = res.curves[0];
    const auto& avg_curve = res.curves[1];
    std::size_t wins = 0;
    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
        if (avg_curve.cells[i].mse <= hill_curve.cells[i].mse) ++wins;
    }
    CHECK(static_cast<double>(wins) >=
          0.7 * static_cast<double>(cfg.k_grid.size()));
}

TEST_CASE("failed replicates are counted and reported, not dropped silently") {
    StudyConfig cfg;
    cfg.spec = Pareto(1.0, 1.0);
    cfg.n = 50;
    cfg.n_sim = 40;
    cfg.k_grid = {10};
    // a selector that rejects samples whose maximum is large: some replicates
    // fail deterministically, independent of scheduling
    cfg.plugin_selector = [](const SortedSample& s) -> std::size_t {
        if (s[0] > 30.0) throw std::runtime_error("synthetic selector failure");
        return 10;
    };
    cfg.seed = 321;
    const StudyResult serial = run_study_serial(cfg);
    const StudyResult parallel = run_study_parallel(cfg);
    CHECK(serial.n_failed > 0);
    CHECK(serial.n_failed < cfg.n_sim);
    CHECK(serial.n_failed == parallel.n_failed);
    CHECK(serial.first_failure == parallel.first_failure);
    CHECK(serial.first_failure.find("replicate") != std::string::npos);
    // successes still aggregate
    CHECK(serial.draws[0].estimates.size() == cfg.n_sim - serial.n_failed);
}

TEST_CASE("selector variants produce draws with the configured names") {
    StudyConfig cfg;
    cfg.spec = Burr(1.0, 0.5, 2.0);
    cfg.n = 150;
    cfg.n_sim = 25;
    cfg.selector_canonical_p = true;
    cfg.selector_true_p = true;
    cfg.plugin_selector = [](const SortedSample& s) { return s.size() / 4; };
    cfg.seed = 11;
    const StudyResult res = run_study(cfg, Exec::Parallel);
    REQUIRE(res.draws.size() == 6);  // 3 selectors x 2 estimators
    CHECK(res.draws[0].selector == "canonical_p");
    CHECK(res.draws[2].selector == "true_p");
    CHECK(res.draws[4].selector == "plugin");
    for (const auto& d : res.draws) {
        CHECK(d.estimates.size() == 25);
        for (double v : d.estimates) CHECK(v > 0.0);
    }
    // plugin selector picked n/4 = 37 everywhere
    for (std::size_t r = 0; r < res.draws[4].k_selected.size(); ++r) {
        CHECK(res.draws[4].k_selected[r] == 37);
    }
}

TEST_CASE("representation oracles") {
    // D = 0: pure noise term with mean exactly xi in expectation
    HallParams pareto{1.0, -1.0, 1.0, 0.0};
    Rng r1(300);
    const auto pure = simulate_tbk_representation(25, 100, 10000, pareto, 20000, r1);
    const auto stp = testutil::summarize(pure);
    CHECK(std::fabs(stp.mean - 1.0) < 4.0 * stp.se_mean);

    // mean of the representation minus xi equals Q0(n/k) c_{b,k,p}
    HallParams burr{1.0, -1.0, 1.0, -1.0};  // Burr all parameters 1
    const std::size_t b = 30, k = 100, n = 10000;
    Rng r2(301);
    const auto rep = simulate_tbk_representation(b, k, n, burr, 40000, r2);
    const auto str = testutil::summarize(rep);
    const double q0 = burr.p * (*burr.D) * std::pow(100.0, burr.p);
    const double expected_bias = q0 * c_bkp(b, k, SecondOrderP(-1.0));
    CHECK(std::fabs(str.mean - 1.0 - expected_bias) < 4.0 * str.se_mean);

    // data route vs representation at matching scales (dual simulation)
    const std::size_t reps = 3000, n_small = 20000, k_small = 500, b_small = 150;
    std::vector<double> data_route(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(302, r);
        const SortedSample s = sample(DistributionSpec(Burr(1.0, 1.0, 1.0)),
                                      n_small, rng);
        data_route[r] = lth_trajectory(s, k_small).t[b_small - 1];
    }
    Rng r3(303);
    const auto rep_route = simulate_tbk_representation(
        b_small, k_small, n_small, burr, reps, r3);
    const auto sd = testutil::summarize(data_route);
    const auto sr = testutil::summarize(rep_route);
    CHECK(std::fabs(sd.mean - sr.mean) / sr.mean < 0.10);
    CHECK(std::fabs(sd.variance - sr.variance) / sr.variance < 0.10);
}

TEST_CASE("averaged-estimator representation: bias constant and variance form") {
    // The S(j,k) weights are the asymptotic ones, so the sampler's exact mean
    // is (xi/k) sum_j S(j,k) + Q0 cbar, with (1/k) sum_j S(j,k) -> 1 only as
    // k grows; the MC draws are checked against that analytic mean.
    const std::size_t k = 200, n = 20000;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double sj = s_function(j, k);
        s1 += sj;
        s2 += sj * sj;
    }
    const double mean_weights = s1 / static_cast<double>(k);
    CHECK(std::fabs(mean_weights - 1.0) < 0.01);  // finite-k Riemann gap

    HallParams pareto{1.0, -1.0, 1.0, 0.0};
    Rng r1(400);
    const auto pure = simulate_tbar_representation(k, n, pareto, 20000, r1);
    const auto stp = testutil::summarize(pure);
    CHECK(std::fabs(stp.mean - mean_weights) < 4.0 * stp.se_mean);

    // variance of the representation is (xi^2/k^2) sum_j S(j,k)^2
    const double analytic = s2 / (static_cast<double>(k) * static_cast<double>(k));
    CHECK(std::fabs(stp.variance - analytic) < 4.0 * stp.se_variance);

    // the Hall-class case adds exactly Q0(n/k) cbar to the mean
    HallParams burr{1.0, -1.0, 1.0, -1.0};
    Rng r2(401);
    const auto biased = simulate_tbar_representation(k, n, burr, 20000, r2);
    const auto stb = testutil::summarize(biased);
    const double q0 = burr.p * (*burr.D) *
                      std::pow(static_cast<double>(n) / k, burr.p);
    const double expected = mean_weights + q0 * cbar_kp(SecondOrderP(-1.0));
    CHECK(std::fabs(stb.mean - expected) < 4.0 * stb.se_mean);

    // the asymptotic normalization (1/k) sum_j S(j,k) approaches 1 from above
    double s1_big = 0.0;
    for (std::size_t j = 1; j <= 4000; ++j) s1_big += s_function(j, 4000);
    CHECK(std::fabs(s1_big / 4000.0 - 1.0) < std::fabs(mean_weights - 1.0));
}

TEST_CASE("Burr trajectory variance has an interior minimum near the optimum scale") {
    // The mean trajectory variance for Burr all-1 at n = 1000 is U-shaped
    // with its minimum at a few hundred top order statistics; the
    // formula-level minimizer (about 331) sits on the right shoulder. Common
    // replicates keep the grid estimates strongly correlated, so the
    // ordering is stable at 500 replicates.
    const std::size_t n = 1000, reps = 500;
    const std::vector<std::size_t> ks = {50, 150, 200, 250, 326, 600};
    std::vector<double> mean_ev(ks.size(), 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(929, r);
        const SortedSample s = sample(DistributionSpec(Burr(1.0, 1.0, 1.0)), n, rng);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            mean_ev[i] += lth_trajectory(s, ks[i]).emp_var;
        }
    }
    // interior minimum: both tails of the grid lie above the middle
    const double mid = std::min({mean_ev[1], mean_ev[2], mean_ev[3]});
    CHECK(mean_ev[0] > mid);   // noise-dominated low k
    CHECK(mean_ev[5] > mid);   // bias-dominated high k
    CHECK(mean_ev[4] < mean_ev[5]);  // 326 clearly beats 600
    CHECK(mean_ev[4] < mean_ev[0]);  // and beats the low-k regime
}

TEST_CASE("trajectory-variance mean: implementation matches the exact finite-k oracle") {
    // Deterministic oracle: E[(1/k) sum_b (T_b - Tbar)^2] under exact Pareto
    // data, computed from the weight matrix. The MC average over replicates
    // must match it. The asymptotic constant C is approached only
    // logarithmically in k (0.264 at k = 1000 vs C = 0.5027), which the
    // direction check below documents.
    const std::size_t k = 100, n = 1000, reps = 4000;
    std::vector<double> empvars(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(717, r);
        const SortedSample s = sample(DistributionSpec(Pareto(1.0, 1.0)), n, rng);
        empvars[r] = lth_trajectory(s, k).emp_var;
    }
    const auto st = testutil::summarize(empvars);
    const double exact = testutil::exact_trajectory_variance_mean(k, 1.0);
    CHECK(std::fabs(st.mean - exact) < 4.0 * st.se_mean);

    // k * exact grows toward C from below
    const double at100 = 100.0 * testutil::exact_trajectory_variance_mean(100, 1.0);
    const double at400 = 400.0 * testutil::exact_trajectory_variance_mean(400, 1.0);
    const double C = universal_constants().C;
    CHECK(at100 < at400);
    CHECK(at400 < C);
}
