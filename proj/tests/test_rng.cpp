#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "lthill/rng.hpp"

using namespace lthill;

TEST_CASE("same (seed, stream) reproduces the sequence bitwise") {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(42, 7), d(42, 8);
    bool all_equal = true;
    for (int i = 0; i < 64; ++i) {
        if (c.next_u64() != d.next_u64()) all_equal = false;
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("uniform01 stays strictly inside (0,1)") {
    Rng rng(1);
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("variate moments are near their targets") {
    Rng rng(2024);
    const std::size_t n = 200000;

    std::vector<double> exp_draws(n), norm_draws(n), gamma_draws(n);
    for (auto& v : exp_draws) v = rng.exponential();
    for (auto& v : norm_draws) v = rng.normal();
    for (auto& v : gamma_draws) v = rng.gamma(1.5);

    const auto e = testutil::summarize(exp_draws);
    CHECK(std::fabs(e.mean - 1.0) < 5.0 * e.se_mean);
    CHECK(std::fabs(e.variance - 1.0) < 5.0 * e.se_variance);

    const auto z = testutil::summarize(norm_draws);
    CHECK(std::fabs(z.mean) < 5.0 * z.se_mean);
    CHECK(std::fabs(z.variance - 1.0) < 5.0 * z.se_variance);

    const auto g = testutil::summarize(gamma_draws);
    CHECK(std::fabs(g.mean - 1.5) < 5.0 * g.se_mean);
    CHECK(std::fabs(g.variance - 1.5) < 5.0 * g.se_variance);

    std::vector<double> chi_draws(n);
    for (auto& v : chi_draws) v = rng.chi_squared(10.0);
    const auto c = testutil::summarize(chi_draws);
    CHECK(std::fabs(c.mean - 10.0) < 5.0 * c.se_mean);
    CHECK(std::fabs(c.variance - 20.0) < 5.0 * c.se_variance);
}
