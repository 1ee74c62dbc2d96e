#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "lthill/distributions.hpp"
#include "lthill/estimators.hpp"
#include "lthill/quadrature.hpp"
#include "lthill/rng.hpp"

using namespace lthill;

namespace {

const std::vector<double> kUGrid = {
    1e-6, 1e-4, 0.01, 0.1, 0.25, 0.458, 0.5, 0.75, 0.9, 0.99, 1.0 - 1e-6};

}  // namespace

TEST_CASE("closed-form quantiles round-trip through the cdf") {
    const std::vector<DistributionSpec> specs = {
        Pareto(1.0, 1.0),
        Pareto(0.5, 2.0),
        Burr(1.0, 0.5, 2.0),
        Burr(1.5, 2.0, 0.5),
        Frechet(1.0),
        Frechet(0.5),
        Gpd(0.5, 2.0),
        Gpd(2.5, 1.0),
        SplicedPareto::from_tail_index(0.25, 1.0, 1.3),
    };
    for (const auto& spec : specs) {
        for (double u : kUGrid) {
            const double x = quantile(spec, u);
            CHECK(x > 0.0);
            CHECK(cdf(spec, x) == doctest::Approx(u).epsilon(1e-10));
        }
    }
}

TEST_CASE("round trip holds for randomly drawn parameter sets") {
    // hand-rolled generator: 60 random (family, parameters, u) triples
    Rng rng(424242);
    auto u_draw = [&] { return 1e-6 + (1.0 - 2e-6) * rng.uniform01(); };
    auto pos = [&](double lo, double hi) {
        return lo + (hi - lo) * rng.uniform01();
    };
    for (int trial = 0; trial < 60; ++trial) {
        DistributionSpec spec = Pareto(1.0, 1.0);
        switch (trial % 5) {
            case 0: spec = Pareto(pos(0.1, 3.0), pos(0.1, 5.0)); break;
            case 1: spec = Burr(pos(0.2, 3.0), pos(0.2, 3.0), pos(0.2, 3.0)); break;
            case 2: spec = Frechet(pos(0.2, 4.0)); break;
            case 3: spec = Gpd(pos(0.1, 3.0), pos(0.2, 4.0)); break;
            default:
                spec = SplicedPareto::from_tail_index(pos(0.1, 0.6),
                                                      pos(0.7, 2.0),
                                                      pos(1.0, 3.0));
                break;
        }
        const double u = u_draw();
        const double x = quantile(spec, u);
        CHECK(cdf(spec, x) == doctest::Approx(u).epsilon(1e-9));
    }
}

TEST_CASE("quantile anchor values") {
    CHECK(quantile(DistributionSpec(Burr(1.0, 1.0, 1.0)), 0.5) ==
          doctest::Approx(1.0).epsilon(1e-14));  // survival at 1 is 1/2
    // GPD lower endpoint
    CHECK(quantile(DistributionSpec(Gpd(0.5, 2.0)), 1e-12) ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(quantile(DistributionSpec(Pareto(1.0, 1.0)), 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantile(DistributionSpec(Pareto(1.0, 1.0)), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantile(DistributionSpec(StudentTAbs(2.0)), 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(quantile(DistributionSpec(LogGamma(1.5, 1.0)), 0.5),
                    std::invalid_argument);
}

TEST_CASE("spliced Pareto is continuous at the splicing point") {
    const SplicedPareto sp = SplicedPareto::from_tail_index(0.25, 1.0, 1.3);
    const DistributionSpec spec(sp);
    const double eps = 1e-9;
    const double below = cdf(spec, sp.c - eps);
    const double above = cdf(spec, sp.c + eps);
    CHECK(std::fabs(above - below) < 1e-7);

    // the two branches meet exactly at F(c)
    const double fc = cdf(spec, sp.c);
    const double x_lo = quantile(spec, fc - 1e-12);
    const double x_hi = quantile(spec, fc + 1e-12);
    CHECK(x_lo == doctest::Approx(sp.c).epsilon(1e-9));
    CHECK(x_hi == doctest::Approx(sp.c).epsilon(1e-9));

    CHECK(sp.tail_index() == doctest::Approx(1.0));
    CHECK_THROWS_AS(SplicedPareto(0.25, -5.0, 1.3), std::invalid_argument);
    CHECK_THROWS_AS(SplicedPareto(0.25, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("sampling is deterministic given (spec, n, seed)") {
    Rng r1(77), r2(77);
    const SortedSample a = sample(DistributionSpec(Pareto(1.0, 1.0)), 100, r1);
    const SortedSample b = sample(DistributionSpec(Pareto(1.0, 1.0)), 100, r2);
    for (std::size_t i = 0; i < 100; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("hall_params maps the published family constants") {
    const HallParams burr = hall_params(DistributionSpec(Burr(1.0, 0.5, 2.0)));
    CHECK(burr.xi == doctest::Approx(1.0));
    CHECK(*burr.A == doctest::Approx(1.0));
    CHECK(*burr.D == doctest::Approx(-2.0));
    CHECK(burr.p == doctest::Approx(-0.5));

    const HallParams gpd = hall_params(DistributionSpec(Gpd(0.5, 2.0)));
    CHECK(gpd.xi == doctest::Approx(0.5));
    CHECK(*gpd.A == doctest::Approx(4.0));
    CHECK(*gpd.D == doctest::Approx(-1.0));
    CHECK(gpd.p == doctest::Approx(-0.5));

    const HallParams frechet = hall_params(DistributionSpec(Frechet(2.0)));
    CHECK(frechet.xi == doctest::Approx(0.5));
    CHECK(*frechet.A == doctest::Approx(1.0));
    CHECK(*frechet.D == doctest::Approx(-0.25));
    CHECK(frechet.p == doctest::Approx(-1.0));

    const HallParams pareto = hall_params(DistributionSpec(Pareto(0.7, 3.0)));
    CHECK(*pareto.D == 0.0);  // degenerate: no second-order term

    const HallParams tabs = hall_params(DistributionSpec(StudentTAbs(2.0)));
    CHECK(tabs.xi == doctest::Approx(0.5));
    CHECK(tabs.p == doctest::Approx(-1.0));
    CHECK_FALSE(tabs.A.has_value());
    CHECK_FALSE(tabs.D.has_value());

    CHECK_THROWS_AS(
        hall_params(DistributionSpec(SplicedPareto::from_tail_index(0.25, 1.0, 1.3))),
        std::invalid_argument);
    CHECK_THROWS_AS(hall_params(DistributionSpec(LogGamma(1.5, 1.0))),
                    std::invalid_argument);
}

TEST_CASE("log-gamma sampler matches the density (KS against integrated cdf)") {
    // density (1/Gamma(3/2)) sqrt(log x) x^{-2} on x > 1, integrated
    // numerically; the sampler goes exp(Gamma(3/2, 1)).
    const double norm = std::tgamma(1.5);
    auto density = [norm](double x) {
        return std::sqrt(std::log(x)) / (norm * x * x);
    };
    const std::size_t n = 10000;
    Rng rng(31337);
    const SortedSample s = sample(DistributionSpec(LogGamma(1.5, 1.0)), n, rng);

    // empirical cdf vs integrated density at interior grid points
    double max_gap = 0.0;
    for (double x : {1.2, 1.5, 2.0, 3.0, 5.0, 10.0, 30.0}) {
        const double cdf_num = integrate(density, 1.0, x, 1e-10).value;
        std::size_t count = 0;  // values() is descending
        for (double v : s.values()) {
            if (v <= x) ++count;
        }
        const double ecdf = static_cast<double>(count) / n;
        max_gap = std::max(max_gap, std::fabs(ecdf - cdf_num));
    }
    CHECK(max_gap < 0.02);
}

TEST_CASE("|t_2| Hill estimates concentrate near xi = 1/2 at small k/n") {
    const std::size_t n = 4000, k = 60, reps = 60;
    std::vector<double> hills;
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(606, r);
        const SortedSample s = sample(DistributionSpec(StudentTAbs(2.0)), n, rng);
        hills.push_back(hill(log_excesses(s, k)));
    }
    const auto st = testutil::summarize(hills);
    CHECK(std::fabs(st.mean - 0.5) < 0.06);
}

TEST_CASE("tail-index recovery at the theoretical optimum, bias-corrected") {
    // At the AMSE-optimal k the Hall-class bias Q0(n/k)/(1-p) is an order of
    // magnitude larger than the MC standard error, so the check subtracts it.
    struct Case {
        DistributionSpec spec;
        const char* name;
    };
    const std::vector<Case> cases = {
        {Burr(1.0, 0.5, 2.0), "burr(1,.5,2)"},
        {Frechet(1.0), "frechet(1)"},
        {Gpd(0.5, 2.0), "gpd(.5,2)"},
    };
    const std::size_t n = 10000, reps = 200;
    for (const auto& tc : cases) {
        CAPTURE(tc.name);
        const HallParams h = hall_params(tc.spec);
        const double k_opt = theoretical_k0_star(h, n);
        const std::size_t k = static_cast<std::size_t>(std::llround(k_opt));
        REQUIRE(k >= 2);
        REQUIRE(k < n);
        std::vector<double> hills;
        for (std::size_t r = 0; r < reps; ++r) {
            Rng rng(8080, r);
            const SortedSample s = sample(tc.spec, n, rng);
            hills.push_back(hill(log_excesses(s, k)));
        }
        const auto st = testutil::summarize(hills);
        const double q0 = h.p * (*h.D) *
                          std::pow(static_cast<double>(n) / static_cast<double>(k), h.p);
        const double predicted = h.xi + q0 / (1.0 - h.p);
        CHECK(std::fabs(st.mean - predicted) < 4.0 * st.se_mean);
    }
}

TEST_CASE("spec string parsing: grammar, case-insensitivity, errors") {
    const DistributionSpec b = parse_spec("burr:eta=1,tau=0.5,lam=2");
    CHECK(std::get<Burr>(b).tau == doctest::Approx(0.5));
    CHECK(true_xi(b) == doctest::Approx(1.0));

    const DistributionSpec b2 = parse_spec("BURR: Eta=1, TAU=0.5, lam=2");
    CHECK(std::get<Burr>(b2).lam == doctest::Approx(2.0));

    const DistributionSpec sp = parse_spec("spliced:xi0=0.25,xi=1,c=1.3");
    CHECK(std::get<SplicedPareto>(sp).r == doctest::Approx(-3.0));

    const DistributionSpec pr = parse_spec("pareto:xi=1");  // sigma defaults to 1
    CHECK(std::get<Pareto>(pr).sigma == doctest::Approx(1.0));

    CHECK_THROWS_AS(parse_spec("normal:mu=0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("burr:eta=1,tau=0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("burr:eta=1,tau=0.5,lam=2,zap=3"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("burr:eta=one,tau=0.5,lam=2"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("gpd:gamma=-1,sigma=1"), std::invalid_argument);

    // round trip through format_spec
    const DistributionSpec again = parse_spec(format_spec(b));
    CHECK(std::get<Burr>(again).eta == std::get<Burr>(b).eta);
}

TEST_CASE("true_xi covers every family") {
    CHECK(true_xi(DistributionSpec(Pareto(0.7, 1.0))) == doctest::Approx(0.7));
    CHECK(true_xi(DistributionSpec(SplicedPareto::from_tail_index(0.25, 1.0, 1.3))) ==
          doctest::Approx(1.0));
    CHECK(true_xi(DistributionSpec(Burr(1.0, 1.0, 1.0))) == doctest::Approx(1.0));
    CHECK(true_xi(DistributionSpec(Frechet(2.0))) == doctest::Approx(0.5));
    CHECK(true_xi(DistributionSpec(Gpd(2.5, 1.0))) == doctest::Approx(2.5));
    CHECK(true_xi(DistributionSpec(StudentTAbs(10.0))) == doctest::Approx(0.1));
    CHECK(true_xi(DistributionSpec(LogGamma(1.5, 1.0))) == doctest::Approx(1.0));
}
