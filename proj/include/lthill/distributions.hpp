#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "lthill/rng.hpp"
#include "lthill/sorted_sample.hpp"
#include "lthill/threshold.hpp"

namespace lthill {

// Heavy-tailed families used by the simulation studies. All shape/scale
// parameters are validated at construction.

struct Pareto {
    double xi;     // tail index
    double sigma;  // scale (left endpoint)
    Pareto(double xi_, double sigma_);
};

// Two Pareto regimes pasted continuously at the splicing point c: body index
// xi0 on [1, c), tail index xi = 1/(1/xi0 + r) from c on.
struct SplicedPareto {
    double xi0;
    double r;  // must satisfy r > -1/xi0
    double c;  // splicing point, c >= 1
    SplicedPareto(double xi0_, double r_, double c_);
    // Convenience parametrization by the tail index: r = 1/xi - 1/xi0.
    static SplicedPareto from_tail_index(double xi0, double xi, double c);
    double tail_index() const { return 1.0 / (1.0 / xi0 + r); }
};

struct Burr {
    double eta, tau, lam;  // survival (eta / (eta + x^tau))^lam
    Burr(double eta_, double tau_, double lam_);
};

struct Frechet {
    double alpha;  // distribution function exp(-x^{-alpha})
    explicit Frechet(double alpha_);
};

struct Gpd {
    double gamma, sigma;  // survival (1 + gamma x / sigma)^{-1/gamma}
    Gpd(double gamma_, double sigma_);
};

// |t_m|: absolute value of a Student-t variate, sampled compositionally as
// |N / sqrt(chi2_m / m)|. No closed-form quantile.
struct StudentTAbs {
    double m;  // degrees of freedom
    explicit StudentTAbs(double m_);
};

// exp(G) with G ~ Gamma(shape, rate); density
// rate^shape (log x)^{shape-1} x^{-rate-1} / Gamma(shape) on x > 1.
struct LogGamma {
    double shape, rate;
    LogGamma(double shape_, double rate_);
};

using DistributionSpec =
    std::variant<Pareto, SplicedPareto, Burr, Frechet, Gpd, StudentTAbs, LogGamma>;

// Closed-form quantile F^{-1}(u), u in (0, 1). Throws std::invalid_argument
// for StudentTAbs and LogGamma (compositional sampling only) and
// std::domain_error for u outside (0, 1).
double quantile(const DistributionSpec& spec, double u);

// Distribution function for the closed-form families (round-trip checks and
// the splicing-point continuity test); same unsupported set as quantile.
double cdf(const DistributionSpec& spec, double x);

// n draws, sorted descending. Inverse transform where the quantile exists,
// otherwise the compositional samplers described on the structs.
SortedSample sample(const DistributionSpec& spec, std::size_t n, Rng& rng);

// Second-order tail characteristics per family; A/D are unset for |t_m| and
// the call throws for SplicedPareto and LogGamma (no map available). Pareto
// returns the degenerate D = 0.
HallParams hall_params(const DistributionSpec& spec);

// Tail index of every family (available even where hall_params is not).
double true_xi(const DistributionSpec& spec);

// Parses the compact CLI grammar "family:key=value,key=value", e.g.
// "burr:eta=1,tau=0.5,lam=2". Family and key names are case-insensitive.
// Families: pareto(xi,sigma), spliced(xi0,c, xi or r), burr(eta,tau,lam),
// frechet(alpha), gpd(gamma,sigma), student_t_abs(m), log_gamma(shape,rate).
DistributionSpec parse_spec(std::string_view text);

// Canonical round-trippable form of a spec (for logs and file headers).
std::string format_spec(const DistributionSpec& spec);

}  // namespace lthill
