#include "lthill/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lthill {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << name << " must be > 0, got " << v;
        throw std::invalid_argument(msg.str());
    }
}

void check_u(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("quantile requires u in (0,1)");
    }
}

}  // namespace

Pareto::Pareto(double xi_, double sigma_) : xi(xi_), sigma(sigma_) {
    require_positive(xi, "xi");
    require_positive(sigma, "sigma");
}

SplicedPareto::SplicedPareto(double xi0_, double r_, double c_)
    : xi0(xi0_), r(r_), c(c_) {
    require_positive(xi0, "xi0");
    if (!(c >= 1.0)) throw std::invalid_argument("splicing point c must be >= 1");
    if (!(r > -1.0 / xi0)) {
        throw std::invalid_argument("spliced Pareto requires r > -1/xi0");
    }
}

SplicedPareto SplicedPareto::from_tail_index(double xi0, double xi, double c) {
    require_positive(xi, "xi");
    return SplicedPareto(xi0, 1.0 / xi - 1.0 / xi0, c);
}

Burr::Burr(double eta_, double tau_, double lam_) : eta(eta_), tau(tau_), lam(lam_) {
    require_positive(eta, "eta");
    require_positive(tau, "tau");
    require_positive(lam, "lam");
}

Frechet::Frechet(double alpha_) : alpha(alpha_) { require_positive(alpha, "alpha"); }

Gpd::Gpd(double gamma_, double sigma_) : gamma(gamma_), sigma(sigma_) {
    require_positive(gamma, "gamma");
    require_positive(sigma, "sigma");
}

StudentTAbs::StudentTAbs(double m_) : m(m_) { require_positive(m, "m"); }

LogGamma::LogGamma(double shape_, double rate_) : shape(shape_), rate(rate_) {
    require_positive(shape, "shape");
    require_positive(rate, "rate");
}

namespace {

// Normalizer and body mass of the spliced distribution function.
struct SplicedPieces {
    double norm;    // 1 - c^{-1/xi0} + c^{-1/xi0 - r}
    double body_at_c;  // F(c) = (1 - c^{-1/xi0}) / norm
};

SplicedPieces spliced_pieces(const SplicedPareto& sp) {
    const double body_exp = -1.0 / sp.xi0;
    const double a = std::pow(sp.c, body_exp);          // c^{-1/xi0}
    const double b = std::pow(sp.c, body_exp - sp.r);   // c^{-1/xi0 - r}
    SplicedPieces out;
    out.norm = 1.0 - a + b;
    out.body_at_c = (1.0 - a) / out.norm;
    return out;
}

struct QuantileVisitor {
    double u;

    double operator()(const Pareto& d) const {
        return d.sigma * std::pow(1.0 - u, -d.xi);
    }
    double operator()(const SplicedPareto& d) const {
        const SplicedPieces pc = spliced_pieces(d);
        if (u < pc.body_at_c) {
            return std::pow(1.0 - u * pc.norm, -d.xi0);
        }
        // tail branch: x^{-1/xi0 - r} = norm (1 - u)
        return std::pow(pc.norm * (1.0 - u), -d.tail_index());
    }
    double operator()(const Burr& d) const {
        return std::pow(d.eta * (std::pow(1.0 - u, -1.0 / d.lam) - 1.0), 1.0 / d.tau);
    }
    double operator()(const Frechet& d) const {
        return std::pow(-std::log(u), -1.0 / d.alpha);
    }
    double operator()(const Gpd& d) const {
        return d.sigma * (std::pow(1.0 - u, -d.gamma) - 1.0) / d.gamma;
    }
    double operator()(const StudentTAbs&) const {
        throw std::invalid_argument("|Student-t| has no closed-form quantile");
    }
    double operator()(const LogGamma&) const {
        throw std::invalid_argument("log-gamma has no closed-form quantile");
    }
};

struct CdfVisitor {
    double x;

    double operator()(const Pareto& d) const {
        if (x <= d.sigma) return 0.0;
        return 1.0 - std::pow(x / d.sigma, -1.0 / d.xi);
    }
    double operator()(const SplicedPareto& d) const {
        if (x <= 1.0) return 0.0;
        const SplicedPieces pc = spliced_pieces(d);
        const double body_exp = -1.0 / d.xi0;
        if (x < d.c) return (1.0 - std::pow(x, body_exp)) / pc.norm;
        const double a = std::pow(d.c, body_exp);
        const double b = std::pow(d.c, body_exp - d.r);
        return (1.0 - std::pow(x, body_exp - d.r) - (a - b)) / pc.norm;
    }
    double operator()(const Burr& d) const {
        if (x <= 0.0) return 0.0;
        return 1.0 - std::pow(d.eta / (d.eta + std::pow(x, d.tau)), d.lam);
    }
    double operator()(const Frechet& d) const {
        if (x <= 0.0) return 0.0;
        return std::exp(-std::pow(x, -d.alpha));
    }
    double operator()(const Gpd& d) const {
        if (x <= 0.0) return 0.0;
        return 1.0 - std::pow(1.0 + d.gamma * x / d.sigma, -1.0 / d.gamma);
    }
    double operator()(const StudentTAbs&) const {
        throw std::invalid_argument("|Student-t| cdf not implemented");
    }
    double operator()(const LogGamma&) const {
        throw std::invalid_argument("log-gamma cdf not implemented");
    }
};

struct DrawVisitor {
    Rng& rng;

    double operator()(const StudentTAbs& d) const {
        const double z = rng.normal();
        const double v = rng.chi_squared(d.m);
        return std::fabs(z / std::sqrt(v / d.m));
    }
    double operator()(const LogGamma& d) const {
        return std::exp(rng.gamma(d.shape) / d.rate);
    }
    template <class D>
    double operator()(const D& d) const {
        return QuantileVisitor{rng.uniform01()}(d);
    }
};

}  // namespace

double quantile(const DistributionSpec& spec, double u) {
    check_u(u);
    return std::visit(QuantileVisitor{u}, spec);
}

double cdf(const DistributionSpec& spec, double x) {
    return std::visit(CdfVisitor{x}, spec);
}

SortedSample sample(const DistributionSpec& spec, std::size_t n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("sample requires n >= 2");
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = std::visit(DrawVisitor{rng}, spec);
    }
    return SortedSample::from_data(std::move(values));
}

namespace {

struct HallVisitor {
    HallParams operator()(const Pareto& d) const {
        // Exact Pareto: no second-order term. p is immaterial with D = 0;
        // the canonical -1 is stored.
        return HallParams{d.xi, -1.0, d.sigma, 0.0};
    }
    HallParams operator()(const Burr& d) const {
        return HallParams{1.0 / (d.lam * d.tau), -1.0 / d.lam,
                          std::pow(d.eta, 1.0 / d.tau), -1.0 / d.tau};
    }
    HallParams operator()(const Frechet& d) const {
        return HallParams{1.0 / d.alpha, -1.0, 1.0, -0.5 / d.alpha};
    }
    HallParams operator()(const Gpd& d) const {
        return HallParams{d.gamma, -d.gamma, d.sigma / d.gamma, -1.0};
    }
    HallParams operator()(const StudentTAbs& d) const {
        HallParams h;
        h.xi = 1.0 / d.m;
        h.p = -2.0 / d.m;
        return h;  // A, D not available
    }
    HallParams operator()(const SplicedPareto&) const {
        throw std::invalid_argument("no Hall-class map for the spliced Pareto");
    }
    HallParams operator()(const LogGamma&) const {
        throw std::invalid_argument("no Hall-class map for the log-gamma");
    }
};

struct XiVisitor {
    double operator()(const Pareto& d) const { return d.xi; }
    double operator()(const SplicedPareto& d) const { return d.tail_index(); }
    double operator()(const Burr& d) const { return 1.0 / (d.lam * d.tau); }
    double operator()(const Frechet& d) const { return 1.0 / d.alpha; }
    double operator()(const Gpd& d) const { return d.gamma; }
    double operator()(const StudentTAbs& d) const { return 1.0 / d.m; }
    double operator()(const LogGamma& d) const { return 1.0 / d.rate; }
};

}  // namespace

HallParams hall_params(const DistributionSpec& spec) {
    return std::visit(HallVisitor{}, spec);
}

double true_xi(const DistributionSpec& spec) {
    return std::visit(XiVisitor{}, spec);
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

using ParamMap = std::map<std::string, double>;

double take(ParamMap& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw std::invalid_argument("distribution spec is missing parameter '" + key + "'");
    }
    const double v = it->second;
    params.erase(it);
    return v;
}

void expect_empty(const ParamMap& params) {
    if (!params.empty()) {
        throw std::invalid_argument("unknown distribution parameter '" +
                                    params.begin()->first + "'");
    }
}

}  // namespace

DistributionSpec parse_spec(std::string_view text) {
    const std::string spec(text);
    const auto colon = spec.find(':');
    const std::string family = lower(strip(spec.substr(0, colon)));
    ParamMap params;
    if (colon != std::string::npos) {
        std::istringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            item = strip(item);
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("expected key=value in '" + item + "'");
            }
            const std::string key = lower(strip(item.substr(0, eq)));
            std::size_t used = 0;
            const std::string value = strip(item.substr(eq + 1));
            double parsed;
            try {
                parsed = std::stod(value, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad numeric value '" + value + "'");
            }
            if (used != value.size()) {
                throw std::invalid_argument("bad numeric value '" + value + "'");
            }
            params[key] = parsed;
        }
    }

    if (family == "pareto") {
        const double xi = take(params, "xi");
        const double sigma = params.count("sigma") ? take(params, "sigma") : 1.0;
        expect_empty(params);
        return Pareto(xi, sigma);
    }
    if (family == "spliced" || family == "spliced_pareto") {
        const double xi0 = take(params, "xi0");
        const double c = take(params, "c");
        if (params.count("r")) {
            const double r = take(params, "r");
            expect_empty(params);
            return SplicedPareto(xi0, r, c);
        }
        const double xi = take(params, "xi");
        expect_empty(params);
        return SplicedPareto::from_tail_index(xi0, xi, c);
    }
    if (family == "burr") {
        const double eta = take(params, "eta");
        const double tau = take(params, "tau");
        const double lam = take(params, "lam");
        expect_empty(params);
        return Burr(eta, tau, lam);
    }
    if (family == "frechet") {
        const double alpha = take(params, "alpha");
        expect_empty(params);
        return Frechet(alpha);
    }
    if (family == "gpd") {
        const double gamma = take(params, "gamma");
        const double sigma = take(params, "sigma");
        expect_empty(params);
        return Gpd(gamma, sigma);
    }
    if (family == "student_t_abs" || family == "student" || family == "tabs") {
        const double m = take(params, "m");
        expect_empty(params);
        return StudentTAbs(m);
    }
    if (family == "log_gamma" || family == "loggamma") {
        const double shape = take(params, "shape");
        const double rate = take(params, "rate");
        expect_empty(params);
        return LogGamma(shape, rate);
    }
    throw std::invalid_argument("unknown distribution family '" + family + "'");
}

namespace {

struct FormatVisitor {
    std::string operator()(const Pareto& d) const {
        std::ostringstream os;
        os << "pareto:xi=" << d.xi << ",sigma=" << d.sigma;
        return os.str();
    }
    std::string operator()(const SplicedPareto& d) const {
        std::ostringstream os;
        os << "spliced:xi0=" << d.xi0 << ",r=" << d.r << ",c=" << d.c;
        return os.str();
    }
    std::string operator()(const Burr& d) const {
        std::ostringstream os;
        os << "burr:eta=" << d.eta << ",tau=" << d.tau << ",lam=" << d.lam;
        return os.str();
    }
    std::string operator()(const Frechet& d) const {
        std::ostringstream os;
        os << "frechet:alpha=" << d.alpha;
        return os.str();
    }
    std::string operator()(const Gpd& d) const {
        std::ostringstream os;
        os << "gpd:gamma=" << d.gamma << ",sigma=" << d.sigma;
        return os.str();
    }
    std::string operator()(const StudentTAbs& d) const {
        std::ostringstream os;
        os << "student_t_abs:m=" << d.m;
        return os.str();
    }
    std::string operator()(const LogGamma& d) const {
        std::ostringstream os;
        os << "log_gamma:shape=" << d.shape << ",rate=" << d.rate;
        return os.str();
    }
};

}  // namespace

std::string format_spec(const DistributionSpec& spec) {
    return std::visit(FormatVisitor{}, spec);
}

}  // namespace lthill
