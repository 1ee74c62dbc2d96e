#include "lthill/special_functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lthill/errors.hpp"
#include "lthill/quadrature.hpp"

namespace lthill {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606065120900824024;
constexpr double kE = 2.718281828459045235360287471352662;

// E1 via the alternating series -gamma - log x + sum_{n>=1} (-1)^{n+1} x^n / (n n!).
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;  // x^n / n!
    for (int n = 1; n <= 60; ++n) {
        term *= x / n;
        const double add = ((n & 1) ? term : -term) / n;
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Continued fraction for e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...)))),
// evaluated by the modified Lentz algorithm. Returns the scaled value.
double e1_cf_scaled(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n <= 200; ++n) {
        const double an = -static_cast<double>(n) * n;
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

SecondOrderP::SecondOrderP(double p) : p_(p) {
    if (!(p < 0.0)) {
        std::ostringstream msg;
        msg << "second-order parameter must be negative, got " << p;
        throw std::domain_error(msg.str());
    }
}

double exp_integral(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("exp_integral requires x > 0");
    }
    if (x < 1.0) return e1_series(x);
    return std::exp(-x) * e1_cf_scaled(x);
}

double exp_integral_scaled(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("exp_integral_scaled requires x > 0");
    }
    if (x < 1.0) return std::exp(x) * e1_series(x);
    return e1_cf_scaled(x);
}

double f_of_p(SecondOrderP p) {
    const double pv = p.value();
    const double q = 1.0 - pv;   // 1 - p
    const double q2 = 1.0 - 2.0 * pv;
    const double g1 = exp_integral_scaled(1.0);   // e   E1(1)
    const double gq = exp_integral_scaled(q);     // e^q E1(q)
    const double gq2 = exp_integral_scaled(q2);
    const double p2 = pv * pv;
    const double t1 = (1.0 - q2 * gq2 - gq * gq) / (p2 * q * q);
    const double t2 = 2.0 * (gq * g1 - 1.0 + q * gq) / (p2 * q);
    const double t3 = (1.0 - g1 - g1 * g1) / p2;
    return t1 + t2 + t3;
}

double c_bkp(std::size_t b, std::size_t k, SecondOrderP p) {
    if (b < 1 || b > k) {
        throw std::out_of_range("c_bkp requires 1 <= b <= k");
    }
    const double pv = p.value();
    double harmonic = 0.0;
    for (std::size_t j = k; j > b; --j) harmonic += 1.0 / static_cast<double>(j);
    const double ratio = static_cast<double>(k + 1) / static_cast<double>(b);
    return (std::pow(ratio, pv) / (1.0 - pv) - 1.0) / pv / (1.0 + harmonic);
}

double cbar_kp(SecondOrderP p) {
    const double pv = p.value();
    const double q = 1.0 - pv;
    // e^{1-p} E1(1-p) / (p(1-p)) - e E1(1) / p, written with scaled E1.
    return exp_integral_scaled(q) / (pv * q) - exp_integral_scaled(1.0) / pv;
}

double cbar_kp_finite(std::size_t k, SecondOrderP p) {
    if (k < 1) throw std::out_of_range("cbar_kp_finite requires k >= 1");
    const double pv = p.value();
    double denom = 1.0;  // 1 + sum_{j=b+1}^k 1/j, built from b = k downwards
    double total = 0.0;
    for (std::size_t b = k; b >= 1; --b) {
        const double ratio = static_cast<double>(k + 1) / static_cast<double>(b);
        total += (std::pow(ratio, pv) / (1.0 - pv) - 1.0) / pv / denom;
        denom += 1.0 / static_cast<double>(b);
    }
    return total / static_cast<double>(k);
}

double s_function_ratio(double k_over_j) {
    if (!(k_over_j >= 1.0)) {
        throw std::domain_error("s_function_ratio requires k/j >= 1");
    }
    const double x = 1.0 + std::log(k_over_j);
    // (e k / j) E1(x) = e^{1 + log(k/j)} E1(x) = e^x E1(x) since x = 1 + log(k/j).
    return std::log(x) + exp_integral_scaled(x);
}

double s_function(std::size_t j, std::size_t k) {
    if (j < 1 || j > k) {
        throw std::out_of_range("s_function requires 1 <= j <= k");
    }
    return s_function_ratio(static_cast<double>(k) / static_cast<double>(j));
}

namespace {

// The three appendix integrals are evaluated in transformed variables that
// remove the logarithmic endpoint singularities:
//   u = e^{1-t}, z = e^{1-s}  (t, s in [1, inf)),  v = t + w (w in [0, W]).
// The innermost factor int_{log(e/u)}^inf log(v) e^{-v} dv becomes
// e^{-t} m(t) with m(t) = int_0^W log(t + w) e^{-w} dw, and
//   I1 = int_1^inf (1/s) int_s^inf e^{-t} m(t) dt ds
//   I2 = int_1^inf (e^{-s}/s) int_1^s m(t) dt ds
//   I3 = (1/e) int_1^inf e^{-t} m(t)^2 dt.
// W and the upper truncation T are chosen so the dropped e^{-v} tails are
// below tol/10.

struct IntegralBudget {
    double w_cut = 0.0;
    double t_cut = 0.0;
};

IntegralBudget budget_for(double tol) {
    IntegralBudget b;
    // e^{-W} (log(W) + 2) < tol/10 and likewise for the outer truncation.
    double w = 30.0;
    while (std::exp(-w) * (std::log(w + 50.0) + 2.0) > tol * 0.1) w += 5.0;
    b.w_cut = w;
    b.t_cut = w + 10.0;
    return b;
}

std::vector<double> geometric_breaks(double lo, double hi) {
    std::vector<double> pts{lo};
    double x = lo + 1.0;
    while (x < hi) {
        pts.push_back(x);
        x *= 2.0;
    }
    pts.push_back(hi);
    return pts;
}

class AppendixIntegrals {
  public:
    AppendixIntegrals(double tol, IntegralBudget budget)
        : tol_(tol), budget_(budget) {}

    double inner_m(double t) const {
        auto f = [t](double w) { return std::log(t + w) * std::exp(-w); };
        auto r = integrate_segments(f, geometric_breaks(0.0, budget_.w_cut),
                                    tol_ * 1e-3);
        ok_ = ok_ && r.converged;
        return r.value;
    }

    double i1() const {
        auto outer = [this](double s) {
            auto in = [this](double t) { return std::exp(-t) * inner_m(t); };
            auto mid = integrate_segments(in, geometric_breaks(s, budget_.t_cut),
                                          tol_ * 1e-2);
            ok_ = ok_ && mid.converged;
            return mid.value / s;
        };
        auto r = integrate_segments(outer, geometric_breaks(1.0, budget_.t_cut),
                                    tol_ * 0.1);
        ok_ = ok_ && r.converged;
        return r.value;
    }

    double i2() const {
        auto outer = [this](double s) {
            auto mid = integrate_segments([this](double t) { return inner_m(t); },
                                          geometric_breaks(1.0, s), tol_ * 1e-2);
            ok_ = ok_ && mid.converged;
            return std::exp(-s) / s * mid.value;
        };
        auto r = integrate_segments(outer, geometric_breaks(1.0, budget_.t_cut),
                                    tol_ * 0.1);
        ok_ = ok_ && r.converged;
        return r.value;
    }

    double i3() const {
        auto f = [this](double t) {
            const double m = inner_m(t);
            return std::exp(-t) * m * m;
        };
        auto r = integrate_segments(f, geometric_breaks(1.0, budget_.t_cut),
                                    tol_ * 0.1);
        ok_ = ok_ && r.converged;
        return r.value / kE;
    }

    bool ok() const { return ok_; }

  private:
    double tol_;
    IntegralBudget budget_;
    mutable bool ok_ = true;
};

}  // namespace

UniversalConstants compute_universal_constants(double tol) {
    if (!(tol > 0.0) || tol > 1e-4) {
        throw std::domain_error("compute_universal_constants: tol must be in (0, 1e-4]");
    }
    AppendixIntegrals integrals(tol, budget_for(tol));
    UniversalConstants out;
    out.I1 = integrals.i1();
    out.I2 = integrals.i2();
    out.I3 = integrals.i3();
    if (!integrals.ok()) {
        throw NonConvergence("compute_universal_constants: quadrature did not reach tolerance");
    }
    out.C = 1.0 + exp_integral_scaled(1.0) + kE * kE * out.I3 -
            2.0 * kE * (out.I1 + out.I2);
    return out;
}

const UniversalConstants& universal_constants() {
    static const UniversalConstants cached = compute_universal_constants(1e-9);
    return cached;
}

double conversion_factor(SecondOrderP p) {
    const double pv = p.value();
    const double q = 1.0 - pv;
    const double base = universal_constants().C / (q * q * f_of_p(p));
    return std::pow(base, -1.0 / (1.0 - 2.0 * pv));
}

}  // namespace lthill
