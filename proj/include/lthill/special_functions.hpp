#pragma once

#include <cstddef>

namespace lthill {

// Second-order tail parameter. Strictly negative; construction enforces it.
class SecondOrderP {
  public:
    explicit SecondOrderP(double p);
    double value() const noexcept { return p_; }

  private:
    double p_;
};

// Exponential integral E1(x) = int_x^inf e^{-v}/v dv for x > 0.
// Series expansion below 1, modified-Lentz continued fraction from 1 on;
// absolute error below 1e-12 on the domain used here.
double exp_integral(double x);

// e^x * E1(x); overflow-safe building block for the expressions below.
double exp_integral_scaled(double x);

// Universal variance function f(p) of the trajectory-variance expansion.
// Strictly positive for every p < 0.
double f_of_p(SecondOrderP p);

// Bias constant c_{b,k,p} = (1/p) * [((k+1)/b)^p/(1-p) - 1] / (1 + sum_{j=b+1}^k 1/j),
// with the harmonic sum computed exactly. Requires 1 <= b <= k.
double c_bkp(std::size_t b, std::size_t k, SecondOrderP p);

// Limit of the across-b average of c_{b,k,p} as k -> inf (closed form
// e^{1-p} E1(1-p) / (p(1-p)) - e E1(1) / p).
double cbar_kp(SecondOrderP p);

// Finite-k average (1/k) sum_b c_{b,k,p}; converges to cbar_kp.
double cbar_kp_finite(std::size_t k, SecondOrderP p);

// S(j,k) = log(1 + log(k/j)) + (e k / j) E1(1 + log(k/j)), the weight of the
// j-th exponential in the averaged-estimator representation. 1 <= j <= k.
double s_function(std::size_t j, std::size_t k);

// Real-argument variant of s_function in terms of the ratio k/j >= 1.
double s_function_ratio(double k_over_j);

struct UniversalConstants {
    double I1 = 0.0;
    double I2 = 0.0;
    double I3 = 0.0;
    double C = 0.0;  // 1 + e E1(1) + e^2 I3 - 2 e (I1 + I2)
};

// Rounded reference value of C, kept for cross-checks only; computations use
// the quadrature-derived value (they differ in the seventh decimal).
inline constexpr double kCReference = 0.502727;

// Evaluates the three defining integrals of C by nested adaptive quadrature
// and assembles the constant. tol must lie in (0, 1e-4]; throws
// NonConvergence if any quadrature fails to reach it.
UniversalConstants compute_universal_constants(double tol);

// Cached high-accuracy constants (computed once, tol = 1e-9).
const UniversalConstants& universal_constants();

// Multiplier mapping the empirical-variance optimum k* to the AMSE optimum
// k0* of the plain Hill estimator: (C / ((1-p)^2 f(p)))^{-1/(1-2p)}.
double conversion_factor(SecondOrderP p);

}  // namespace lthill
