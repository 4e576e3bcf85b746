#pragma once

#include <span>
#include <vector>

namespace normlab {

// L_r norm of a standard Gaussian: (E|g|^r)^{1/r} = sqrt(2)*(Gamma((r+1)/2)/Gamma(1/2))^{1/r}.
double gamma_r(double r);

// E max_i |a_i g_i| by the tail-integral identity
//   int_0^inf [1 - prod_i (2*Phi(t/|a_i|) - 1)] dt,
// adaptive quadrature to 1e-8 absolute. Zero weights drop out; the product
// moves to log space beyond 32 active weights.
double expected_max_abs(std::span<const double> a);

// (|a_i|) sorted descending.
std::vector<double> decreasing_rearrangement(std::span<const double> a);

// max over i (1-based) of sqrt(ln(i+3)) * a_i^*, with a^* the decreasing
// rearrangement. Two-sided comparable to expected_max_abs.
double maxgaus_comparator(std::span<const double> a);

// Orlicz function M_g(s) = sqrt(2/pi) * int_0^s exp(-1/(2t^2)) dt.
double orlicz_Mg(double s);

struct OrliczEval {
    double value = 0.0;      // Luxemburg norm
    double residual = 0.0;   // |sum_i M_g(|a_i|/value) - 1|, 0 for the zero vector
    int bisection_steps = 0;
};

// Luxemburg norm inf{rho > 0 : sum_i M_g(|a_i|/rho) <= 1} by bisection on
// [max|a_i|*1e-8, max|a_i|*1e8], residual tolerance 1e-10, 200 steps max.
OrliczEval orlicz_norm(std::span<const double> a);

// Right side of the Gaussian concentration tail bound,
// 2*exp(-t^2 / (2*max_j|a_j|^2)). p is carried for labeling only; the bound
// does not depend on it. Raw value, deliberately not clamped to [0,1].
double concentration_tail(std::span<const double> a, double p, double t);

// gamma_p * ||a||_p, the moment upper bound for E||(a_j g_j)||_p, p finite.
double expected_lp_upper(std::span<const double> a, double p);

}  // namespace normlab
