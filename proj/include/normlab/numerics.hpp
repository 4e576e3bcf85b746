#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace normlab {

// 97.5% standard-normal quantile used for all 95% intervals.
inline constexpr double kZ95 = 1.959963984540054;

// Standard normal CDF via the complementary error function.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

inline double normal_pdf(double x) {
    return 0.39894228040143267794 * std::exp(-0.5 * x * x);
}

// Inverse standard normal CDF, u in (0,1). Rational initial guess refined
// with one Halley step against erfc; accurate to full double precision.
double inv_normal_cdf(double u);

namespace detail {

template <class F>
double simpson_halves(F& f, double a, double fa, double m, double fm, double b, double fb,
                      double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_halves(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           simpson_halves(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance.
template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_halves(f, a, fa, m, fm, b, fb, whole, tol, max_depth);
}

namespace rng {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stateless keyed counter value: pure function of (seed, index, cell).
inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t index, std::uint64_t cell) {
    std::uint64_t h = mix64(seed ^ 0xD1B54A32D192ED03ull);
    h = mix64(h ^ index);
    return mix64(h ^ cell);
}

// Uniform in the open interval (0,1): 53 mantissa bits plus a half-ulp
// offset so 0 and 1 are unreachable.
inline double u64_to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace rng
}  // namespace normlab
