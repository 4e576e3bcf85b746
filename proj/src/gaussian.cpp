#include "normlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "normlab/matrix.hpp"
#include "normlab/numerics.hpp"

namespace normlab {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt2OverPi = 0.79788456080286535588;  // sqrt(2/pi) = E|g|
constexpr double kLnGammaHalf = 0.57236494292470008707;  // ln Gamma(1/2)

std::vector<double> active_abs_weights(std::span<const double> a) {
    std::vector<double> w;
    w.reserve(a.size());
    for (double v : a) {
        if (std::isnan(v)) throw std::invalid_argument("weight vector contains NaN");
        if (v != 0.0) w.push_back(std::abs(v));
    }
    return w;
}

// P(max_i |w_i g_i| <= t) = prod_i erf(t/(w_i*sqrt(2))); log space beyond 32
// active weights to dodge underflow of the product.
double max_cdf(const std::vector<double>& w, double t) {
    if (t <= 0.0) return 0.0;
    if (w.size() <= 32) {
        double prod = 1.0;
        for (double wi : w) prod *= std::erf(t / (wi * kSqrt2));
        return prod;
    }
    double logsum = 0.0;
    for (double wi : w) {
        const double e = std::erf(t / (wi * kSqrt2));
        if (e <= 0.0) return 0.0;
        logsum += std::log(e);
    }
    return std::exp(logsum);
}

// int_s^inf (1 - e^{-1/(2t^2)}) dt as a convergent alternating series,
// valid for s >= 8 (terms fall below 1e-12 well before k = 8).
double mg_tail_integral(double s) {
    double sum = 0.0;
    double kfact = 1.0;
    double pow2 = 1.0;
    double spow = 1.0 / s;  // s^{-(2k-1)} running value
    const double inv_s2 = 1.0 / (s * s);
    for (int k = 1; k <= 8; ++k) {
        kfact *= k;
        pow2 *= 2.0;
        const double term = spow / (kfact * pow2 * (2 * k - 1));
        sum += (k % 2 == 1) ? term : -term;
        spow *= inv_s2;
    }
    return sum;
}

}  // namespace

double gamma_r(double r) {
    if (!(r >= 1.0) || !std::isfinite(r))
        throw std::invalid_argument("gamma_r: r must be finite and >= 1");
    // (E|g|^r)^{1/r} = sqrt(2) * (Gamma((r+1)/2)/Gamma(1/2))^{1/r}
    return std::exp(0.5 * std::numbers::ln2_v<double> +
                    (std::lgamma(0.5 * (r + 1.0)) - kLnGammaHalf) / r);
}

double expected_max_abs(std::span<const double> a) {
    if (a.empty()) throw std::invalid_argument("expected_max_abs: empty weight vector");
    const std::vector<double> w = active_abs_weights(a);
    if (w.empty()) return 0.0;
    const double wmax = *std::max_element(w.begin(), w.end());
    const double t_max = wmax * std::sqrt(2.0 * std::log(4.0 * static_cast<double>(w.size())) + 60.0);
    auto integrand = [&](double t) { return 1.0 - max_cdf(w, t); };
    // Segment the domain around the transition scale so the adaptive rule
    // never judges the whole multi-scale integrand from three points.
    const double knots[] = {0.0, 0.5 * wmax, wmax, 2.0 * wmax, 4.0 * wmax, t_max};
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < std::size(knots); ++k) {
        if (knots[k + 1] <= knots[k]) continue;
        total += adaptive_simpson(integrand, knots[k], std::min(knots[k + 1], t_max), 2e-9);
    }
    return total;
}

std::vector<double> decreasing_rearrangement(std::span<const double> a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::abs(a[i]);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double maxgaus_comparator(std::span<const double> a) {
    if (a.empty()) throw std::invalid_argument("maxgaus_comparator: empty weight vector");
    const std::vector<double> sorted = decreasing_rearrangement(a);
    double best = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        // 1-based index, natural log, exactly as written
        best = std::max(best, std::sqrt(std::log(static_cast<double>(i + 1) + 3.0)) * sorted[i]);
    }
    return best;
}

double orlicz_Mg(double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("orlicz_Mg: s must be nonnegative");
    if (s == 0.0) return 0.0;
    auto integrand = [](double t) { return t > 0.0 ? std::exp(-0.5 / (t * t)) : 0.0; };
    // Direct quadrature up to the cutoff; past it the integrand is
    // 1 - O(t^-2) and the complement integrates as a fast series.
    const double cutoff = 32.0;
    if (s <= cutoff) return kSqrt2OverPi * adaptive_simpson(integrand, 0.0, s, 1e-10 / kSqrt2OverPi);
    const double head = adaptive_simpson(integrand, 0.0, cutoff, 1e-10 / kSqrt2OverPi);
    const double complement = mg_tail_integral(cutoff) - mg_tail_integral(s);
    return kSqrt2OverPi * (head + (s - cutoff) - complement);
}

OrliczEval orlicz_norm(std::span<const double> a) {
    OrliczEval eval;
    if (a.empty()) return eval;
    const std::vector<double> w = active_abs_weights(a);
    if (w.empty()) return eval;
    const double wmax = *std::max_element(w.begin(), w.end());

    auto level_sum = [&](double rho) {
        double s = 0.0;
        for (double wi : w) s += orlicz_Mg(wi / rho);
        return s;
    };

    double lo = wmax * 1e-8;  // sum > 1 here
    double hi = wmax * 1e8;   // sum < 1 here
    double mid = hi, residual = 0.0;
    int steps = 0;
    for (; steps < 200; ++steps) {
        mid = 0.5 * (lo + hi);
        const double s = level_sum(mid);
        residual = std::abs(s - 1.0);
        if (residual <= 1e-10) break;
        if (s > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    eval.value = mid;
    eval.residual = residual;
    eval.bisection_steps = steps;
    return eval;
}

double concentration_tail(std::span<const double> a, double /*p*/, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("concentration_tail: t must be positive");
    double amax = 0.0;
    for (double v : a) amax = std::max(amax, std::abs(v));
    if (amax == 0.0)
        throw std::invalid_argument("concentration_tail: zero weight vector has no deviation scale");
    return 2.0 * std::exp(-t * t / (2.0 * amax * amax));
}

double expected_lp_upper(std::span<const double> a, double p) {
    if (!std::isfinite(p))
        throw std::invalid_argument("expected_lp_upper: p must be finite (use expected_max_abs)");
    return gamma_r(p) * lr_norm(a, p);
}

}  // namespace normlab
