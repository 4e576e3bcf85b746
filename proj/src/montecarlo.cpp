#include "normlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normlab/numerics.hpp"
#include "normlab/sampling.hpp"

namespace normlab {

namespace {

// Fills out[k] = fn(k) for k in 0..N-1. The parallel path writes the same
// slots as the serial one, so results are bit-identical for any thread
// count; all reductions happen afterwards in index order.
template <class Fn>
std::vector<double> fill_indexed(long N, bool parallel, Fn&& fn) {
    std::vector<double> out(static_cast<std::size_t>(N));
#if defined(_OPENMP)
    if (parallel) {
        #pragma omp parallel for schedule(dynamic, 4)
        for (long k = 0; k < N; ++k) out[static_cast<std::size_t>(k)] = fn(k);
        return out;
    }
#else
    (void)parallel;
#endif
    for (long k = 0; k < N; ++k) out[static_cast<std::size_t>(k)] = fn(k);
    return out;
}

struct MeanVar {
    double mean = 0.0;
    double std_err = 0.0;
};

MeanVar mean_and_se(const std::vector<double>& v) {
    MeanVar r;
    const double n = static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += x;
    r.mean = s / n;
    if (v.size() < 2) return r;
    double ss = 0.0;
    for (double x : v) {
        const double d = x - r.mean;
        ss += d * d;
    }
    r.std_err = std::sqrt(ss / (n - 1.0) / n);
    return r;
}

EstimateResult summarize(const std::vector<double>& values, std::uint64_t seed,
                         std::optional<double> q_for_moment,
                         std::vector<double>* samples_out) {
    EstimateResult est;
    est.n_samples = static_cast<long>(values.size());
    est.seed = seed;
    const MeanVar mv = mean_and_se(values);
    est.mean = mv.mean;
    est.std_err = mv.std_err;
    est.ci_lo = mv.mean - kZ95 * mv.std_err;
    est.ci_hi = mv.mean + kZ95 * mv.std_err;

    if (q_for_moment) {
        const double q = *q_for_moment;
        double vmax = 0.0;
        for (double x : values) vmax = std::max(vmax, x);
        if (vmax == 0.0) {
            est.q_moment_root = 0.0;
            est.q_moment_se = 0.0;
        } else {
            // Work on (v/vmax)^q in [0,1] so q up to 64 cannot overflow;
            // the root and its delta-method error rescale by vmax.
            std::vector<double> w(values.size());
            for (std::size_t k = 0; k < values.size(); ++k)
                w[k] = std::pow(values[k] / vmax, q);
            const MeanVar wm = mean_and_se(w);
            const double root = vmax * std::pow(wm.mean, 1.0 / q);
            est.q_moment_root = root;
            est.q_moment_se = wm.mean > 0.0 ? root * wm.std_err / (q * wm.mean) : 0.0;
        }
    }
    if (samples_out) *samples_out = values;
    return est;
}

}  // namespace

EstimateResult estimate_opnorm(const VarianceProfile& profile, const NormPair& pair, long N,
                               std::uint64_t seed, const McOpts& opts) {
    if (N < 2) throw std::invalid_argument("estimate_opnorm: N must be >= 2");
    const auto values = fill_indexed(N, opts.parallel, [&](long k) {
        const Matrix g = sample_matrix(profile, SampleKey{seed, static_cast<std::uint64_t>(k)});
        return op_norm(g, pair, opts.solver).value;
    });
    std::optional<double> q;
    if (opts.want_q_moment && pair.q_finite()) q = pair.q();
    return summarize(values, seed, q, opts.samples_out);
}

EstimateResult estimate_entry_max(const VarianceProfile& profile, long N, std::uint64_t seed,
                                  const McOpts& opts) {
    if (N < 2) throw std::invalid_argument("estimate_entry_max: N must be >= 2");
    const std::size_t m = profile.rows(), n = profile.cols();
    const auto values = fill_indexed(N, opts.parallel, [&](long k) {
        const SampleKey key{seed, static_cast<std::uint64_t>(k)};
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double a = profile(i, j);
                if (a == 0.0) continue;
                best = std::max(best,
                                std::abs(a * standard_normal_at(key, static_cast<std::uint64_t>(i) * n + j)));
            }
        }
        return best;
    });
    return summarize(values, seed, std::nullopt, opts.samples_out);
}

EstimateResult estimate_rowmax_qmoment(const VarianceProfile& profile, const NormPair& pair,
                                       long N, std::uint64_t seed, const McOpts& opts) {
    if (N < 2) throw std::invalid_argument("estimate_rowmax_qmoment: N must be >= 2");
    if (!pair.p_finite())
        throw std::invalid_argument("estimate_rowmax_qmoment: requires p finite (p_star > 1)");
    const double p = pair.p();
    const auto values = fill_indexed(N, opts.parallel, [&](long k) {
        const Matrix g = sample_matrix(profile, SampleKey{seed, static_cast<std::uint64_t>(k)});
        double best = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i) best = std::max(best, lr_norm(g.row(i), p));
        return best;
    });
    return summarize(values, seed, pair.q_finite() ? std::optional<double>(pair.q()) : std::nullopt,
                     opts.samples_out);
}

double wilson_half_width(double freq, long n) {
    const double z = kZ95;
    const double nn = static_cast<double>(n);
    const double denom = 1.0 + z * z / nn;
    return z * std::sqrt(freq * (1.0 - freq) / nn + z * z / (4.0 * nn * nn)) / denom;
}

TailResult empirical_tail(std::span<const double> a, double p, long N, std::uint64_t seed,
                          std::span<const double> t_grid, bool parallel) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("empirical_tail: p must be finite and >= 1");
    if (N < 2) throw std::invalid_argument("empirical_tail: N must be >= 2");
    for (std::size_t k = 0; k + 1 < t_grid.size(); ++k)
        if (!(t_grid[k] > 0.0 && t_grid[k] < t_grid[k + 1]))
            throw std::invalid_argument("empirical_tail: t grid must be positive increasing");
    if (!t_grid.empty() && !(t_grid.back() > 0.0))
        throw std::invalid_argument("empirical_tail: t grid must be positive");

    TailResult out;
    out.t_grid.assign(t_grid.begin(), t_grid.end());
    out.n_samples = N;

    bool all_zero = true;
    for (double v : a)
        if (v != 0.0) all_zero = false;
    if (all_zero) {
        out.degenerate = true;
        out.freq.assign(t_grid.size(), 0.0);
        out.wilson_half.assign(t_grid.size(), 0.0);
        return out;
    }

    std::vector<double> weights(a.begin(), a.end());
    auto norm_sample = [&](std::uint64_t index) {
        const auto x = sample_weighted_vector(weights, SampleKey{seed, index});
        return lr_norm(x, p);
    };

    // Pass one: centering estimate. Pass two: independent exceedance counts.
    const auto pass1 = fill_indexed(N, parallel, [&](long k) {
        return norm_sample(static_cast<std::uint64_t>(k));
    });
    out.center = mean_and_se(pass1).mean;

    const auto pass2 = fill_indexed(N, parallel, [&](long k) {
        return norm_sample(static_cast<std::uint64_t>(N + k));
    });

    out.freq.resize(t_grid.size());
    out.wilson_half.resize(t_grid.size());
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        long count = 0;
        for (double v : pass2)
            if (std::abs(v - out.center) > t_grid[ti]) ++count;
        const double f = static_cast<double>(count) / static_cast<double>(N);
        out.freq[ti] = f;
        out.wilson_half[ti] = wilson_half_width(f, N);
    }
    return out;
}

}  // namespace normlab
