#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "normlab/pqnorm.hpp"
#include "normlab/profiles.hpp"

namespace normlab {

// Monte Carlo estimate with a 95% normal-approximation interval for the
// mean; the q-th-moment root carries a delta-method standard error.
struct EstimateResult {
    double mean = 0.0;
    double std_err = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::optional<double> q_moment_root;
    std::optional<double> q_moment_se;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

struct McOpts {
    bool parallel = true;       // OpenMP over sample indices; serial twin kept for testing
    PowerOpts solver{};         // passed through to op_norm
    bool want_q_moment = true;  // ignored when q = inf
    std::vector<double>* samples_out = nullptr;  // per-sample values, index order
};

// Mean and q-moment root of ||G||_{p* -> q} over N realizations keyed
// (seed, 0..N-1).
EstimateResult estimate_opnorm(const VarianceProfile& profile, const NormPair& pair, long N,
                               std::uint64_t seed, const McOpts& opts = {});

// Mean of max_ij |a_ij g_ij|; cross-validates the quadrature oracle.
EstimateResult estimate_entry_max(const VarianceProfile& profile, long N, std::uint64_t seed,
                                  const McOpts& opts = {});

// q-moment root of max_i ||row_i(G)||_p. Requires p finite (p* > 1).
EstimateResult estimate_rowmax_qmoment(const VarianceProfile& profile, const NormPair& pair,
                                       long N, std::uint64_t seed, const McOpts& opts = {});

struct TailResult {
    std::vector<double> t_grid;
    std::vector<double> freq;         // exceedance frequency per grid point
    std::vector<double> wilson_half;  // 95% Wilson half-widths
    double center = 0.0;              // first-pass estimate of E||X||_p
    long n_samples = 0;
    bool degenerate = false;          // zero weights: frequencies all 0, check skipped
};

// Two-pass tail estimator: pass one (indices 0..N-1) estimates the centering
// E||X||_p, pass two (indices N..2N-1) counts exceedances per t.
TailResult empirical_tail(std::span<const double> a, double p, long N, std::uint64_t seed,
                          std::span<const double> t_grid, bool parallel = true);

// Wilson 95% half-width for a proportion estimated from n trials.
double wilson_half_width(double freq, long n);

}  // namespace normlab
