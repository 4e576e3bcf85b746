// Timing comparison of the OpenMP kernels against their serial reference
// paths. The two must also agree bit for bit; any mismatch is reported and
// fails the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "normlab/montecarlo.hpp"
#include "normlab/pqnorm.hpp"
#include "normlab/profiles.hpp"
#include "normlab/sampling.hpp"

using namespace normlab;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

template <class Fn>
double timed(Fn&& fn) {
    const auto t0 = clock_type::now();
    fn();
    return ms_since(t0);
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bitwise-equal" : "MISMATCH");
    if (!identical) ++failures;
}

void bench_entry_max() {
    const auto profile = make_iid(64, 64, 1.0);
    EstimateResult rs, rp;
    McOpts ser, par;
    ser.parallel = false;
    par.parallel = true;
    const double ts = timed([&] { rs = estimate_entry_max(profile, 20000, 0, ser); });
    const double tp = timed([&] { rp = estimate_entry_max(profile, 20000, 0, par); });
    report("entry-max MC 64x64 n=20k", ts, tp, rs.mean == rp.mean && rs.std_err == rp.std_err);
}

void bench_opnorm() {
    const auto profile = make_iid(32, 32, 1.0);
    const NormPair pair(1.5, 3.0);
    EstimateResult rs, rp;
    McOpts ser, par;
    ser.parallel = false;
    ser.solver.restarts = 8;
    par.parallel = true;
    par.solver.restarts = 8;
    const double ts = timed([&] { rs = estimate_opnorm(profile, pair, 200, 0, ser); });
    const double tp = timed([&] { rp = estimate_opnorm(profile, pair, 200, 0, par); });
    report("opnorm MC 32x32 n=200", ts, tp,
           rs.mean == rp.mean && rs.q_moment_root == rp.q_moment_root);
}

void bench_tail() {
    std::vector<double> weights(64);
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    const std::vector<double> grid{0.5, 1.0, 1.5, 2.0};
    TailResult rs, rp;
    const double ts = timed([&] { rs = empirical_tail(weights, 2.0, 200000, 0, grid, false); });
    const double tp = timed([&] { rp = empirical_tail(weights, 2.0, 200000, 0, grid, true); });
    report("tail MC len-64 n=200k x2", ts, tp, rs.center == rp.center && rs.freq == rp.freq);
}

void bench_grid_oracle() {
    std::vector<double> entries(8 * 3);
    for (std::size_t c = 0; c < entries.size(); ++c)
        entries[c] = standard_normal_at(SampleKey{2024, 0}, c);
    const Matrix M(8, 3, entries);
    const NormPair pair(1.5, 4.0);
    NormResult rs, rp;
    const double ts = timed([&] { rs = grid_oracle(M, pair, 500, false); });
    const double tp = timed([&] { rp = grid_oracle(M, pair, 500, true); });
    report("grid oracle 8x3 res=500", ts, tp,
           rs.value == rp.value && rs.maximizer == rp.maximizer);
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both columns run serial code\n");
#endif
    std::printf("%-28s %13s %13s %9s   %s\n", "kernel", "serial", "parallel", "speedup",
                "agreement");
    bench_entry_max();
    bench_opnorm();
    bench_tail();
    bench_grid_oracle();
    return failures == 0 ? 0 : 1;
}
