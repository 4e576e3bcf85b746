#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normlab/matrix.hpp"
#include "normlab/profiles.hpp"

namespace normlab {

enum class NormMethod { exact_p1, exact_qinf, exact_22, power_iteration, grid_oracle };

std::string to_string(NormMethod m);

// Witnessed value of ||M : l_{p*} -> l_q||. The value is always attained by
// the stored maximizer (a certified lower bound); for the exact routes it is
// the true norm.
struct NormResult {
    double value = 0.0;
    std::vector<double> maximizer;  // unit vector in l_{p*}
    NormMethod method = NormMethod::power_iteration;
    bool converged = false;
    int iterations = 0;
};

struct PowerOpts {
    int restarts = 0;       // 0 = auto: max(16, ceil(log2(m*n))*4)
    double tol = 1e-10;     // relative objective gain
    int max_iter = 500;
    std::uint64_t start_seed = 0x706f776572ull;  // keys the random sphere starts
    std::vector<double>* trace = nullptr;        // per-iteration objective of the best run
};

// Dispatcher: p* = 1 -> exact_p1, q = inf -> exact_qinf, (2,2) -> exact_22,
// otherwise nonlinear power iteration. Rejects NaN entries.
NormResult op_norm(const Matrix& M, const NormPair& pair, const PowerOpts& opts = {});

// p* = 1: extreme points of the l_1 ball are +/-e_j, so the norm is the best
// column's l_q norm.
NormResult exact_p1(const Matrix& M, double q);

// q = inf: the norm is the best row's l_p norm (p conjugate to p*), attained
// at that row's l_{p*} norming vector.
NormResult exact_qinf(const Matrix& M, double p_star);

// (p*,q) = (2,2): largest singular value by power iteration on y -> M^T(My),
// relative tolerance 1e-12, iteration cap 1e4.
NormResult exact_22(const Matrix& M);

// Alternating dual-norming ascent for 1 < p* <= 2 <= q < inf:
//   z = My, u_i = sign(z_i)|z_i|^{q-1}, w = M^T u,
//   y' = sign(w_j)|w_j|^{p-1} normalized in l_{p*}.
// The objective ||My||_q is nondecreasing along iterates. Runs from the best
// e_j, the spectral maximizer, and seeded random sphere points; the best of
// all runs wins, ties broken by lowest start index. Exponentiations factor
// out the max magnitude first, so extreme exponents stay in range.
NormResult power_iteration(const Matrix& M, const NormPair& pair, const PowerOpts& opts = {});

// Brute-force scan of the l_{p*} sphere for n <= 3 columns: sign patterns
// times an angular grid (n=2) or a two-angle lattice (n=3). Test oracle.
NormResult grid_oracle(const Matrix& M, const NormPair& pair, int resolution,
                       bool parallel = true);

}  // namespace normlab
