#include "normlab/pqnorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normlab/numerics.hpp"
#include "normlab/sampling.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace normlab {

std::string to_string(NormMethod m) {
    switch (m) {
        case NormMethod::exact_p1: return "exact-p1";
        case NormMethod::exact_qinf: return "exact-qinf";
        case NormMethod::exact_22: return "exact-22";
        case NormMethod::power_iteration: return "power-iteration";
        case NormMethod::grid_oracle: return "grid-oracle";
    }
    return "unknown";
}

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// sign(w_j)*|w_j|^{e-1}, factored by the max magnitude so huge exponents
// stay in range; the caller renormalizes, so the dropped wmax^{e-1} scale
// is immaterial.
void dual_power_map(std::span<const double> w, double exponent_minus_one,
                    std::span<double> out) {
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, std::abs(v));
    if (wmax == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double t = std::abs(w[j]) / wmax;
        out[j] = t == 0.0 ? 0.0 : sign_of(w[j]) * std::pow(t, exponent_minus_one);
    }
}

void normalize_lp(std::span<double> y, double p_star) {
    const double norm = lr_norm(y, p_star);
    if (norm == 0.0) return;
    for (double& v : y) v /= norm;
}

std::vector<double> unit_vector(std::size_t n, std::size_t j, double s = 1.0) {
    std::vector<double> e(n, 0.0);
    e[j] = s;
    return e;
}

std::size_t best_column_index(const Matrix& M, double q) {
    std::size_t best_j = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < M.cols(); ++j) {
        const double v = lr_norm(M.column(j), q);
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    return best_j;
}

void require_finite(const Matrix& M) {
    if (!M.all_finite())
        throw std::invalid_argument("op_norm: matrix has NaN or non-finite entries");
}

}  // namespace

NormResult exact_p1(const Matrix& M, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("exact_p1: q must be >= 1");
    NormResult r;
    r.method = NormMethod::exact_p1;
    r.converged = true;
    const std::size_t j = best_column_index(M, q);
    r.value = lr_norm(M.column(j), q);
    r.maximizer = unit_vector(M.cols(), j);
    return r;
}

NormResult exact_qinf(const Matrix& M, double p_star) {
    if (!(p_star >= 1.0 && p_star <= 2.0))
        throw std::invalid_argument("exact_qinf: p_star must lie in [1,2]");
    const double p = p_star == 1.0 ? kInf : p_star / (p_star - 1.0);
    NormResult r;
    r.method = NormMethod::exact_qinf;
    r.converged = true;

    std::size_t best_i = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        const double v = lr_norm(M.row(i), p);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    r.value = best;

    const auto row = M.row(best_i);
    if (best == 0.0) {
        r.maximizer = unit_vector(M.cols(), 0);
        return r;
    }
    if (std::isinf(p)) {
        // p = inf: a single coordinate at the row's max-magnitude entry
        std::size_t jmax = 0;
        for (std::size_t j = 1; j < row.size(); ++j)
            if (std::abs(row[j]) > std::abs(row[jmax])) jmax = j;
        r.maximizer = unit_vector(M.cols(), jmax, sign_of(row[jmax]));
        return r;
    }
    std::vector<double> y(M.cols());
    dual_power_map(row, p - 1.0, y);
    normalize_lp(y, p_star);
    r.maximizer = std::move(y);
    return r;
}

namespace {

// A diagonal matrix has its spectral norm in closed form; the Gram
// iteration cannot resolve near-tied singular values past ~1e-6 relative,
// so the structural fast path keeps the diagonal identity exact.
bool diagonal_spectral(const Matrix& M, NormResult& r) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            if (i != j && M(i, j) != 0.0) return false;
    std::size_t best = 0;
    double val = 0.0;
    for (std::size_t k = 0; k < std::min(M.rows(), M.cols()); ++k) {
        if (std::abs(M(k, k)) > val) {
            val = std::abs(M(k, k));
            best = k;
        }
    }
    r.value = val;
    r.maximizer = unit_vector(M.cols(), best);
    r.converged = true;
    return true;
}

}  // namespace

NormResult exact_22(const Matrix& M) {
    NormResult r;
    r.method = NormMethod::exact_22;
    const std::size_t m = M.rows(), n = M.cols();

    if (M.is_zero()) {
        r.value = 0.0;
        r.maximizer = unit_vector(n, 0);
        r.converged = true;
        return r;
    }
    if (diagonal_spectral(M, r)) return r;

    // Deterministic pseudo-random start; restart from the best column if we
    // ever land in the kernel.
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j)
        y[j] = standard_normal_at(SampleKey{0x3232u, 0}, j);
    normalize_lp(y, 2.0);

    std::vector<double> z(m), w(n);
    double sigma_prev = -1.0;
    const int cap = 10000;
    int iter = 0;
    for (; iter < cap; ++iter) {
        M.multiply(y, z);
        const double sigma = lr_norm(z, 2.0);
        if (sigma == 0.0) {
            y = unit_vector(n, best_column_index(M, 2.0));
            sigma_prev = -1.0;
            continue;
        }
        if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= 1e-12 * sigma) {
            r.converged = true;
            sigma_prev = sigma;
            break;
        }
        sigma_prev = sigma;
        M.multiply_transpose(z, w);
        y = w;
        normalize_lp(y, 2.0);
    }
    r.iterations = iter;
    M.multiply(y, z);
    r.value = lr_norm(z, 2.0);
    r.maximizer = std::move(y);
    return r;
}

NormResult power_iteration(const Matrix& M, const NormPair& pair, const PowerOpts& opts) {
    if (!(pair.p_star() > 1.0)) throw std::invalid_argument("power_iteration: requires p_star > 1");
    if (!pair.q_finite()) throw std::invalid_argument("power_iteration: requires q < inf");
    const std::size_t m = M.rows(), n = M.cols();
    const double p_star = pair.p_star();
    const double p = pair.p();
    const double q = pair.q();

    NormResult best;
    best.method = NormMethod::power_iteration;
    if (M.is_zero()) {
        best.value = 0.0;
        best.maximizer = unit_vector(n, 0);
        best.converged = true;
        return best;
    }

    int restarts = opts.restarts;
    if (restarts <= 0)
        restarts = std::max<int>(
            16, static_cast<int>(std::ceil(std::log2(static_cast<double>(m * n)))) * 4);
    restarts = std::max(restarts, 2);

    // First nonzero column, the escape hatch for kernel starts.
    std::size_t j_nonzero = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (lr_norm(M.column(j), 1.0) > 0.0) {
            j_nonzero = j;
            break;
        }
    }

    std::vector<double> y(n), z(m), u(m), w(n), ynext(n);
    std::vector<double> trace, best_trace;
    bool have_best = false;
    int best_start = -1;

    for (int start = 0; start < restarts; ++start) {
        if (start == 0) {
            y = unit_vector(n, best_column_index(M, q));
        } else if (start == 1) {
            y = exact_22(M).maximizer;
            normalize_lp(y, p_star);
        } else {
            for (std::size_t j = 0; j < n; ++j)
                y[j] = standard_normal_at(SampleKey{opts.start_seed, static_cast<std::uint64_t>(start)}, j);
            normalize_lp(y, p_star);
        }

        trace.clear();
        M.multiply(y, z);
        double obj = lr_norm(z, q);
        if (obj == 0.0) {
            y = unit_vector(n, j_nonzero);
            M.multiply(y, z);
            obj = lr_norm(z, q);
        }
        trace.push_back(obj);

        bool converged = false;
        int iter = 0;
        for (; iter < opts.max_iter; ++iter) {
            dual_power_map(z, q - 1.0, u);
            M.multiply_transpose(u, w);
            double wsum = 0.0;
            for (double v : w) wsum += std::abs(v);
            if (wsum == 0.0) {
                converged = true;
                break;
            }
            dual_power_map(w, p - 1.0, ynext);
            normalize_lp(ynext, p_star);
            M.multiply(ynext, z);
            const double next_obj = lr_norm(z, q);
            // ascent invariant; a drop beyond slack is numerical stall
            if (next_obj < obj * (1.0 - 1e-12) - 1e-300) break;
            y = ynext;
            trace.push_back(next_obj);
            if (next_obj - obj <= opts.tol * next_obj) {
                obj = std::max(obj, next_obj);
                converged = true;
                break;
            }
            obj = next_obj;
        }

        if (!have_best || obj > best.value) {
            have_best = true;
            best.value = obj;
            best.maximizer = y;
            best.converged = converged;
            best.iterations = iter;
            best_start = start;
            if (opts.trace) best_trace = trace;
        }
    }
    (void)best_start;
    if (opts.trace) *opts.trace = std::move(best_trace);
    return best;
}

NormResult grid_oracle(const Matrix& M, const NormPair& pair, int resolution, bool parallel) {
    const std::size_t n = M.cols();
    if (n > 3) throw std::invalid_argument("grid_oracle: only defined for n <= 3 columns");
    if (resolution < 100) throw std::invalid_argument("grid_oracle: resolution must be >= 100");
    const double p_star = pair.p_star();
    const double q = pair.q();

    NormResult r;
    r.method = NormMethod::grid_oracle;
    r.converged = true;
    r.iterations = resolution;

    if (n == 1) {
        r.value = lr_norm(M.column(0), q);
        r.maximizer = {1.0};
        return r;
    }

    const double half_pi = 1.57079632679489661923;
    // Candidate points are indexed by (lattice cell, sign class); global sign
    // flips leave ||My||_q unchanged, so only sign classes with positive
    // leading coordinate are scanned.
    const long sign_classes = n == 2 ? 2 : 4;
    const long lattice = n == 2 ? (resolution + 1) : static_cast<long>(resolution + 1) * (resolution + 1);
    const long total = lattice * sign_classes;

    auto candidate = [&](long flat, std::span<double> y) {
        const long cell = flat / sign_classes;
        const long sc = flat % sign_classes;
        if (n == 2) {
            const double theta = half_pi * static_cast<double>(cell) / resolution;
            y[0] = std::cos(theta);
            y[1] = std::sin(theta) * (sc == 0 ? 1.0 : -1.0);
        } else {
            const long k1 = cell / (resolution + 1);
            const long k2 = cell % (resolution + 1);
            const double theta = half_pi * static_cast<double>(k1) / resolution;
            const double phi = half_pi * static_cast<double>(k2) / resolution;
            y[0] = std::cos(theta) * std::cos(phi);
            y[1] = std::cos(theta) * std::sin(phi) * ((sc & 1) ? -1.0 : 1.0);
            y[2] = std::sin(theta) * ((sc & 2) ? -1.0 : 1.0);
        }
        normalize_lp(y, p_star);
    };

    double best_val = -1.0;
    long best_flat = 0;

#if defined(_OPENMP)
    if (parallel) {
        #pragma omp parallel
        {
            double loc_val = -1.0;
            long loc_flat = 0;
            std::vector<double> y(n), z(M.rows());
            #pragma omp for nowait
            for (long flat = 0; flat < total; ++flat) {
                candidate(flat, y);
                M.multiply(y, z);
                const double v = lr_norm(z, q);
                if (v > loc_val || (v == loc_val && flat < loc_flat)) {
                    loc_val = v;
                    loc_flat = flat;
                }
            }
            #pragma omp critical
            {
                if (loc_val > best_val || (loc_val == best_val && loc_flat < best_flat)) {
                    best_val = loc_val;
                    best_flat = loc_flat;
                }
            }
        }
    } else
#endif
    {
        (void)parallel;
        std::vector<double> y(n), z(M.rows());
        for (long flat = 0; flat < total; ++flat) {
            candidate(flat, y);
            M.multiply(y, z);
            const double v = lr_norm(z, q);
            if (v > best_val) {
                best_val = v;
                best_flat = flat;
            }
        }
    }

    std::vector<double> y(n), z(M.rows());
    candidate(best_flat, y);
    M.multiply(y, z);
    r.value = lr_norm(z, q);
    r.maximizer = std::move(y);
    return r;
}

NormResult op_norm(const Matrix& M, const NormPair& pair, const PowerOpts& opts) {
    require_finite(M);
    if (pair.p_star() == 1.0) return exact_p1(M, pair.q());
    if (!pair.q_finite()) return exact_qinf(M, pair.p_star());
    if (pair.p_star() == 2.0 && pair.q() == 2.0) return exact_22(M);
    return power_iteration(M, pair, opts);
}

}  // namespace normlab
