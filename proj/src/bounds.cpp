#include "normlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "normlab/csv.hpp"
#include "normlab/gaussian.hpp"
#include "normlab/numerics.hpp"
#include "normlab/sampling.hpp"

namespace normlab {

double BoundBreakdown::term(const std::string& label) const {
    for (const auto& [l, v] : terms)
        if (l == label) return v;
    throw std::invalid_argument("BoundBreakdown: no term " + label);
}

double BoundBreakdown::constant(const std::string& symbol) const {
    for (const auto& [s, v] : constants)
        if (s == symbol) return v;
    throw std::invalid_argument("BoundBreakdown: no constant " + symbol);
}

double BoundBreakdown::recombine() const {
    if (name == "theorem-main")
        return term("prefactor") * (term("row_p") + term("entry_max")) + term("column_q");
    if (name == "bvh") return constant("C") * (term("mixed_norm") + term("log_entry"));
    // remaining bounds are plain sums of their terms
    double s = 0.0;
    for (const auto& [l, v] : terms) s += v;
    return s;
}

void write_breakdown_csv(std::ostream& out, const BoundBreakdown& b) {
    out << "bound_name,term_label,value\n";
    for (const auto& [label, value] : b.terms)
        out << b.name << ',' << label << ',' << format_double(value) << '\n';
    for (const auto& [symbol, value] : b.constants)
        out << b.name << ",const:" << symbol << ',' << format_double(value) << '\n';
    out << b.name << ",total," << format_double(b.total) << '\n';
}

double sigma_lemma31(const VarianceProfile& profile, double q) {
    if (!(q >= 2.0) || !std::isfinite(q))
        throw std::invalid_argument("sigma_lemma31: requires 2 <= q < inf");
    const double m = static_cast<double>(profile.rows());
    return gamma_r(q) * std::pow(m, -1.0 / q) * col_norm_max(profile, q);
}

namespace {

// Objective of the variational sigma form, phi(y) = gamma_q * m^{-1/q} *
// (sum_i h_i^q)^{1/q} with h_i = sqrt(sum_j a_ij^2 y_j^2). Even in every
// coordinate, so the ascent lives in the nonnegative orthant.
struct SigmaObjective {
    const VarianceProfile& profile;
    double q;

    double rownorms(std::span<const double> y, std::span<double> h) const {
        const std::size_t m = profile.rows(), n = profile.cols();
        for (std::size_t i = 0; i < m; ++i) {
            const auto row = profile.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double t = row[j] * y[j];
                s += t * t;
            }
            h[i] = std::sqrt(s);
        }
        return lr_norm(h, q);
    }

    double value(std::span<const double> y, std::span<double> h) const {
        const double m = static_cast<double>(profile.rows());
        return gamma_r(q) * std::pow(m, -1.0 / q) * rownorms(y, h);
    }

    // gradient of (sum_i h_i^q)^{1/q} w.r.t. y, up to a positive scalar:
    // g_j = y_j * sum_i h_i^{q-2} a_ij^2 (h factored by its max for range).
    void gradient(std::span<const double> y, std::span<const double> h,
                  std::span<double> g) const {
        const std::size_t m = profile.rows(), n = profile.cols();
        double hmax = 0.0;
        for (double v : h) hmax = std::max(hmax, v);
        std::fill(g.begin(), g.end(), 0.0);
        if (hmax == 0.0) return;
        for (std::size_t i = 0; i < m; ++i) {
            const double hi = h[i] / hmax;
            if (hi == 0.0) continue;
            const double hw = std::pow(hi, q - 2.0);
            const auto row = profile.row(i);
            for (std::size_t j = 0; j < n; ++j) g[j] += hw * row[j] * row[j] * y[j];
        }
    }
};

void project_sphere(std::span<double> y, double p_star) {
    for (double& v : y) v = std::abs(v);
    const double norm = lr_norm(y, p_star);
    if (norm == 0.0) {
        y[0] = 1.0;
        return;
    }
    for (double& v : y) v /= norm;
}

}  // namespace

double sigma_variational(const VarianceProfile& profile, double q, double p_star,
                         const VariationalOpts& opts) {
    if (!(q >= 2.0) || !std::isfinite(q))
        throw std::invalid_argument("sigma_variational: requires 2 <= q < inf");
    if (!(p_star >= 1.0 && p_star <= 2.0))
        throw std::invalid_argument("sigma_variational: requires 1 <= p_star <= 2");
    const std::size_t n = profile.cols();
    const SigmaObjective obj{profile, q};
    std::vector<double> h(profile.rows());

    // e_j starts evaluate the closed-form column expression directly.
    double best = 0.0;
    std::vector<double> y(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(y.begin(), y.end(), 0.0);
        y[j] = 1.0;
        best = std::max(best, obj.value(y, h));
    }

    std::vector<double> g(n), trial(n);
    const int total_starts = opts.restarts + 1;
    for (int start = 0; start < total_starts; ++start) {
        if (start == 0) {
            std::fill(y.begin(), y.end(), std::pow(static_cast<double>(n), -1.0 / p_star));
        } else {
            for (std::size_t j = 0; j < n; ++j)
                y[j] = standard_normal_at(SampleKey{opts.start_seed, static_cast<std::uint64_t>(start)}, j);
            project_sphere(y, p_star);
        }

        double val = obj.value(y, h);
        for (int iter = 0; iter < opts.max_iter; ++iter) {
            obj.gradient(y, h, g);
            double gmax = 0.0;
            for (double v : g) gmax = std::max(gmax, std::abs(v));
            if (gmax == 0.0) break;
            double step = 1.0;
            bool improved = false;
            // backtracking ascent along the projected gradient
            for (int bt = 0; bt < 30; ++bt) {
                for (std::size_t j = 0; j < n; ++j) trial[j] = y[j] + step * g[j] / gmax;
                project_sphere(trial, p_star);
                const double tval = obj.value(trial, h);
                if (tval > val) {
                    const double gain = tval - val;
                    y = trial;
                    val = tval;
                    improved = gain > opts.tol * std::max(tval, 1e-300);
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        best = std::max(best, val);
    }
    return best;
}

double thm21_B(double m, const NormPair& pair, double C, double emax_moment) {
    if (!(m >= 2.0)) throw std::invalid_argument("thm21_B: requires m >= 2");
    if (!(pair.p_star() > 1.0)) throw std::invalid_argument("thm21_B: p_star = 1 leaves lambda undefined");
    if (!(C > 0.0)) throw std::invalid_argument("thm21_B: C must be positive");
    if (!(emax_moment >= 0.0)) throw std::invalid_argument("thm21_B: emax_moment must be nonnegative");
    const double p_star = pair.p_star();
    const double lambda4 = std::pow(8.0 / (p_star * (p_star - 1.0)), 2.0);
    const double t2 = std::sqrt(pair.p());
    return C * lambda4 * t2 * std::sqrt(std::log(m) / m) * std::sqrt(emax_moment);
}

double thm21_B(const VarianceProfile& profile, const NormPair& pair, double C,
               double emax_moment) {
    return thm21_B(static_cast<double>(profile.rows()), pair, C, emax_moment);
}

BoundBreakdown lemma32_rhs(const VarianceProfile& profile, const NormPair& pair, double C) {
    if (!(pair.p_star() > 1.0))
        throw std::invalid_argument("lemma32_rhs: p_star = 1 makes gamma_p undefined");
    if (!pair.q_finite()) throw std::invalid_argument("lemma32_rhs: requires q < inf");
    if (!(C > 0.0)) throw std::invalid_argument("lemma32_rhs: C must be positive");
    const double p = pair.p();
    const double q = pair.q();
    BoundBreakdown b;
    b.name = "lemma32";
    b.constants = {{"C", C}, {"gamma_p", gamma_r(p)}, {"gamma_q", gamma_r(q)}};
    b.terms.push_back({"row_moment", 2.0 * gamma_r(p) * row_norm_max(profile, p)});
    b.terms.push_back({"entry_max", C * gamma_r(q) * expected_max_abs(profile.entries())});
    b.total = b.recombine();
    return b;
}

BoundBreakdown theorem_main_rhs(const VarianceProfile& profile, const NormPair& pair, double C) {
    if (profile.rows() < 2)
        throw std::invalid_argument("theorem_main_rhs: requires m >= 2 (log m vanishes at m = 1)");
    if (!(pair.p_star() > 1.0))
        throw std::invalid_argument("theorem_main_rhs: requires p_star > 1");
    if (!pair.q_finite()) throw std::invalid_argument("theorem_main_rhs: requires q < inf");
    if (!(C > 0.0)) throw std::invalid_argument("theorem_main_rhs: C must be positive");
    const double p = pair.p();
    const double q = pair.q();
    const double m = static_cast<double>(profile.rows());
    BoundBreakdown b;
    b.name = "theorem-main";
    b.constants = {{"C", C}, {"gamma_p", gamma_r(p)}, {"gamma_q", gamma_r(q)}};
    b.terms.push_back({"row_p", gamma_r(p) * row_norm_max(profile, p)});
    b.terms.push_back({"entry_max", gamma_r(q) * expected_max_abs(profile.entries())});
    b.terms.push_back({"prefactor", C * std::pow(p, 5.0 / q) * std::pow(std::log(m), 1.0 / q)});
    b.terms.push_back({"column_q", std::pow(2.0, 1.0 / q) * gamma_r(q) * col_norm_max(profile, q)});
    b.total = b.recombine();
    return b;
}

BoundBreakdown conjecture_functional(const VarianceProfile& profile, const NormPair& pair) {
    BoundBreakdown b;
    b.name = "conjecture";
    b.terms.push_back({"row_p", row_norm_max(profile, pair.p())});
    b.terms.push_back({"column_q", col_norm_max(profile, pair.q())});
    b.terms.push_back({"entry_max", expected_max_abs(profile.entries())});
    b.total = b.recombine();
    return b;
}

BoundBreakdown chevet_rhs(std::span<const double> x, std::span<const double> y,
                          const NormPair& pair) {
    if (x.empty() || y.empty()) throw std::invalid_argument("chevet_rhs: empty vector");
    BoundBreakdown b;
    b.name = "chevet";
    b.terms.push_back({"yq_xinf", lr_norm(y, pair.q()) * lr_norm(x, kInf)});
    b.terms.push_back({"yinf_xp", lr_norm(y, kInf) * lr_norm(x, pair.p())});
    b.total = b.recombine();
    return b;
}

BoundBreakdown bvh_rhs(const VarianceProfile& profile, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("bvh_rhs: C must be positive");
    const double dim = static_cast<double>(std::max(profile.rows(), profile.cols()));
    BoundBreakdown b;
    b.name = "bvh";
    b.constants = {{"C", C}};
    // 1x1 is legal but the log term degenerates to 0; flag it for consumers
    if (dim < 2.0) b.constants.push_back({"log_is_zero", 1.0});
    b.terms.push_back({"mixed_norm", bvh_mixed_norm(profile)});
    b.terms.push_back({"log_entry", std::sqrt(std::log(dim)) * profile.max_entry()});
    b.total = b.recombine();
    return b;
}

}  // namespace normlab
