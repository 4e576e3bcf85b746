#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "normlab/profiles.hpp"

namespace normlab {

// Named term-by-term decomposition of a bound's right-hand side. The total
// is recomputable from terms + constants via recombine().
struct BoundBreakdown {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    std::vector<std::pair<std::string, double>> constants;
    double total = 0.0;

    double term(const std::string& label) const;
    double constant(const std::string& symbol) const;
    // Re-applies the bound's combining formula to the stored terms.
    double recombine() const;
};

// CSV rows `bound_name,term_label,value`, constants as `const:<symbol>`,
// then a `total` row.
void write_breakdown_csv(std::ostream& out, const BoundBreakdown& b);

// sigma = gamma_q * m^{-1/q} * max_j ||(a_ij)_i||_q, 2 <= q < inf.
double sigma_lemma31(const VarianceProfile& profile, double q);

struct VariationalOpts {
    int restarts = 32;     // random sphere starts on top of the e_j and uniform starts
    int max_iter = 500;
    double tol = 1e-12;
    std::uint64_t start_seed = 0x7369676d61ull;
};

// The variational form sup_{y in B_{p*}} (m^{-1} sum_i gamma_q^q
// (sum_j a_ij^2 y_j^2)^{q/2})^{1/q}, maximized by projected gradient ascent
// with restarts. Exists to test numerically that it equals sigma_lemma31.
double sigma_variational(const VarianceProfile& profile, double q, double p_star,
                         const VariationalOpts& opts = {});

// B = C * lambda^4 * T2 * sqrt(log(m)/m) * sqrt(emax_moment), with
// lambda^4 = (8/(p*(p*-1)))^2 and T2 = sqrt(p) pinned. m may be a real
// parameter; the profile overload uses the row count.
double thm21_B(double m, const NormPair& pair, double C, double emax_moment);
double thm21_B(const VarianceProfile& profile, const NormPair& pair, double C,
               double emax_moment);

// 2*gamma_p*max_i||row_i||_p + C*gamma_q*Emax|a_ij g_ij| (quadrature Emax).
BoundBreakdown lemma32_rhs(const VarianceProfile& profile, const NormPair& pair, double C);

// C*p^{5/q}*(log m)^{1/q}*[gamma_p*max_i||row_i||_p + gamma_q*Emax] +
// 2^{1/q}*gamma_q*max_j||col_j||_q. Requires m >= 2 and p* > 1.
BoundBreakdown theorem_main_rhs(const VarianceProfile& profile, const NormPair& pair,
                                double C);

// max_i||row_i||_p + max_j||col_j||_q + Emax|a_ij g_ij|; valid on the whole
// closed range including p* = 1 and q = inf.
BoundBreakdown conjecture_functional(const VarianceProfile& profile, const NormPair& pair);

// ||y||_q*||x||_inf + ||y||_inf*||x||_p for the tensor profile x (x) y.
BoundBreakdown chevet_rhs(std::span<const double> x, std::span<const double> y,
                          const NormPair& pair);

// C*(mixed row/column Euclidean norm + sqrt(log max(m,n)) * max|a_ij|).
BoundBreakdown bvh_rhs(const VarianceProfile& profile, double C);

}  // namespace normlab
