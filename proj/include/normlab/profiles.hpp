#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "normlab/matrix.hpp"

namespace normlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Nonnegative m x n array (a_ij). Entries are entrywise standard deviation
// scales, NOT variances: a realization has entry a_ij * g_ij with g_ij a
// standard normal, so the entry variance is a_ij^2.
class VarianceProfile {
public:
    VarianceProfile(std::size_t rows, std::size_t cols, std::vector<double> entries);
    explicit VarianceProfile(Matrix m);

    std::size_t rows() const { return a_.rows(); }
    std::size_t cols() const { return a_.cols(); }
    double operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
    std::span<const double> row(std::size_t i) const { return a_.row(i); }
    std::span<const double> entries() const { return a_.entries(); }
    const Matrix& matrix() const { return a_; }

    double max_entry() const { return a_.max_abs(); }
    bool is_zero() const { return a_.is_zero(); }
    bool is_square() const { return rows() == cols(); }

    VarianceProfile transposed() const { return VarianceProfile(a_.transposed()); }
    VarianceProfile scaled(double c) const;

private:
    Matrix a_;
};

// Exponent pair: p_star in [1,2], q in [2,inf]; p is the conjugate exponent
// of p_star (1/p + 1/p_star = 1), infinite when p_star = 1.
class NormPair {
public:
    NormPair(double p_star, double q);

    double p_star() const { return p_star_; }
    double q() const { return q_; }
    double p() const { return p_star_ == 1.0 ? kInf : p_star_ / (p_star_ - 1.0); }
    bool p_finite() const { return p_star_ > 1.0; }
    bool q_finite() const { return q_ != kInf; }
    std::string label() const;

private:
    double p_star_;
    double q_;
};

VarianceProfile make_iid(std::size_t m, std::size_t n, double s);
VarianceProfile make_tensor(std::span<const double> x, std::span<const double> y);
VarianceProfile make_diagonal(std::span<const double> d);

double row_norm_max(const VarianceProfile& profile, double r);
double col_norm_max(const VarianceProfile& profile, double r);

// max of the largest Euclidean row norm and the largest Euclidean column norm.
double bvh_mixed_norm(const VarianceProfile& profile);

// Profile files share the matrix text format but reject negative entries.
VarianceProfile read_profile(std::istream& in, const std::string& source_name = "<stream>");
VarianceProfile read_profile_file(const std::string& path);
void write_profile(std::ostream& out, const VarianceProfile& profile);

}  // namespace normlab
