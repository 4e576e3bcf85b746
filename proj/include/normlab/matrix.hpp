#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace normlab {

// Dense row-major matrix of doubles. Shared by realizations, profiles and
// the norm solvers.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::size_t size() const { return a_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
    std::span<const double> entries() const { return {a_.data(), a_.size()}; }
    std::vector<double> column(std::size_t j) const;

    Matrix transposed() const;
    double max_abs() const;
    bool all_finite() const;
    bool is_zero() const;

    // y has length cols(); result has length rows().
    void multiply(std::span<const double> y, std::span<double> out) const;
    // u has length rows(); result has length cols().
    void multiply_transpose(std::span<const double> u, std::span<double> out) const;

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<double> a_;
};

// l_r norm of a vector, r in [1, inf]. r = inf is an exact max, never a
// large-r limit. Large r is safe: the sum is factored by the max magnitude.
double lr_norm(std::span<const double> x, double r);

// Text format: header line "m n", then m lines of n whitespace-separated
// decimals. Parse errors carry 1-based line numbers.
Matrix read_matrix(std::istream& in, const std::string& source_name = "<stream>");
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);

namespace detail {
Matrix parse_matrix_impl(std::istream& in, const std::string& source, bool allow_negative);
}

}  // namespace normlab
