#include "normlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace normlab {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : m_(rows), n_(cols), a_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : m_(rows), n_(cols), a_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (a_.size() != rows * cols)
        throw std::invalid_argument("matrix entry count does not match dimensions");
}

std::vector<double> Matrix::column(std::size_t j) const {
    std::vector<double> out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i] = a_[i * n_ + j];
    return out;
}

Matrix Matrix::transposed() const {
    Matrix t(n_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = a_[i * n_ + j];
    return t;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double v : a_) best = std::max(best, std::abs(v));
    return best;
}

bool Matrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return v == 0.0; });
}

void Matrix::multiply(std::span<const double> y, std::span<double> out) const {
    for (std::size_t i = 0; i < m_; ++i) {
        const double* row = a_.data() + i * n_;
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * y[j];
        out[i] = acc;
    }
}

void Matrix::multiply_transpose(std::span<const double> u, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        const double* row = a_.data() + i * n_;
        const double ui = u[i];
        if (ui == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) out[j] += row[j] * ui;
    }
}

double lr_norm(std::span<const double> x, double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("lr_norm: r must be >= 1");
    if (x.empty()) return 0.0;
    if (std::isinf(r)) {
        double best = 0.0;
        for (double v : x) best = std::max(best, std::abs(v));
        return best;
    }
    if (r == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    if (r == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double xmax = 0.0;
    for (double v : x) xmax = std::max(xmax, std::abs(v));
    if (xmax == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) {
        const double t = std::abs(v) / xmax;
        if (t > 0.0) s += std::pow(t, r);
    }
    return xmax * std::pow(s, 1.0 / r);
}

namespace {

Matrix parse_matrix(std::istream& in, const std::string& source, bool allow_negative) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;  // blank
            if (line[first] == '#') continue;          // comment
            out = line;
            return true;
        }
        return false;
    };
    auto fail = [&](const std::string& what) -> std::runtime_error {
        return std::runtime_error(source + ":" + std::to_string(line_no) + ": " + what);
    };

    std::string header;
    if (!next_line(header)) throw std::runtime_error(source + ": empty input");
    std::istringstream hs(header);
    long long m = 0, n = 0;
    std::string trailing;
    if (!(hs >> m >> n) || (hs >> trailing))
        throw fail("expected header line \"m n\"");
    if (m < 1 || n < 1) throw fail("dimensions must be positive");

    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(m * n));
    for (long long i = 0; i < m; ++i) {
        std::string row;
        if (!next_line(row)) throw std::runtime_error(source + ": unexpected end of input at row " +
                                                      std::to_string(i + 1));
        std::istringstream rs(row);
        std::string tok;
        for (long long j = 0; j < n; ++j) {
            if (!(rs >> tok)) throw fail("expected " + std::to_string(n) + " entries in row");
            double v;
            try {
                std::size_t pos = 0;
                v = std::stod(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw fail("bad numeric token '" + tok + "'");
            }
            if (std::isnan(v)) throw fail("NaN entry rejected");
            if (!std::isfinite(v)) throw fail("non-finite entry rejected");
            if (!allow_negative && v < 0.0) throw fail("negative entry rejected");
            entries.push_back(v);
        }
        if (rs >> trailing) throw fail("trailing tokens after " + std::to_string(n) + " entries");
    }
    return Matrix(static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(entries));
}

}  // namespace

Matrix read_matrix(std::istream& in, const std::string& source_name) {
    return parse_matrix(in, source_name, /*allow_negative=*/true);
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const Matrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m(i, j);
        }
        out << '\n';
    }
}

namespace detail {
Matrix parse_matrix_impl(std::istream& in, const std::string& source, bool allow_negative) {
    return parse_matrix(in, source, allow_negative);
}
}  // namespace detail

}  // namespace normlab
