#include "normlab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace normlab {

namespace {

void validate_entries(const Matrix& a) {
    for (double v : a.entries()) {
        if (std::isnan(v)) throw std::invalid_argument("profile entries must not be NaN");
        if (!std::isfinite(v)) throw std::invalid_argument("profile entries must be finite");
        if (v < 0.0) throw std::invalid_argument("profile entries must be nonnegative");
    }
}

}  // namespace

VarianceProfile::VarianceProfile(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : a_(rows, cols, std::move(entries)) {
    validate_entries(a_);
}

VarianceProfile::VarianceProfile(Matrix m) : a_(std::move(m)) { validate_entries(a_); }

VarianceProfile VarianceProfile::scaled(double c) const {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("profile scale must be finite and nonnegative");
    std::vector<double> e(entries().begin(), entries().end());
    for (double& v : e) v *= c;
    return VarianceProfile(rows(), cols(), std::move(e));
}

NormPair::NormPair(double p_star, double q) : p_star_(p_star), q_(q) {
    if (std::isnan(p_star) || std::isnan(q)) throw std::invalid_argument("NormPair: NaN exponent");
    if (!(p_star >= 1.0 && p_star <= 2.0))
        throw std::invalid_argument("NormPair: p_star must lie in [1,2]");
    if (!(q >= 2.0)) throw std::invalid_argument("NormPair: q must lie in [2,inf]");
}

std::string NormPair::label() const {
    std::ostringstream os;
    os << "ps" << p_star_ << "_q";
    if (q_ == kInf)
        os << "inf";
    else
        os << q_;
    return os.str();
}

VarianceProfile make_iid(std::size_t m, std::size_t n, double s) {
    if (m < 1 || n < 1) throw std::invalid_argument("make_iid: dimensions must be positive");
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("make_iid: s must be finite and nonnegative");
    return VarianceProfile(m, n, std::vector<double>(m * n, s));
}

VarianceProfile make_tensor(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("make_tensor: empty vector");
    const std::size_t n = x.size(), m = y.size();
    std::vector<double> a(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = x[j] * y[i];
    return VarianceProfile(m, n, std::move(a));
}

VarianceProfile make_diagonal(std::span<const double> d) {
    if (d.empty()) throw std::invalid_argument("make_diagonal: empty vector");
    const std::size_t n = d.size();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = d[i];
    return VarianceProfile(n, n, std::move(a));
}

double row_norm_max(const VarianceProfile& profile, double r) {
    double best = 0.0;
    for (std::size_t i = 0; i < profile.rows(); ++i)
        best = std::max(best, lr_norm(profile.row(i), r));
    return best;
}

double col_norm_max(const VarianceProfile& profile, double r) {
    double best = 0.0;
    for (std::size_t j = 0; j < profile.cols(); ++j)
        best = std::max(best, lr_norm(profile.matrix().column(j), r));
    return best;
}

double bvh_mixed_norm(const VarianceProfile& profile) {
    return std::max(row_norm_max(profile, 2.0), col_norm_max(profile, 2.0));
}

VarianceProfile read_profile(std::istream& in, const std::string& source_name) {
    return VarianceProfile(detail::parse_matrix_impl(in, source_name, /*allow_negative=*/false));
}

VarianceProfile read_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_profile(in, path);
}

void write_profile(std::ostream& out, const VarianceProfile& profile) {
    write_matrix(out, profile.matrix());
}

}  // namespace normlab
