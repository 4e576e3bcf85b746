#include "normlab/sampling.hpp"

#include "normlab/numerics.hpp"

namespace normlab {

double standard_normal_at(const SampleKey& key, std::uint64_t cell) {
    return inv_normal_cdf(rng::u64_to_unit(rng::keyed_u64(key.seed, key.index, cell)));
}

Matrix sample_matrix(const VarianceProfile& profile, const SampleKey& key) {
    const std::size_t m = profile.rows(), n = profile.cols();
    Matrix g(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double a = profile(i, j);
            if (a == 0.0) continue;  // exact zero, no stream consumption
            g(i, j) = a * standard_normal_at(key, static_cast<std::uint64_t>(i) * n + j);
        }
    }
    return g;
}

std::vector<double> sample_weighted_vector(std::span<const double> a, const SampleKey& key) {
    std::vector<double> x(a.size(), 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0.0) continue;
        x[j] = a[j] * standard_normal_at(key, j);
    }
    return x;
}

}  // namespace normlab
