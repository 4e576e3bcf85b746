#pragma once

// Deterministic test corpora shared by the unit and acceptance suites. All
// values derive from the library's keyed counter generator, so every test
// sees exactly the same inputs on every run and platform.

#include <cmath>
#include <cstdint>
#include <vector>

#include "normlab/matrix.hpp"
#include "normlab/numerics.hpp"
#include "normlab/profiles.hpp"
#include "normlab/sampling.hpp"

namespace testcorpus {

inline double unit_at(std::uint64_t seed, std::uint64_t index, std::uint64_t cell) {
    return normlab::rng::u64_to_unit(normlab::rng::keyed_u64(seed, index, cell));
}

// Weight vectors of lengths 1..max_len cycling through decay shapes: flat,
// geometric, i^{-1/2}, i^{-1}, uniform random, spike plus noise.
inline std::vector<std::vector<double>> weight_corpus(std::size_t count,
                                                      std::uint64_t seed = 17,
                                                      std::size_t max_len = 512) {
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t len =
            1 + static_cast<std::size_t>(unit_at(seed, k, 0) * static_cast<double>(max_len));
        const double scale = 0.25 + 4.0 * unit_at(seed, k, 1);
        std::vector<double> w(len);
        switch (k % 6) {
            case 0:
                for (std::size_t i = 0; i < len; ++i) w[i] = scale;
                break;
            case 1: {
                double v = scale;
                for (std::size_t i = 0; i < len; ++i, v *= 0.9) w[i] = v;
                break;
            }
            case 2:
                for (std::size_t i = 0; i < len; ++i)
                    w[i] = scale / std::sqrt(static_cast<double>(i + 1));
                break;
            case 3:
                for (std::size_t i = 0; i < len; ++i) w[i] = scale / static_cast<double>(i + 1);
                break;
            case 4:
                for (std::size_t i = 0; i < len; ++i) w[i] = scale * unit_at(seed, k, 2 + i);
                break;
            default:
                for (std::size_t i = 0; i < len; ++i)
                    w[i] = 0.05 * scale * unit_at(seed, k, 2 + i);
                w[0] = scale;
                break;
        }
        out.push_back(std::move(w));
    }
    return out;
}

// Random profiles with entries uniform in [0,1), dims in [1,max_dim].
inline std::vector<normlab::VarianceProfile> profile_corpus(std::size_t count,
                                                            std::size_t max_dim,
                                                            std::uint64_t seed = 31) {
    std::vector<normlab::VarianceProfile> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t m = 1 + static_cast<std::size_t>(unit_at(seed, k, 0) * max_dim);
        const std::size_t n = 1 + static_cast<std::size_t>(unit_at(seed, k, 1) * max_dim);
        std::vector<double> a(m * n);
        for (std::size_t c = 0; c < m * n; ++c) a[c] = unit_at(seed, k, 2 + c);
        out.emplace_back(m, n, std::move(a));
    }
    return out;
}

// Random matrices with standard normal entries, m x n.
inline normlab::Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed,
                                     std::uint64_t index) {
    std::vector<double> a(m * n);
    for (std::size_t c = 0; c < m * n; ++c)
        a[c] = normlab::standard_normal_at(normlab::SampleKey{seed, index}, c);
    return normlab::Matrix(m, n, std::move(a));
}

}  // namespace testcorpus
