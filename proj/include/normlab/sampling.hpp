#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "normlab/matrix.hpp"
#include "normlab/profiles.hpp"

namespace normlab {

// Addresses one realization: seed identifies the experiment, index the
// sample within it. Distinct keys give independent streams; equal keys give
// bit-identical output regardless of thread count or call order.
struct SampleKey {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

// Standard normal at cell `cell` of the (seed,index) stream. Counter-based:
// a keyed 64-bit hash mapped through the inverse normal CDF, so every cell
// is addressable independently.
double standard_normal_at(const SampleKey& key, std::uint64_t cell);

// G = (a_ij * g_ij). Cell (i,j) uses counter i*n+j; entries with a_ij = 0
// skip generation entirely and are exact zeros.
Matrix sample_matrix(const VarianceProfile& profile, const SampleKey& key);

// X = (a_j * g_j), coordinate j keyed by counter j (same stream layout as a
// single-row profile).
std::vector<double> sample_weighted_vector(std::span<const double> a, const SampleKey& key);

}  // namespace normlab
