#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace maxop::detail {

// Integer threshold T with |o|^2 <= T  <=>  |o| h <= r, using the shared
// relative tie tolerance.
std::int64_t ball_threshold(double r, double h);
std::vector<std::int64_t> ball_thresholds(std::span<const double> radii, double h);

// Number of points of Z^d with |o|^2 == t, for t = 0..t_max.
std::vector<double> shell_counts(int d, std::int64_t t_max);

// For each threshold, sum over the infinite lattice ball of weight(|o|^2).
std::vector<double> ball_weight_sums(int d, std::span<const std::int64_t> thresholds,
                                     std::span<const double> weight_by_q);

// first[q] = smallest k with q <= thresholds[k]; thresholds nondecreasing.
std::vector<int> first_radius_index(std::span<const std::int64_t> thresholds);

// Direct lattice ball sums over a box with the given extents (isotropic
// spacing). For every node, sums[k] = sum over offsets o in lexicographic
// order with |o|^2 <= thresholds[k] and node+o inside the box of
// values[node+o] * weight_by_q[|o|^2]; result = max(values[node],
// max_k sums[k] / denom[k]). Offsets enter each partial sum in
// lexicographic order, so results are reproducible bit for bit.
void ball_maximal_direct(std::span<const double> values, std::span<const int> extent,
                         std::span<const std::int64_t> thresholds, std::span<const double> denom,
                         std::span<const double> weight_by_q, std::span<double> out);

// Same quantity for an isotropic N^d box using zero-padded FFT convolution,
// several inputs at once.
void ball_maximal_fft(const std::vector<std::span<const double>>& values, int d, int N,
                      std::span<const std::int64_t> thresholds, std::span<const double> denom,
                      std::span<const double> weight_by_q, const std::vector<std::span<double>>& out);

} // namespace maxop::detail
