#include "lattice.hpp"

#include "fft.hpp"
#include "maxop/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxop::detail {

std::int64_t ball_threshold(double r, double h)
{
    double t = (r / h) * (r / h) * (1.0 + 1e-12);
    return static_cast<std::int64_t>(std::floor(t));
}

std::vector<std::int64_t> ball_thresholds(std::span<const double> radii, double h)
{
    std::vector<std::int64_t> t(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) t[k] = ball_threshold(radii[k], h);
    return t;
}

std::vector<double> shell_counts(int d, std::int64_t t_max)
{
    std::vector<double> cur(t_max + 1, 0.0);
    cur[0] = 1.0;
    for (int j = 0; j < d; ++j) {
        std::vector<double> next(t_max + 1, 0.0);
        for (std::int64_t o = 0; o * o <= t_max; ++o) {
            double mult = (o == 0) ? 1.0 : 2.0;
            for (std::int64_t t = o * o; t <= t_max; ++t) next[t] += mult * cur[t - o * o];
        }
        cur.swap(next);
    }
    return cur;
}

std::vector<double> ball_weight_sums(int d, std::span<const std::int64_t> thresholds,
                                     std::span<const double> weight_by_q)
{
    std::int64_t t_max = thresholds.empty() ? 0 : *std::max_element(thresholds.begin(), thresholds.end());
    std::vector<double> shells = shell_counts(d, t_max);
    std::vector<double> cumulative(t_max + 1);
    double acc = 0.0;
    for (std::int64_t t = 0; t <= t_max; ++t) {
        acc += shells[t] * weight_by_q[t];
        cumulative[t] = acc;
    }
    std::vector<double> sums(thresholds.size());
    for (std::size_t k = 0; k < thresholds.size(); ++k) sums[k] = cumulative[thresholds[k]];
    return sums;
}

std::vector<int> first_radius_index(std::span<const std::int64_t> thresholds)
{
    std::int64_t t_max = thresholds.back();
    std::vector<int> first(t_max + 1);
    int k = 0;
    for (std::int64_t q = 0; q <= t_max; ++q) {
        while (thresholds[k] < q) ++k;
        first[q] = k;
    }
    return first;
}

namespace {

struct DirectContext {
    std::span<const double> values;
    std::span<const int> extent;
    std::vector<std::size_t> stride;
    std::int64_t t_max;
    std::span<const double> weight;
    const std::vector<int>* first;
    int K;
};

void accumulate(const DirectContext& c, int axis, const int* node, std::int64_t q, std::size_t flat, double* sums)
{
    const int d = static_cast<int>(c.extent.size());
    const std::int64_t room = c.t_max - q;
    const int reach = static_cast<int>(std::floor(std::sqrt(static_cast<double>(room))));
    int lo = std::max(-reach, -node[axis]);
    int hi = std::min(reach, c.extent[axis] - 1 - node[axis]);
    for (int o = lo; o <= hi; ++o) {
        std::int64_t qq = q + static_cast<std::int64_t>(o) * o;
        if (qq > c.t_max) continue;
        std::size_t ff = flat + static_cast<std::size_t>(node[axis] + o) * c.stride[axis];
        if (axis + 1 < d) {
            accumulate(c, axis + 1, node, qq, ff, sums);
        } else {
            double v = c.values[ff] * c.weight[qq];
            for (int k = (*c.first)[qq]; k < c.K; ++k) sums[k] += v;
        }
    }
}

} // namespace

void ball_maximal_direct(std::span<const double> values, std::span<const int> extent,
                         std::span<const std::int64_t> thresholds, std::span<const double> denom,
                         std::span<const double> weight_by_q, std::span<double> out)
{
    const int d = static_cast<int>(extent.size());
    const int K = static_cast<int>(thresholds.size());
    std::vector<int> first = first_radius_index(thresholds);
    DirectContext ctx{values, extent, std::vector<std::size_t>(d), thresholds.back(), weight_by_q, &first, K};
    std::size_t s = 1;
    for (int a = d - 1; a >= 0; --a) {
        ctx.stride[a] = s;
        s *= extent[a];
    }
    const std::size_t total = s;
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        std::vector<int> node(d);
        std::vector<double> sums(K);
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t rest = i;
            for (int a = d - 1; a >= 0; --a) {
                node[a] = static_cast<int>(rest % extent[a]);
                rest /= extent[a];
            }
            std::fill(sums.begin(), sums.end(), 0.0);
            accumulate(ctx, 0, node.data(), 0, 0, sums.data());
            double best = values[i];
            for (int k = 0; k < K; ++k) best = std::max(best, sums[k] / denom[k]);
            out[i] = best;
        }
    });
}

void ball_maximal_fft(const std::vector<std::span<const double>>& values, int d, int N,
                      std::span<const std::int64_t> thresholds, std::span<const double> denom,
                      std::span<const double> weight_by_q, const std::vector<std::span<double>>& out)
{
    const int M = 2 * N;
    const std::vector<int> dims(d, M);
    std::size_t real_size = 1, spec_size = 1;
    for (int a = 0; a < d; ++a) {
        real_size *= M;
        spec_size *= (a + 1 < d) ? M : M / 2 + 1;
    }
    const std::size_t n_in = values.size();

    auto real = real_buffer(real_size);
    auto work = complex_buffer(spec_size);
    auto kernel_hat = complex_buffer(spec_size);
    auto forward = Plan::r2c(dims, real.get(), work.get());
    auto kernel_forward = Plan::r2c(dims, real.get(), kernel_hat.get());
    auto backward = Plan::c2r(dims, work.get(), real.get());

    // Flat positions of the N^d data box inside the padded M^d box, and the
    // squared length of the cyclic offset stored at every padded position.
    std::vector<std::size_t> box(values.empty() ? 0 : values[0].size());
    std::vector<std::int32_t> offset_q(real_size);
    {
        std::vector<int> idx(d, 0);
        std::size_t b = 0;
        for (std::size_t flat = 0; flat < real_size; ++flat) {
            bool inside = true;
            std::int64_t q = 0;
            for (int a = 0; a < d; ++a) {
                if (idx[a] >= N) inside = false;
                if (idx[a] == N) q = -1;
                if (q >= 0) {
                    std::int64_t o = idx[a] < N ? idx[a] : idx[a] - M;
                    q += o * o;
                }
            }
            offset_q[flat] = static_cast<std::int32_t>(q);
            if (inside) box[b++] = flat;
            for (int a = d - 1; a >= 0; --a) {
                if (++idx[a] < M) break;
                idx[a] = 0;
            }
        }
    }

    std::vector<FftwBuffer<std::complex<double>>> spectra;
    for (std::size_t m = 0; m < n_in; ++m) {
        std::fill(real.get(), real.get() + real_size, 0.0);
        for (std::size_t i = 0; i < box.size(); ++i) real[box[i]] = values[m][i];
        forward.execute();
        spectra.push_back(complex_buffer(spec_size));
        std::copy(work.get(), work.get() + spec_size, spectra.back().get());
        std::copy(values[m].begin(), values[m].end(), out[m].begin());
    }

    const double scale = 1.0 / static_cast<double>(real_size);
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        const std::int64_t T = thresholds[k];
        for (std::size_t i = 0; i < real_size; ++i) {
            std::int32_t q = offset_q[i];
            real[i] = (q >= 0 && q <= T) ? weight_by_q[q] : 0.0;
        }
        kernel_forward.execute();
        for (std::size_t m = 0; m < n_in; ++m) {
            const auto* fh = spectra[m].get();
            for (std::size_t i = 0; i < spec_size; ++i) work[i] = fh[i] * kernel_hat[i];
            backward.execute();
            const double inv = scale / denom[k];
            for (std::size_t i = 0; i < box.size(); ++i) out[m][i] = std::max(out[m][i], real[box[i]] * inv);
        }
    }
}

} // namespace maxop::detail
