#include "maxop/euclidean_max.hpp"

#include "lattice.hpp"
#include "maxop/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace maxop {

RadiiSet::RadiiSet(std::vector<double> radii) : radii_(std::move(radii))
{
    if (radii_.empty()) throw std::invalid_argument("radii set is empty");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) throw std::invalid_argument("radii must be positive");
        if (i > 0 && !(radii_[i] > radii_[i - 1])) throw std::invalid_argument("radii must be strictly increasing");
    }
}

RadiiSet log_radii(double lo, double hi, int K)
{
    if (K < 2) throw std::invalid_argument("need at least two radii");
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("radius range must satisfy 0 < lo < hi");
    std::vector<double> r(K);
    const double step = std::log(hi / lo) / (K - 1);
    for (int k = 0; k < K; ++k) r[k] = lo * std::exp(step * k);
    r.front() = lo;
    r.back() = hi;
    return RadiiSet(std::move(r));
}

RadiiSet default_radii(const GridSpec& spec, int K)
{
    return log_radii(spec.h, 2.0 * spec.L * std::sqrt(static_cast<double>(spec.d)), K);
}

namespace {

void check_radii(const GridSpec& spec, const RadiiSet& R)
{
    const double lo = spec.h * (1.0 - 1e-12);
    const double hi = 2.0 * spec.L * std::sqrt(static_cast<double>(spec.d)) * (1.0 + 1e-12);
    if (R.min() < lo || R.max() > hi)
        throw std::invalid_argument("radii must lie in [h, 2L sqrt(d)] for this grid");
}

void check_input(const GridFunction& f)
{
    if (f.domain() != Domain::physical) throw std::invalid_argument("maximal operators act on physical data");
    if (!f.is_real()) throw std::invalid_argument("maximal operators expect real input");
}

std::vector<double> power_weights(std::int64_t t_max, double h, int k)
{
    std::vector<double> w(t_max + 1, 1.0);
    if (k == 0) return w;
    for (std::int64_t q = 0; q <= t_max; ++q) w[q] = std::pow(std::sqrt(static_cast<double>(q)) * h, k);
    return w;
}

bool prefer_direct(const GridSpec& spec, std::int64_t t_max, std::size_t K, std::size_t members)
{
    const double n = static_cast<double>(spec.size());
    const double ball = std::min(std::pow(2.0 * std::sqrt(static_cast<double>(t_max)) + 1.0, spec.d), n);
    const double direct = members * n * ball;
    const double padded = std::pow(2.0 * spec.N, spec.d);
    const double fft = (K + members * (K + 1.0)) * padded * std::log2(padded);
    return direct <= 4.0 * fft;
}

std::vector<GridFunction> ball_maximal(const VectorField& F, int k, const RadiiSet& R, BallMethod method)
{
    if (k < 0) throw std::invalid_argument("weight exponent must be nonnegative");
    const GridSpec& spec = F.spec();
    for (const auto& f : F.members()) check_input(f);
    check_radii(spec, R);

    const auto thresholds = detail::ball_thresholds(R.radii(), spec.h);
    const std::int64_t t_max = thresholds.back();
    const auto weight = power_weights(t_max, spec.h, k);
    const auto denom = detail::ball_weight_sums(spec.d, thresholds, weight);

    std::vector<std::vector<double>> in(F.size()), out(F.size(), std::vector<double>(spec.size()));
    for (std::size_t m = 0; m < F.size(); ++m) in[m] = F[m].abs();

    if (method == BallMethod::automatic)
        method = prefer_direct(spec, t_max, R.size(), F.size()) ? BallMethod::direct : BallMethod::fft;

    if (method == BallMethod::direct) {
        const std::vector<int> extent(spec.d, spec.N);
        for (std::size_t m = 0; m < F.size(); ++m)
            detail::ball_maximal_direct(in[m], extent, thresholds, denom, weight, out[m]);
    } else {
        std::vector<std::span<const double>> ins(in.begin(), in.end());
        std::vector<std::span<double>> outs(out.begin(), out.end());
        detail::ball_maximal_fft(ins, spec.d, spec.N, thresholds, denom, weight, outs);
    }

    std::vector<GridFunction> result;
    result.reserve(F.size());
    for (const auto& o : out) result.push_back(from_real(spec, o));
    return result;
}

} // namespace

std::vector<GridFunction> hl_maximal(const VectorField& F, const RadiiSet& R, BallMethod method)
{
    return ball_maximal(F, 0, R, method);
}

GridFunction hl_maximal(const GridFunction& f, const RadiiSet& R, BallMethod method)
{
    return std::move(ball_maximal(VectorField({f}), 0, R, method).front());
}

std::vector<GridFunction> weighted_maximal(const VectorField& F, int k, const RadiiSet& R, BallMethod method)
{
    return ball_maximal(F, k, R, method);
}

GridFunction weighted_maximal(const GridFunction& f, int k, const RadiiSet& R, BallMethod method)
{
    return std::move(ball_maximal(VectorField({f}), k, R, method).front());
}

std::vector<double> maximal_along_axis(std::span<const double> values, std::span<const int> extent, int axis,
                                       double h, const RadiiSet& R)
{
    const int d = static_cast<int>(extent.size());
    if (axis < 0 || axis >= d) throw std::invalid_argument("axis " + std::to_string(axis) + " out of range");
    if (R.min() < h * (1.0 - 1e-12)) throw std::invalid_argument("radii must be at least the spacing");

    const auto thresholds = detail::ball_thresholds(R.radii(), h);
    const std::vector<int> first = detail::first_radius_index(thresholds);
    const int K = static_cast<int>(R.size());
    std::vector<double> denom(K);
    for (int k = 0; k < K; ++k)
        denom[k] = 2.0 * std::floor(std::sqrt(static_cast<double>(thresholds[k])) + 1e-9) + 1.0;
    const int reach = static_cast<int>(std::floor(std::sqrt(static_cast<double>(thresholds.back())) + 1e-9));

    std::size_t stride = 1;
    for (int a = d - 1; a > axis; --a) stride *= extent[a];
    const int n = extent[axis];
    std::size_t total = 1;
    for (int e : extent) total *= e;
    const std::size_t fibers = total / n;

    std::vector<double> out(total);
    parallel_for(fibers, [&](std::size_t begin, std::size_t end) {
        std::vector<double> sums(K);
        for (std::size_t fib = begin; fib < end; ++fib) {
            const std::size_t base = (fib / stride) * stride * n + fib % stride;
            for (int i = 0; i < n; ++i) {
                std::fill(sums.begin(), sums.end(), 0.0);
                const int lo = std::max(-reach, -i), hi = std::min(reach, n - 1 - i);
                for (int o = lo; o <= hi; ++o) {
                    const double v = std::abs(values[base + (i + o) * stride]);
                    for (int k = first[static_cast<std::int64_t>(o) * o]; k < K; ++k) sums[k] += v;
                }
                double best = std::abs(values[base + i * stride]);
                for (int k = 0; k < K; ++k) best = std::max(best, sums[k] / denom[k]);
                out[base + i * stride] = best;
            }
        }
    });
    return out;
}

GridFunction maximal_1d(const GridFunction& f, int axis, const RadiiSet& R)
{
    check_input(f);
    const GridSpec& spec = f.spec();
    const double hi = 2.0 * spec.L * std::sqrt(static_cast<double>(spec.d)) * (1.0 + 1e-12);
    if (R.max() > hi) throw std::invalid_argument("radii must lie in [h, 2L sqrt(d)] for this grid");
    const std::vector<int> extent(spec.d, spec.N);
    return from_real(spec, maximal_along_axis(f.real_part(), extent, axis, spec.h, R));
}

} // namespace maxop
