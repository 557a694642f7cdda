#include "maxop/rotations.hpp"

#include "lattice.hpp"
#include "maxop/parallel.hpp"
#include "maxop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace maxop {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer of seed + index
    std::uint64_t z = seed + index * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Box-Muller on a 64-bit engine, so draws do not depend on the standard
// library's distribution implementation.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

    double operator()()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::vector<double> random_direction(Gaussian& g, int d)
{
    std::vector<double> v(d);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& c : v) {
            c = g();
            n2 += c * c;
        }
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : v) c *= inv;
    return v;
}

// Antipodal pairs of random unit vectors in R^{d'}.
std::vector<std::vector<double>> direction_set(int d_prime, const DescentOptions& options)
{
    if (options.directions < 2 || options.directions % 2 != 0)
        throw std::invalid_argument("direction count must be even and >= 2");
    Gaussian g(derive_seed(options.seed, 0));
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < options.directions / 2; ++i) {
        auto v = random_direction(g, d_prime);
        dirs.push_back(v);
        for (double& c : v) c = -c;
        dirs.push_back(v);
    }
    return dirs;
}

} // namespace

RotationMatrix haar_rotation(int d, std::uint64_t seed)
{
    if (d < 1) throw std::invalid_argument("rotation dimension must be >= 1");
    Gaussian g(derive_seed(seed, 0));
    Eigen::MatrixXd a(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) a(i, j) = g();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return RotationMatrix{d, q};
}

DescentSplit make_split(int d, int d_prime)
{
    if (d_prime > d) throw std::invalid_argument("plane dimension exceeds ambient dimension");
    if (d_prime < 3) throw std::invalid_argument("plane dimension must be >= 3");
    return DescentSplit{d, d_prime, d - d_prime};
}

int dimension_split(Exponent p, Exponent q)
{
    if (p.is_infinite() || q.is_infinite()) throw std::invalid_argument("dimension split needs finite exponents");
    const double pv = p.value(), qv = q.value();
    const double m = std::max({2.0, pv, qv, pv / (pv - 1.0), qv / (qv - 1.0)});
    // p / (p - 1) rounds low for p like 1.1; nudge so integer maxima floor to themselves
    return static_cast<int>(std::floor(m * (1.0 + 1e-12))) + 1;
}

double batch_stderr(std::span<const double> samples, int batches)
{
    const std::size_t n = samples.size();
    const std::size_t B = std::min<std::size_t>(batches, n);
    if (B < 2) return 0.0;
    std::vector<double> means(B, 0.0);
    for (std::size_t b = 0; b < B; ++b) {
        std::size_t lo = b * n / B, hi = (b + 1) * n / B;
        for (std::size_t i = lo; i < hi; ++i) means[b] += samples[i];
        means[b] /= static_cast<double>(hi - lo);
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= B;
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (B - 1.0);
    return std::sqrt(var / B);
}

namespace {

// A point x - theta(rho w, 0) in index space relative to a node: integer
// shift plus multilinear corner weights.
struct Sample {
    std::vector<int> shift;
    std::vector<double> corner_weight;
    // flat offset of the lower corner
    std::ptrdiff_t base = 0;
};

// Flat offsets of the 2^d cell corners relative to the lower one.
std::vector<std::ptrdiff_t> corner_offsets(const GridSpec& spec)
{
    std::vector<std::ptrdiff_t> delta(std::size_t{1} << spec.d, 0);
    for (std::size_t c = 0; c < delta.size(); ++c) {
        std::ptrdiff_t stride = 1;
        for (int a = spec.d - 1; a >= 0; --a) {
            if ((c >> a) & 1) delta[c] += stride;
            stride *= spec.N;
        }
    }
    return delta;
}

Sample make_sample(const GridSpec& spec, const std::vector<double>& offset)
{
    const int d = spec.d;
    Sample s{std::vector<int>(d), std::vector<double>(std::size_t{1} << d, 1.0)};
    std::vector<double> frac(d);
    for (int a = 0; a < d; ++a) {
        double t = -offset[a] / spec.h;
        double fl = std::floor(t);
        s.shift[a] = static_cast<int>(fl);
        frac[a] = t - fl;
    }
    for (std::size_t c = 0; c < s.corner_weight.size(); ++c)
        for (int a = 0; a < d; ++a) s.corner_weight[c] *= ((c >> a) & 1) ? frac[a] : 1.0 - frac[a];
    std::ptrdiff_t stride = 1;
    for (int a = d - 1; a >= 0; --a) {
        s.base += s.shift[a] * stride;
        stride *= spec.N;
    }
    return s;
}

double interpolate(const GridSpec& spec, std::span<const double> values, const int* node, const Sample& s)
{
    const int d = spec.d, N = spec.N;
    double acc = 0.0;
    for (std::size_t c = 0; c < s.corner_weight.size(); ++c) {
        if (s.corner_weight[c] == 0.0) continue;
        std::size_t flat = 0;
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            int i = node[a] + s.shift[a] + static_cast<int>((c >> a) & 1);
            if (i < 0 || i >= N) {
                inside = false;
                break;
            }
            flat = flat * N + i;
        }
        if (inside) acc += s.corner_weight[c] * values[flat];
    }
    return acc;
}

// Offset theta(rho w, 0) in R^d.
std::vector<double> plane_offset(const RotationMatrix& theta, const std::vector<double>& w, double rho)
{
    std::vector<double> y(theta.d, 0.0);
    for (std::size_t a = 0; a < w.size(); ++a)
        for (int i = 0; i < theta.d; ++i) y[i] += rho * w[a] * theta.m(i, static_cast<Eigen::Index>(a));
    return y;
}

void check_rotation(const RotationMatrix& theta, const DescentSplit& split, const GridSpec& spec)
{
    if (split.d_prime > split.d) throw std::invalid_argument("plane dimension exceeds ambient dimension");
    if (theta.d != spec.d || split.d != spec.d) throw std::invalid_argument("dimension mismatch");
}

// Radial rule for int_0^r rho^{d-1} g(rho) d rho on the shells between
// consecutive radii; shell[k] collects the nodes in (r_{k-1}, r_k].
struct RadialRule {
    std::vector<double> rho;
    std::vector<double> weight;
    std::vector<int> shell;
};

RadialRule radial_rule(const std::vector<double>& radii, int d, int nodes)
{
    RadialRule rule;
    const QuadratureRule& g = gauss_legendre(nodes);
    double lo = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double hi = radii[k];
        for (int j = 0; j < nodes; ++j) {
            double rho = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.nodes[j];
            rule.rho.push_back(rho);
            rule.weight.push_back(0.5 * (hi - lo) * g.weights[j] * std::pow(rho, d - 1));
            rule.shell.push_back(static_cast<int>(k));
        }
        lo = hi;
    }
    return rule;
}

} // namespace

GridFunction descent_maximal(const GridFunction& f, const RotationMatrix& theta, const DescentSplit& split,
                             const RadiiSet& R, const DescentOptions& options)
{
    const GridSpec& spec = f.spec();
    check_rotation(theta, split, spec);
    if (!f.is_real()) throw std::invalid_argument("descent operator expects real input");
    const std::vector<double> values = f.abs();
    const auto dirs = direction_set(split.d_prime, options);
    const RadialRule rule = radial_rule(R.radii(), spec.d, options.radial_nodes);
    const int K = static_cast<int>(R.size());
    const int d = spec.d, N = spec.N;

    std::vector<Sample> samples;
    for (std::size_t j = 0; j < rule.rho.size(); ++j)
        for (const auto& w : dirs) samples.push_back(make_sample(spec, plane_offset(theta, w, rule.rho[j])));

    std::vector<double> denom(K, 0.0);
    {
        double acc = 0.0;
        for (std::size_t j = 0; j < rule.rho.size(); ++j) {
            acc += rule.weight[j];
            denom[rule.shell[j]] = acc;
        }
    }

    // Sample-major sweep over rows of the last axis. Inside the box where
    // every corner is on the grid the row is a handful of strided axpys;
    // nodes near the faces go through the checked interpolation. Both add
    // the same products in the same order, so the split is invisible.
    const double dir_norm = 1.0 / static_cast<double>(dirs.size());
    const auto delta = corner_offsets(spec);
    const std::size_t rows = spec.size() / N;
    std::vector<double> out(values), acc(spec.size(), 0.0), mean(spec.size());
    parallel_for(rows, [&](std::size_t row_begin, std::size_t row_end) {
        std::vector<int> node(d), lo(d), hi(d);
        std::vector<double> tmp(N);
        const std::size_t first = row_begin * N, last = row_end * N;
        std::size_t s = 0;
        for (std::size_t j = 0; j < rule.rho.size(); ++j) {
            std::fill(mean.begin() + first, mean.begin() + last, 0.0);
            for (std::size_t w = 0; w < dirs.size(); ++w) {
                const Sample& sm = samples[s++];
                for (int a = 0; a < d; ++a) {
                    lo[a] = std::max(0, -sm.shift[a]);
                    hi[a] = std::min(N - 1, N - 2 - sm.shift[a]);
                }
                for (std::size_t row = row_begin; row < row_end; ++row) {
                    unravel(spec, row * N, node);
                    bool inside = lo[d - 1] <= hi[d - 1];
                    for (int a = 0; a + 1 < d && inside; ++a) inside = node[a] >= lo[a] && node[a] <= hi[a];
                    const std::size_t off = row * N;
                    int t0 = N, t1 = -1;
                    if (inside) {
                        t0 = lo[d - 1];
                        t1 = hi[d - 1];
                        std::fill(tmp.begin() + t0, tmp.begin() + t1 + 1, 0.0);
                        for (std::size_t c = 0; c < delta.size(); ++c) {
                            const double cw = sm.corner_weight[c];
                            const double* src = values.data() + (static_cast<std::ptrdiff_t>(off) + sm.base + delta[c]);
                            for (int t = t0; t <= t1; ++t) tmp[t] += cw * src[t];
                        }
                        for (int t = t0; t <= t1; ++t) mean[off + t] += tmp[t];
                    }
                    for (int t = 0; t < N; ++t) {
                        if (t >= t0 && t <= t1) continue;
                        node[d - 1] = t;
                        mean[off + t] += interpolate(spec, values, node.data(), sm);
                    }
                }
            }
            const bool shell_end = j + 1 == rule.rho.size() || rule.shell[j + 1] != rule.shell[j];
            const double den = shell_end ? denom[rule.shell[j]] : 1.0;
            for (std::size_t i = first; i < last; ++i) {
                acc[i] += rule.weight[j] * mean[i] * dir_norm;
                if (shell_end) out[i] = std::max(out[i], acc[i] / den);
            }
        }
    });
    return from_real(spec, out);
}

namespace {

double plane_average(const GridSpec& spec, std::span<const double> values, const int* node,
                     const RotationMatrix& theta, const std::vector<std::vector<double>>& dirs, double r,
                     int radial_nodes)
{
    const QuadratureRule g = gauss_legendre(radial_nodes, 0.0, r);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < radial_nodes; ++j) {
        double w = g.weights[j] * std::pow(g.nodes[j], spec.d - 1);
        double mean = 0.0;
        for (const auto& dir : dirs)
            mean += interpolate(spec, values, node, make_sample(spec, plane_offset(theta, dir, g.nodes[j])));
        num += w * mean / static_cast<double>(dirs.size());
        den += w;
    }
    return num / den;
}

} // namespace

McEstimate rotation_average_check(const GridFunction& f, const DescentSplit& split, double r, std::size_t node,
                                  int n_mc, std::uint64_t seed, const DescentOptions& options)
{
    const GridSpec& spec = f.spec();
    if (split.d != spec.d) throw std::invalid_argument("dimension mismatch");
    if (n_mc < 1) throw std::invalid_argument("need at least one rotation");
    std::vector<int> idx(spec.d);
    std::vector<double> x(spec.d);
    unravel(spec, node, idx);
    node_coordinates(spec, node, x);
    for (double c : x)
        if (c - r < -spec.L || c + r > spec.L) throw std::domain_error("ball leaves the cube");

    const std::vector<double> values = f.abs();
    const std::int64_t T = detail::ball_threshold(r, spec.h);
    const int reach = static_cast<int>(std::floor(std::sqrt(static_cast<double>(T))));
    double sum = 0.0, count = 0.0;
    std::vector<int> o(spec.d, -reach);
    for (;;) {
        std::int64_t q = 0;
        for (int v : o) q += static_cast<std::int64_t>(v) * v;
        if (q <= T) {
            std::size_t flat = 0;
            for (int a = 0; a < spec.d; ++a) flat = flat * spec.N + (idx[a] + o[a]);
            sum += values[flat];
            count += 1.0;
        }
        int a = spec.d - 1;
        while (a >= 0 && ++o[a] > reach) o[a--] = -reach;
        if (a < 0) break;
    }

    const auto dirs = direction_set(split.d_prime, options);
    const int radial_nodes = 2 * options.radial_nodes;
    std::vector<double> draws(n_mc);
    parallel_for(static_cast<std::size_t>(n_mc), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            RotationMatrix theta = haar_rotation(spec.d, derive_seed(seed, i));
            draws[i] = plane_average(spec, values, idx.data(), theta, dirs, r, radial_nodes);
        }
    });
    double mean = 0.0;
    for (double v : draws) mean += v;
    mean /= n_mc;
    return McEstimate{sum / count, mean, batch_stderr(draws)};
}

McEstimate sphere_identity_check(const SphereFunction& f1, const DescentSplit& split, int n_mc,
                                 std::uint64_t seed, const DescentOptions& options)
{
    if (n_mc < 1) throw std::invalid_argument("need at least one draw");
    const int d = split.d;
    Gaussian g(derive_seed(seed ^ 0x5a5a5a5a5a5a5a5aULL, 0));
    std::vector<double> direct(n_mc);
    for (int i = 0; i < n_mc; ++i) direct[i] = f1(random_direction(g, d));

    const auto dirs = direction_set(split.d_prime, options);
    std::vector<double> draws(n_mc);
    for (int i = 0; i < n_mc; ++i) {
        RotationMatrix theta = haar_rotation(d, derive_seed(seed, i));
        double acc = 0.0;
        for (const auto& w : dirs) acc += f1(plane_offset(theta, w, 1.0));
        draws[i] = acc / static_cast<double>(dirs.size());
    }
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n_mc; ++i) {
        lhs += direct[i];
        rhs += draws[i];
    }
    const double se_l = batch_stderr(direct), se_r = batch_stderr(draws);
    return McEstimate{lhs / n_mc, rhs / n_mc, std::sqrt(se_l * se_l + se_r * se_r)};
}

DominationResult lemma2_domination(const GridFunction& f, const DescentSplit& split, const RadiiSet& R, int n_mc,
                                   std::uint64_t seed, const DescentOptions& options)
{
    if (n_mc < 1) throw std::invalid_argument("need at least one rotation");
    const GridSpec& spec = f.spec();
    const std::size_t B = std::min(16, n_mc);
    std::vector<std::vector<double>> batch(B, std::vector<double>(spec.size(), 0.0));
    std::vector<int> batch_size(B, 0);
    for (int i = 0; i < n_mc; ++i) {
        const std::size_t b = static_cast<std::size_t>(i) * B / n_mc;
        GridFunction m = descent_maximal(f, haar_rotation(spec.d, derive_seed(seed, i)), split, R, options);
        for (std::size_t j = 0; j < m.size(); ++j) batch[b][j] += m[j].real();
        ++batch_size[b];
    }
    std::vector<double> mean(spec.size(), 0.0), se(spec.size(), 0.0), means(B);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        double total = 0.0;
        for (std::size_t b = 0; b < B; ++b) {
            total += batch[b][j];
            means[b] = batch[b][j] / batch_size[b];
        }
        mean[j] = total / n_mc;
        if (B >= 2) {
            double mu = 0.0, var = 0.0;
            for (double m : means) mu += m;
            mu /= B;
            for (double m : means) var += (m - mu) * (m - mu);
            se[j] = std::sqrt(var / (B - 1.0) / B);
        }
    }
    return DominationResult{from_real(spec, mean), from_real(spec, se)};
}

} // namespace maxop
