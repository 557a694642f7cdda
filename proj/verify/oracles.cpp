#include "oracles.hpp"

#include "maxop/families.hpp"
#include "maxop/multiplier.hpp"
#include "maxop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxop::oracle {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<int> index_of(std::size_t flat, int d, int N)
{
    std::vector<int> idx(d);
    for (int a = d - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % N);
        flat /= N;
    }
    return idx;
}

long long threshold(double r, double h)
{
    return static_cast<long long>(std::floor((r / h) * (r / h) * (1.0 + 1e-12)));
}

double lattice_ball_count(int d, long long T)
{
    const int reach = static_cast<int>(std::sqrt(static_cast<double>(T))) + 1;
    std::vector<int> o(d, -reach);
    double count = 0.0;
    for (;;) {
        long long q = 0;
        for (int v : o) q += static_cast<long long>(v) * v;
        if (q <= T) count += 1.0;
        int a = d - 1;
        while (a >= 0 && ++o[a] > reach) o[a--] = -reach;
        if (a < 0) return count;
    }
}

// Composite Gauss-Legendre on [a, b].
double integrate(const std::function<double(double)>& g, double a, double b, int panels)
{
    const QuadratureRule& rule = gauss_legendre(16);
    const double w = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += 0.5 * w * rule.weights[i] * g(lo + 0.5 * w * (rule.nodes[i] + 1.0));
    }
    return acc;
}

} // namespace

std::vector<double> hl_maximal(const GridFunction& f, const RadiiSet& R)
{
    const GridSpec& s = f.spec();
    const std::size_t n = s.size();
    std::vector<double> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        const auto xi = index_of(x, s.d, s.N);
        double best = std::abs(f[x]);
        for (double r : R.radii()) {
            const long long T = threshold(r, s.h);
            double sum = 0.0;
            for (std::size_t y = 0; y < n; ++y) {
                const auto yi = index_of(y, s.d, s.N);
                long long q = 0;
                for (int a = 0; a < s.d; ++a) q += static_cast<long long>(yi[a] - xi[a]) * (yi[a] - xi[a]);
                if (q <= T) sum += std::abs(f[y]);
            }
            best = std::max(best, sum / lattice_ball_count(s.d, T));
        }
        out[x] = best;
    }
    return out;
}

std::vector<double> grushin_maximal(const GrushinFunction& f, const RadiiSet& R)
{
    const GrushinGrid& g = f.grid;
    const int d = g.d;
    const std::size_t nx = g.x_size();
    auto coords = [&](std::size_t ix) {
        auto idx = index_of(ix, d, g.Nx);
        std::vector<double> c(d);
        for (int a = 0; a < d; ++a) c[a] = g.x_node(idx[a]);
        return c;
    };
    auto dot = [d](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<double> out(g.size());
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const auto x = coords(ix);
        const auto xidx = index_of(ix, d, g.Nx);
        const double xx = dot(x, x);
        for (int iu = 0; iu < g.Nu; ++iu) {
            double best = std::abs(f.values[ix * g.Nu + iu]);
            for (double r : R.radii()) {
                double sum = 0.0;
                for (std::size_t iy = 0; iy < nx; ++iy) {
                    const auto y = coords(iy);
                    const double yy = dot(y, y), xy = dot(x, y);
                    for (int ju = 0; ju < g.Nu; ++ju)
                        if (in_koranyi_ball(koranyi_gauge(xx, yy, xy, std::abs(ju - iu) * g.hu), r))
                            sum += std::abs(f.values[iy * g.Nu + ju]);
                }
                // Count over the unbounded lattice: every x' within r of x
                // and every u offset up to the analytic reach of the ball.
                const int reach = static_cast<int>(r / g.hx) + 2;
                const double xn = std::sqrt(xx);
                const int ureach = static_cast<int>(0.5 * r * std::sqrt(r * r + (2 * xn + r) * (2 * xn + r)) / g.hu) + 2;
                double count = 0.0;
                std::vector<int> o(d, -reach);
                std::vector<double> y(d);
                for (;;) {
                    for (int a = 0; a < d; ++a) y[a] = g.x_node(xidx[a] + o[a]);
                    const double yy = dot(y, y), xy = dot(x, y);
                    for (int j = -ureach; j <= ureach; ++j)
                        if (in_koranyi_ball(koranyi_gauge(xx, yy, xy, std::abs(j) * g.hu), r)) count += 1.0;
                    int a = d - 1;
                    while (a >= 0 && ++o[a] > reach) o[a--] = -reach;
                    if (a < 0) break;
                }
                best = std::max(best, sum / count);
            }
            out[ix * g.Nu + iu] = best;
        }
    }
    return out;
}

std::vector<double> lq_pointwise(const VectorField& F, double q)
{
    std::vector<double> out(F.spec().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (const auto& f : F.members()) s += std::pow(std::abs(f[i]), q);
        out[i] = std::pow(s, 1.0 / q);
    }
    return out;
}

double mixed_norm(const VectorField& F, double p, double q)
{
    const auto g = lq_pointwise(F, q);
    if (std::isinf(p)) return *std::max_element(g.begin(), g.end());
    double s = 0.0;
    for (double v : g) s += std::pow(v, p);
    return std::pow(s * F.spec().cell_volume(), 1.0 / p);
}

double bump_cosine_transform(int l, double w)
{
    const double lo = l == 0 ? 0.0 : std::ldexp(1.0, l - 1), hi = std::ldexp(1.0, l + 1);
    const int panels = 64 * static_cast<int>(std::ceil((hi - lo) * (1.0 + std::abs(w))));
    return integrate([&](double s) { return bump_value(l, s) * std::cos(2.0 * pi * w * s); }, lo, hi, panels);
}

double dyadic_kernel_3d(int l, double rho)
{
    if (!(rho > 0.0)) throw std::invalid_argument("closed form needs rho > 0");
    return (bump_cosine_transform(l, rho - 1.0) - bump_cosine_transform(l, rho + 1.0)) / (2.0 * pi * rho);
}

namespace {

// Mean of f1 over the sphere of radius r centered at distance rho.
double remark_sphere_mean(int d, double rho, double r)
{
    if (d == 3) {
        // (1 / (2 rho r)) int_{|rho - r|}^{rho + r} g(s) s ds
        const double a = std::abs(rho - r), b = std::min(rho + r, 1.0);
        if (a >= b) return 0.0;
        return integrate([](double s) { return remark_bump_profile(s) * s; }, a, b, 64) / (2.0 * rho * r);
    }
    const double c = std::tgamma(0.5 * d) / (std::sqrt(pi) * std::tgamma(0.5 * (d - 1)));
    return c * integrate(
                   [&](double th) {
                       const double t = std::cos(th);
                       const double s = std::sqrt(std::max(0.0, rho * rho + r * r + 2.0 * rho * r * t));
                       return remark_bump_profile(s) * std::pow(std::sin(th), d - 2);
                   },
                   0.0, pi, 256);
}

} // namespace

double remark_spherical_maximal(int d, double rho)
{
    double best = 0.0, arg = rho;
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        const double r = std::max(1e-6, rho - 1.0) + (2.0 * i) / n;
        const double v = remark_sphere_mean(d, rho, r);
        if (v > best) {
            best = v;
            arg = r;
        }
    }
    double lo = std::max(1e-6, arg - 2.0 / n), hi = arg + 2.0 / n;
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (remark_sphere_mean(d, rho, m1) < remark_sphere_mean(d, rho, m2)) lo = m1;
        else hi = m2;
    }
    return std::max(best, remark_sphere_mean(d, rho, 0.5 * (lo + hi)));
}

} // namespace maxop::oracle
