#include "radial_transform.hpp"

#include "maxop/multiplier.hpp"
#include "maxop/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace maxop::detail {

namespace {

constexpr double pi = std::numbers::pi;

// Ten-point Lagrange interpolation on a uniform table of an even function,
// zero past the end of the table.
double interpolate_even(const std::vector<double>& table, double step, double x)
{
    constexpr int width = 10;
    static constexpr double binom[width] = {1, 9, 36, 84, 126, 126, 84, 36, 9, 1};
    const double t = std::abs(x) / step;
    const double j = std::floor(t);
    const long base = static_cast<long>(j) - width / 2 + 1;
    const long n = static_cast<long>(table.size());
    auto value = [&](long i) {
        i = std::labs(i);
        return i < n ? table[i] : 0.0;
    };
    if (t == j) return value(static_cast<long>(j));
    double num = 0.0, den = 0.0;
    for (int k = 0; k < width; ++k) {
        double w = ((k % 2) ? -binom[k] : binom[k]) / (t - static_cast<double>(base + k));
        num += w * value(base + k);
        den += w;
    }
    return num / den;
}

} // namespace

const SphereRule& sphere_rule(int d, int n)
{
    static std::mutex lock;
    static std::map<std::pair<int, int>, std::unique_ptr<SphereRule>> cache;
    std::lock_guard guard(lock);
    auto& slot = cache[{d, n}];
    if (slot) return *slot;
    SphereRule r{std::vector<double>(n), std::vector<double>(n)};
    if (d == 2) {
        for (int i = 0; i < n; ++i) {
            r.t[i] = std::cos((2.0 * i + 1.0) * pi / (2.0 * n));
            r.w[i] = 1.0 / n;
        }
    } else {
        const QuadratureRule& g = gauss_legendre(n);
        const double c = sphere_weight_constant(d);
        for (int i = 0; i < n; ++i) {
            double theta = 0.5 * pi * (1.0 + g.nodes[i]);
            r.t[i] = std::cos(theta);
            r.w[i] = c * 0.5 * pi * g.weights[i] * std::pow(std::sin(theta), d - 2);
        }
    }
    slot = std::make_unique<SphereRule>(std::move(r));
    return *slot;
}

RadialTransform::RadialTransform(const std::function<double(double)>& psi, double lo, double hi, int d,
                                 double u_max)
{
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(hi > lo) || lo < 0.0 || !std::isfinite(hi)) throw std::invalid_argument("profile needs compact support");
    step_ = 1.0 / (128.0 * hi);

    // G(w) = int psi(s) s^{d-1} cos(2 pi w s) ds on a uniform w grid, by
    // composite Gauss-Legendre in s.
    constexpr int per_panel = 16;
    const int panels = static_cast<int>(std::ceil((hi - lo) * 32.0));
    const QuadratureRule& g = gauss_legendre(per_panel);
    std::vector<double> s_nodes, s_weights;
    for (int p = 0; p < panels; ++p) {
        double a = lo + (hi - lo) * p / panels, b = lo + (hi - lo) * (p + 1) / panels;
        for (int i = 0; i < per_panel; ++i) {
            double s = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i];
            double w = 0.5 * (b - a) * g.weights[i] * psi(s) * std::pow(s, d - 1);
            if (w != 0.0) {
                s_nodes.push_back(s);
                s_weights.push_back(w);
            }
        }
    }
    const long n_table = static_cast<long>(std::ceil(u_max / step_)) + 1;
    std::vector<double> G(n_table + 16);
    for (std::size_t j = 0; j < G.size(); ++j) {
        double w = static_cast<double>(j) * step_;
        double acc = 0.0;
        for (std::size_t i = 0; i < s_nodes.size(); ++i) acc += s_weights[i] * std::cos(2.0 * pi * w * s_nodes[i]);
        G[j] = acc;
    }

    table_.resize(n_table);
    if (d == 1) {
        for (long i = 0; i < n_table; ++i) table_[i] = 2.0 * G[i];
        return;
    }
    // psi^v(u) = |S^{d-1}| c_d int G(u t) (1-t^2)^{(d-3)/2} dt.
    const double area = sphere_area(d);
    for (long i = 0; i < n_table; ++i) {
        const double u = static_cast<double>(i) * step_;
        int n = 64;
        while (n < 64 + 2.0 * pi * hi * u) n += 64;
        const SphereRule& rule = sphere_rule(d, n);
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += rule.w[k] * interpolate_even(G, step_, u * rule.t[k]);
        table_[i] = area * acc;
    }
}

double RadialTransform::operator()(double u) const { return interpolate_even(table_, step_, u); }

const RadialTransform& bump_transform(int d, int base)
{
    static std::mutex lock;
    static std::map<std::pair<int, int>, std::unique_ptr<RadialTransform>> cache;
    std::lock_guard guard(lock);
    auto& slot = cache[{d, base}];
    if (!slot) {
        const int l = base;
        RadialProfile p = bump(l);
        slot = std::make_unique<RadialTransform>([l](double s) { return bump_value(l, s); }, p.lo, p.hi, d, 64.0);
    }
    return *slot;
}

} // namespace maxop::detail
