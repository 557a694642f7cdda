#include "maxop/multiplier.hpp"

#include "maxop/quadrature.hpp"
#include "radial_transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace maxop {

namespace {

constexpr double pi = std::numbers::pi;

using detail::SphereRule;
using detail::sphere_rule;

template <class Integrand>
double sphere_integral(int d, double s, Integrand&& g)
{
    auto at = [&](int n) {
        const SphereRule& r = sphere_rule(d, n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += r.w[i] * g(r.t[i]);
        return acc;
    };
    int n = 64;
    while (n < 2.0 * pi * s + 32.0) n *= 2;
    double prev = at(n);
    for (;;) {
        n *= 2;
        double next = at(n);
        if (std::abs(next - prev) <= 1e-10 || n >= (1 << 18)) return next;
        prev = next;
    }
}

} // namespace

RadialProfile constant_profile(double c)
{
    return RadialProfile{[c](double) { return c; }, 0.0, std::numeric_limits<double>::infinity(), std::abs(c),
                         "constant"};
}

double sphere_weight_constant(int d)
{
    if (d < 2) throw std::invalid_argument("sphere weight needs d >= 2");
    return std::tgamma(0.5 * d) / (std::sqrt(pi) * std::tgamma(0.5 * (d - 1)));
}

double sphere_area(int d) { return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d); }

double surface_multiplier_value(int d, double s)
{
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    // S^0 = {-1, 1}
    if (d == 1) return std::cos(2.0 * pi * s);
    s = std::abs(s);
    return sphere_integral(d, s, [s](double t) { return std::cos(2.0 * pi * s * t); });
}

double surface_multiplier_derivative(int d, double s)
{
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d == 1) return -2.0 * pi * std::sin(2.0 * pi * s);
    const double sign = s < 0 ? -1.0 : 1.0;
    s = std::abs(s);
    return sign * -2.0 * pi * sphere_integral(d, s, [s](double t) { return t * std::sin(2.0 * pi * s * t); });
}

RadialProfile surface_multiplier(int d)
{
    if (d < 2) throw std::invalid_argument("surface multiplier needs d >= 2");
    return RadialProfile{[d](double s) { return surface_multiplier_value(d, s); }, 0.0,
                         std::numeric_limits<double>::infinity(), 1.0, "m"};
}

double smooth_step(double t)
{
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

double smooth_step_derivative(double t)
{
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double h = smooth_step(t);
    return h * (1.0 - h) * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
}

namespace {

double phi0(double s) { return 1.0 - smooth_step(std::abs(s) - 1.0); }
double phi0_derivative(double s) { return -smooth_step_derivative(s - 1.0); }

} // namespace

double bump_value(int l, double s)
{
    if (l < 0) throw std::invalid_argument("dyadic index must be nonnegative");
    if (l == 0) return phi0(s);
    return phi0(std::ldexp(s, -l)) - phi0(std::ldexp(s, 1 - l));
}

double bump_derivative(int l, double s)
{
    if (l < 0) throw std::invalid_argument("dyadic index must be nonnegative");
    if (l == 0) return phi0_derivative(s);
    return std::ldexp(phi0_derivative(std::ldexp(s, -l)), -l) -
           std::ldexp(phi0_derivative(std::ldexp(s, 1 - l)), 1 - l);
}

RadialProfile bump(int l)
{
    if (l < 0) throw std::invalid_argument("dyadic index must be nonnegative");
    double lo = l == 0 ? 0.0 : std::ldexp(1.0, l - 1);
    double hi = std::ldexp(1.0, l + 1);
    return RadialProfile{[l](double s) { return bump_value(l, s); }, lo, hi, 1.0, "phi_" + std::to_string(l)};
}

double sup_abs(const std::function<double(double)>& g, double a, double b, double step)
{
    const int n = std::max(2, static_cast<int>(std::ceil((b - a) / step)) + 1);
    const double ds = (b - a) / (n - 1);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::abs(g(a + i * ds));

    std::vector<int> peaks;
    for (int i = 0; i < n; ++i) {
        bool left = i == 0 || v[i] >= v[i - 1];
        bool right = i == n - 1 || v[i] >= v[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return v[x] > v[y]; });
    if (peaks.size() > 6) peaks.resize(6);

    double best = *std::max_element(v.begin(), v.end());
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int p : peaks) {
        double lo = a + std::max(0, p - 1) * ds, hi = a + std::min(n - 1, p + 1) * ds;
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = std::abs(g(x1)), f2 = std::abs(g(x2));
        for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = std::abs(g(x1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = std::abs(g(x2));
            }
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

RadialProfile dyadic_piece(int d, int l)
{
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    RadialProfile base = bump(l);
    auto eval = [d, l](double s) {
        double phi = bump_value(l, s);
        return phi == 0.0 ? 0.0 : phi * surface_multiplier_value(d, s);
    };
    double bound = sup_abs(eval, base.lo, base.hi, 1.0 / 64.0);
    return RadialProfile{eval, base.lo, base.hi, bound, "m_" + std::to_string(l)};
}

RadialProfile tilde_piece(int d, int l)
{
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    RadialProfile base = bump(l);
    auto eval = [d, l](double s) {
        double phi = bump_value(l, s), dphi = bump_derivative(l, s);
        if (phi == 0.0 && dphi == 0.0) return 0.0;
        return s * (dphi * surface_multiplier_value(d, s) + phi * surface_multiplier_derivative(d, s));
    };
    return RadialProfile{eval, base.lo, base.hi, std::nullopt, "m~_" + std::to_string(l)};
}

namespace {

// Squared centered frequency index |k|^2 at every flat position.
std::vector<std::int64_t> frequency_index_sq(const GridSpec& spec)
{
    std::vector<std::int64_t> out(spec.size());
    std::vector<int> idx(spec.d, 0);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::int64_t q = 0;
        for (int a = 0; a < spec.d; ++a) {
            std::int64_t k = idx[a] - spec.N / 2;
            q += k * k;
        }
        out[flat] = q;
        for (int a = spec.d - 1; a >= 0; --a) {
            if (++idx[a] < spec.N) break;
            idx[a] = 0;
        }
    }
    return out;
}

// omega(r |xi|) for every |k|^2 that occurs.
std::vector<double> multiplier_table(const RadialProfile& omega, double r, const GridSpec& spec,
                                     const std::vector<std::int64_t>& ksq)
{
    std::int64_t kmax = *std::max_element(ksq.begin(), ksq.end());
    std::vector<char> present(kmax + 1, 0);
    for (auto q : ksq) present[q] = 1;
    std::vector<double> table(kmax + 1, 0.0);
    for (std::int64_t q = 0; q <= kmax; ++q)
        if (present[q]) table[q] = omega(r * std::sqrt(static_cast<double>(q)) / (2.0 * spec.L));
    return table;
}

GridFunction multiply_and_invert(const GridFunction& fhat, const std::vector<double>& table,
                                 const std::vector<std::int64_t>& ksq, bool real_input)
{
    GridFunction g(fhat.spec(), Domain::frequency);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = fhat[i] * table[ksq[i]];
    GridFunction out = inverse_transform(g);
    if (real_input)
        for (auto& z : out.values()) z = z.real();
    return out;
}

void require_physical(const GridFunction& f)
{
    if (f.domain() != Domain::physical) throw std::invalid_argument("multipliers act on physical data");
}

} // namespace

SpectralField::SpectralField(const GridFunction& f)
{
    require_physical(f);
    spectrum_ = forward_transform(f);
    index_sq_ = frequency_index_sq(f.spec());
    real_input_ = f.is_real();
}

GridFunction SpectralField::apply(const RadialProfile& omega, double r) const
{
    if (!(r > 0.0)) throw std::invalid_argument("dilation must be positive");
    return multiply_and_invert(spectrum_, multiplier_table(omega, r, spectrum_.spec(), index_sq_), index_sq_,
                               real_input_);
}

GridFunction apply_multiplier(const GridFunction& f, const RadialProfile& omega, double r)
{
    return SpectralField(f).apply(omega, r);
}

std::vector<GridFunction> maximal_multiplier(const VectorField& F, const RadialProfile& omega, const RadiiSet& R)
{
    std::vector<SpectralField> spectra;
    std::vector<GridFunction> out;
    for (const auto& f : F.members()) {
        spectra.emplace_back(f);
        out.emplace_back(F.spec());
    }
    for (double r : R.radii()) {
        for (std::size_t m = 0; m < F.size(); ++m) {
            GridFunction g = spectra[m].apply(omega, r);
            for (std::size_t i = 0; i < g.size(); ++i) out[m][i] = std::max(out[m][i].real(), std::abs(g[i]));
        }
    }
    return out;
}

GridFunction maximal_multiplier(const GridFunction& f, const RadialProfile& omega, const RadiiSet& R)
{
    return std::move(maximal_multiplier(VectorField({f}), omega, R).front());
}

std::vector<GridFunction> spherical_maximal(const VectorField& F, int d, const RadiiSet& R)
{
    if (d != F.spec().d) throw std::invalid_argument("dimension does not match the grid");
    for (const auto& f : F.members())
        if (!f.is_real()) throw std::invalid_argument("spherical maximal function expects real input");
    return maximal_multiplier(F, surface_multiplier(d), R);
}

GridFunction spherical_maximal(const GridFunction& f, int d, const RadiiSet& R)
{
    return std::move(spherical_maximal(VectorField({f}), d, R).front());
}

GridFunction kernel(const RadialProfile& omega, const GridSpec& spec)
{
    const double extent = spec.N / (4.0 * spec.L);
    if (omega.hi > extent * (1.0 + 1e-12))
        throw std::domain_error("profile support reaches " + std::to_string(omega.hi) +
                                " beyond the frequency extent " + std::to_string(extent));
    const auto ksq = frequency_index_sq(spec);
    const auto table = multiplier_table(omega, 1.0, spec, ksq);
    GridFunction w(spec, Domain::frequency);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = table[ksq[i]];
    GridFunction k = inverse_transform(w);
    for (auto& z : k.values()) z = z.real();
    return k;
}

RadialMajorant radial_majorant(const GridFunction& k)
{
    const GridSpec& spec = k.spec();
    std::vector<std::pair<double, double>> nodes(k.size());
    std::vector<double> x(spec.d);
    for (std::size_t i = 0; i < k.size(); ++i) {
        node_coordinates(spec, i, x);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        nodes[i] = {std::sqrt(r2), std::abs(k[i])};
    }
    std::sort(nodes.begin(), nodes.end());

    // Distinct radii ascending with the max of |k| over |x| >= radius.
    std::vector<double> radius, level;
    for (std::size_t i = 0; i < nodes.size();) {
        std::size_t j = i;
        double m = 0.0;
        while (j < nodes.size() && nodes[j].first == nodes[i].first) m = std::max(m, nodes[j++].second);
        radius.push_back(nodes[i].first);
        level.push_back(m);
        i = j;
    }
    for (std::size_t i = level.size() - 1; i-- > 0;) level[i] = std::max(level[i], level[i + 1]);

    double integral = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < radius.size(); ++i) {
        integral += level[i] * (std::pow(radius[i], spec.d) - std::pow(prev, spec.d));
        prev = radius[i];
    }
    integral *= sphere_area(spec.d) / spec.d;

    auto eval = [radius, level](double s) {
        auto it = std::lower_bound(radius.begin(), radius.end(), s);
        return it == radius.end() ? 0.0 : level[it - radius.begin()];
    };
    return RadialMajorant{RadialProfile{eval, 0.0, radius.back(), level.front(), "majorant"}, integral};
}

double bump_kernel(int l, int d, double u)
{
    if (l < 0) throw std::invalid_argument("dyadic index must be nonnegative");
    if (l == 0) return detail::bump_transform(d, 0)(u);
    const double scale = std::ldexp(1.0, l - 1);
    return std::pow(scale, d) * detail::bump_transform(d, 1)(scale * u);
}

double funk_hecke_kernel(int l, int d, double x_norm)
{
    if (d < 3) throw std::invalid_argument("Funk-Hecke kernel needs d >= 3");
    if (l < 0) throw std::invalid_argument("dyadic index must be nonnegative");
    const double rho = std::abs(x_norm);
    const double band = std::ldexp(1.0, l + 1);
    int n = 64;
    while (n < 64 + 4.0 * pi * band) n += 64;
    const SphereRule& rule = sphere_rule(d, n);
    const detail::RadialTransform& base = detail::bump_transform(d, l == 0 ? 0 : 1);
    const double scale = l == 0 ? 1.0 : std::ldexp(1.0, l - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double v2 = rho * rho + 1.0 - 2.0 * rho * rule.t[i];
        acc += rule.w[i] * base(scale * std::sqrt(std::max(0.0, v2)));
    }
    return std::pow(scale, d) * acc;
}

double radial_sphere_mean(const std::function<double(double)>& f, int d, double rho, double r)
{
    if (d < 2) throw std::invalid_argument("sphere means need d >= 2");
    // Composite rule in theta: integrands with compact support are only
    // C-infinity at the support edge.
    constexpr int panels = 64, per_panel = 16;
    const QuadratureRule& g = gauss_legendre(per_panel);
    const double c = sphere_weight_constant(d);
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = pi * p / panels, b = pi * (p + 1) / panels;
        for (int i = 0; i < per_panel; ++i) {
            double theta = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i];
            double w = 0.5 * (b - a) * g.weights[i];
            double s2 = rho * rho + r * r - 2.0 * rho * r * std::cos(theta);
            double weight = d == 2 ? 1.0 / pi : c * std::pow(std::sin(theta), d - 2);
            acc += w * weight * f(std::sqrt(std::max(0.0, s2)));
        }
    }
    return acc;
}

std::vector<DecayRow> decay_constants(int d, int l_max)
{
    if (d < 3) throw std::invalid_argument("decay constants need d >= 3");
    if (l_max < 2) throw std::invalid_argument("decay constants need l_max >= 2");
    std::vector<DecayRow> rows;
    for (int l = 1; l <= l_max; ++l) {
        const double lo = std::ldexp(1.0, l - 1), hi = std::ldexp(1.0, l + 1);
        auto ml = [d, l](double s) {
            double phi = bump_value(l, s);
            return phi == 0.0 ? 0.0 : phi * surface_multiplier_value(d, s);
        };
        const RadialProfile tl = tilde_piece(d, l);
        DecayRow row;
        row.l = l;
        row.c1 = sup_abs(ml, lo, hi, 1.0 / 32.0) * std::pow(2.0, l * (d - 1) / 2.0);
        row.c2 = sup_abs(tl.eval, lo, hi, 1.0 / 32.0) * std::pow(2.0, l * (d - 3) / 2.0);
        auto weighted = [d, l](double x) { return funk_hecke_kernel(l, d, x) * std::pow(1.0 + x, d + 1); };
        row.c3 = sup_abs(weighted, 0.0, 8.0, std::ldexp(1.0, -l) / 16.0) / std::ldexp(1.0, l);
        rows.push_back(row);
    }
    return rows;
}

void write_decay_csv(std::ostream& out, const std::vector<DecayRow>& rows)
{
    out << "l,c1,c2,c3\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.10g\n", r.l, r.c1, r.c2, r.c3);
        out << buf;
    }
}

} // namespace maxop
