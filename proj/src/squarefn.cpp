#include "maxop/squarefn.hpp"

#include "maxop/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxop {

TGrid log_tgrid(double lo, double hi, int n)
{
    if (!(lo > 0.0) || !(hi > lo) || n < 1) throw std::invalid_argument("t grid needs 0 < lo < hi and n >= 1");
    TGrid T;
    const double step = std::log(hi / lo) / n;
    for (int i = 0; i < n; ++i) {
        T.t.push_back(lo * std::exp((i + 0.5) * step));
        T.w.push_back(step);
    }
    T.lo = lo;
    T.hi = hi;
    return T;
}

namespace {

void require_annulus(const RadialProfile& omega)
{
    if (!omega.compact() || !(omega.lo > 0.0) || !(omega.hi > omega.lo))
        throw std::invalid_argument("square functions need a profile supported in an annulus 0 < a < b < inf");
}

} // namespace

TGrid make_tgrid(const RadialProfile& omega, const GridSpec& spec, int nodes)
{
    require_annulus(omega);
    const double s_min = 1.0 / (2.0 * spec.L);
    const double s_max = std::sqrt(static_cast<double>(spec.d)) * spec.N / (4.0 * spec.L);
    const double lo = omega.lo / s_max, hi = omega.hi / s_min;
    const double annulus = std::log(omega.hi / omega.lo), range = std::log(hi / lo);
    const int per_annulus = std::max(1, static_cast<int>(std::lround(nodes * annulus / range)));
    const double step = annulus / per_annulus;
    const int n = static_cast<int>(std::ceil(range / step - 1e-9));
    return log_tgrid(lo, lo * std::exp(n * step), n);
}

RadialProfile annulus_indicator(double r, double rho, double C)
{
    if (!(r > 0.0) || !(rho > 1.0)) throw std::invalid_argument("annulus needs r > 0 and rho > 1");
    const double a = r, b = rho * r;
    return RadialProfile{[a, b, C](double s) { return (s >= a && s <= b) ? C : 0.0; }, a, b, std::abs(C),
                         "annulus"};
}

std::vector<GridFunction> square_function(const VectorField& F, const RadialProfile& omega, const TGrid& T)
{
    require_annulus(omega);
    const GridSpec& spec = F.spec();
    std::vector<std::vector<double>> acc(F.size(), std::vector<double>(spec.size(), 0.0));
    std::vector<SpectralField> spectra;
    for (const auto& f : F.members()) spectra.emplace_back(f);
    for (std::size_t i = 0; i < T.t.size(); ++i) {
        for (std::size_t m = 0; m < F.size(); ++m) {
            GridFunction g = spectra[m].apply(omega, T.t[i]);
            for (std::size_t j = 0; j < g.size(); ++j) acc[m][j] += std::norm(g[j]) * T.w[i];
        }
    }
    std::vector<GridFunction> out;
    for (auto& a : acc) {
        for (double& v : a) v = std::sqrt(v);
        out.push_back(from_real(spec, a));
    }
    return out;
}

GridFunction square_function(const GridFunction& f, const RadialProfile& omega, const TGrid& T)
{
    return std::move(square_function(VectorField({f}), omega, T).front());
}

Prop2Result prop2_check(const VectorField& F, const RadialProfile& omega, int nodes)
{
    require_annulus(omega);
    if (!omega.sup_bound) throw std::invalid_argument("profile has no sup bound");
    const double C = *omega.sup_bound;
    constexpr int probes = 4096;
    for (int i = 0; i <= probes; ++i) {
        double s = 2.0 * omega.hi * i / probes;
        double v = std::abs(omega(s));
        bool inside = s >= omega.lo && s <= omega.hi;
        if (!inside && v > 1e-12) throw std::invalid_argument("profile is nonzero outside its declared support");
        if (v > C * (1.0 + 1e-9) + 1e-15) throw std::invalid_argument("profile exceeds its declared sup bound");
    }
    const TGrid T = make_tgrid(omega, F.spec(), nodes);
    VectorField G(square_function(F, omega, T));
    const Exponent two(2.0);
    return Prop2Result{mixed_norm(G, two, two),
                       C * std::sqrt(std::log(omega.hi / omega.lo)) * mixed_norm(F, two, two)};
}

} // namespace maxop
