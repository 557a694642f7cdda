#include "maxop/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace maxop {

Exponent::Exponent(double p) : p_(p)
{
    if (std::isinf(p) && p > 0) {
        infinite_ = true;
        return;
    }
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent must satisfy p > 1 or p = inf");
}

Exponent Exponent::infinity()
{
    Exponent e;
    e.infinite_ = true;
    return e;
}

double Exponent::value() const { return infinite_ ? std::numeric_limits<double>::infinity() : p_; }

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

void require_physical(const GridFunction& f)
{
    if (f.domain() != Domain::physical) throw std::invalid_argument("norms are taken on physical data");
}

} // namespace

double lp_norm(const GridFunction& f, Exponent p)
{
    require_physical(f);
    std::vector<double> a = f.abs();
    for (double v : a)
        if (!std::isfinite(v)) throw std::domain_error("non-finite value in norm");
    if (p.is_infinite()) return a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
    const double pv = p.value();
    for (double& v : a) v = std::pow(v, pv);
    return std::pow(pairwise_sum(a) * f.spec().cell_volume(), 1.0 / pv);
}

GridFunction lq_pointwise(const VectorField& F, Exponent q)
{
    if (q.is_infinite()) throw std::invalid_argument("pointwise lq reduction needs finite q");
    const double qv = q.value();
    GridFunction out(F.spec());
    std::vector<double> terms(F.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t n = 0; n < F.size(); ++n) terms[n] = std::pow(std::abs(F[n][i]), qv);
        out[i] = std::pow(pairwise_sum(terms), 1.0 / qv);
    }
    return out;
}

double mixed_norm(const VectorField& F, Exponent p, Exponent q)
{
    return lp_norm(lq_pointwise(F, q), p);
}

double level_measure(const GridFunction& g, double lambda)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("level must be positive");
    std::size_t count = 0;
    for (const auto& z : g.values())
        if (z.real() > lambda) ++count;
    return static_cast<double>(count) * g.spec().cell_volume();
}

} // namespace maxop
