#include "doctest.h"

#include "oracles.hpp"
#include "maxop/norms.hpp"

#include <cmath>
#include <random>

using namespace maxop;

namespace {

GridFunction constant(const GridSpec& spec, double c)
{
    return sample(spec, [c](std::span<const double>) { return c; });
}

GridFunction noise(const GridSpec& spec, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(spec.size());
    for (auto& x : v) x = g(rng);
    return from_real(spec, v);
}

VectorField scaled(const VectorField& F, double c)
{
    std::vector<GridFunction> out;
    for (const auto& f : F.members()) {
        std::vector<double> v = f.real_part();
        for (auto& x : v) x *= c;
        out.push_back(from_real(F.spec(), v));
    }
    return VectorField(out);
}

} // namespace

TEST_CASE("exponent validation")
{
    CHECK_THROWS_AS(Exponent(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Exponent(0.5), std::invalid_argument);
    CHECK(Exponent::infinity().is_infinite());
    CHECK(Exponent(1.5).value() == 1.5);
}

TEST_CASE("lp norm of constants")
{
    const GridSpec spec = make_grid(2, 1.0, 8);
    CHECK(lp_norm(constant(spec, 1.0), Exponent(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lp_norm(constant(spec, 1.0), Exponent::infinity()) == 1.0);
    CHECK(lp_norm(constant(spec, -3.0), Exponent::infinity()) == 3.0);
}

TEST_CASE("lp norm against plain re-summation")
{
    const GridSpec spec = make_grid(2, 2.0, 16);
    const auto f = noise(spec, 3);
    for (double p : {1.5, 2.0, 3.7}) {
        long double s = 0.0L;
        for (const auto& z : f.values()) s += std::pow(static_cast<long double>(std::abs(z)), p);
        const double ref = static_cast<double>(std::pow(s * std::pow(spec.h, 2), 1.0L / p));
        CHECK(lp_norm(f, Exponent(p)) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("pointwise lq reduction")
{
    const GridSpec spec = make_grid(1, 1.0, 8);
    const auto f = noise(spec, 5);
    const auto single = lq_pointwise(VectorField({f}), Exponent(3.0));
    for (std::size_t i = 0; i < spec.size(); ++i) CHECK(single[i].real() == doctest::Approx(std::abs(f[i])).epsilon(1e-14));

    const auto twice = lq_pointwise(VectorField({f, f}), Exponent(2.0));
    for (std::size_t i = 0; i < spec.size(); ++i)
        CHECK(twice[i].real() == doctest::Approx(std::sqrt(2.0) * std::abs(f[i])).epsilon(1e-14));

    const VectorField F({noise(spec, 1), noise(spec, 2), noise(spec, 3)});
    const auto ref = oracle::lq_pointwise(F, 1.7);
    const auto got = lq_pointwise(F, Exponent(1.7));
    for (std::size_t i = 0; i < spec.size(); ++i) CHECK(got[i].real() == doctest::Approx(ref[i]).epsilon(1e-12));

    CHECK_THROWS_AS(lq_pointwise(F, Exponent::infinity()), std::invalid_argument);
}

TEST_CASE("mixed norm")
{
    const GridSpec spec = make_grid(2, 1.0, 8);
    const auto f = noise(spec, 9);
    CHECK(mixed_norm(VectorField({f}), Exponent(3.0), Exponent(1.5)) ==
          doctest::Approx(lp_norm(f, Exponent(3.0))).epsilon(1e-13));

    const VectorField F({noise(spec, 1), noise(spec, 2), noise(spec, 4)});
    const double base = mixed_norm(F, Exponent(2.5), Exponent(1.5));
    CHECK(mixed_norm(scaled(F, -2.5), Exponent(2.5), Exponent(1.5)) == doctest::Approx(2.5 * base).epsilon(1e-13));
    CHECK(base == doctest::Approx(oracle::mixed_norm(F, 2.5, 1.5)).epsilon(1e-12));
    CHECK(mixed_norm(F, Exponent::infinity(), Exponent(2.0)) ==
          doctest::Approx(oracle::mixed_norm(F, INFINITY, 2.0)).epsilon(1e-12));
}

TEST_CASE("pairwise sum is exact on small integers")
{
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_sum(std::span<const double>()) == 0.0);
}

TEST_CASE("level measure")
{
    const GridSpec spec = make_grid(2, 1.5, 12);
    const auto one = constant(spec, 1.0);
    CHECK(level_measure(one, 0.5) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(level_measure(one, 2.0) == 0.0);
    CHECK_THROWS_AS(level_measure(one, 0.0), std::invalid_argument);

    // indicator of [-0.5, 0.5] x [0, 1]: 4 x 4 cells of side 0.25
    const auto box = sample(spec, [](std::span<const double> x) {
        return std::abs(x[0]) < 0.5 && x[1] > 0.0 && x[1] < 1.0 ? 1.0 : 0.0;
    });
    const double area = level_measure(box, 0.5);
    CHECK(std::abs(area - 1.0) <= 4.0 * spec.h);
    CHECK(area == doctest::Approx(1.0));
}
