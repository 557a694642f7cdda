#include "doctest.h"

#include "maxop/grid.hpp"

#include <cmath>
#include <random>

using namespace maxop;

namespace {

GridFunction random_function(const GridSpec& spec, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<complex> v(spec.size());
    for (auto& z : v) z = u(rng);
    return GridFunction(spec, std::move(v));
}

double max_abs(const GridFunction& f)
{
    double m = 0.0;
    for (const auto& z : f.values()) m = std::max(m, std::abs(z));
    return m;
}

} // namespace

TEST_CASE("make_grid spacing and preconditions")
{
    CHECK(make_grid(1, 1.0, 4).h == 0.5);
    CHECK(make_grid(3, 4.0, 64).h == 0.125);
    CHECK(make_grid(3, 4.0, 64).size() == 64u * 64u * 64u);
    CHECK_THROWS_AS(make_grid(2, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 1.0, 2), std::invalid_argument);
}

TEST_CASE("sample hits cell centers")
{
    const GridSpec spec = make_grid(1, 1.0, 4);
    const auto f = sample(spec, [](std::span<const double> x) { return x[0]; });
    const double expect[] = {-0.75, -0.25, 0.25, 0.75};
    for (int i = 0; i < 4; ++i) CHECK(f[i].real() == expect[i]);

    const auto one = sample(make_grid(2, 2.0, 6), [](std::span<const double>) { return 1.0; });
    for (const auto& z : one.values()) CHECK(z == complex(1.0));
}

TEST_CASE("gaussian samples are symmetric under index reversal")
{
    const GridSpec spec = make_grid(2, 2.0, 8);
    const auto f = sample(spec, [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); });
    std::vector<int> idx(2), mirror(2);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        unravel(spec, i, idx);
        mirror = {spec.N - 1 - idx[0], spec.N - 1 - idx[1]};
        CHECK(f[i] == f[ravel(spec, mirror)]);
        mirror = {idx[1], idx[0]};
        CHECK(f[i] == f[ravel(spec, mirror)]);
    }
}

TEST_CASE("sample rejects non-finite values and is deterministic")
{
    const GridSpec spec = make_grid(1, 1.0, 4);
    CHECK_THROWS_AS(sample(spec, [](std::span<const double> x) { return 1.0 / (x[0] - 0.25); }), std::domain_error);
    const Field g = [](std::span<const double> x) { return std::sin(3.0 * x[0]) + x[1] * x[1]; };
    const GridSpec s2 = make_grid(2, 1.5, 10);
    const auto a = sample(s2, g), b = sample(s2, g);
    for (std::size_t i = 0; i < s2.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("ravel and unravel are inverse, last axis fastest")
{
    const GridSpec spec = make_grid(3, 1.0, 4);
    std::vector<int> idx(3);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        unravel(spec, i, idx);
        CHECK(ravel(spec, idx) == i);
    }
    unravel(spec, 1, idx);
    CHECK(idx == std::vector<int>{0, 0, 1});
}

TEST_CASE("transform roundtrip and Plancherel")
{
    for (int d : {1, 2, 3}) {
        const GridSpec spec = make_grid(d, 1.5, d == 3 ? 8 : 16);
        const auto f = random_function(spec, 7 + d);
        const auto fhat = forward_transform(f);
        CHECK(fhat.domain() == Domain::frequency);
        const auto back = inverse_transform(fhat);
        double err = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
        CHECK(err <= 1e-12 * max_abs(f));

        // two-sided direct sums, independent of the library norms
        double ps = 0.0, fs = 0.0;
        for (const auto& z : f.values()) ps += std::norm(z);
        for (const auto& z : fhat.values()) fs += std::norm(z);
        ps *= std::pow(spec.h, d);
        fs *= std::pow(2.0 * spec.L, -d);
        CHECK(std::abs(std::sqrt(ps) - std::sqrt(fs)) <= 1e-12 * std::sqrt(ps));
        CHECK(std::abs(physical_l2(f) - frequency_l2(fhat)) <= 1e-12 * physical_l2(f));
    }
}

TEST_CASE("impulse has flat spectrum")
{
    const GridSpec spec = make_grid(2, 1.0, 8);
    GridFunction delta(spec);
    const int mid[] = {4, 4};
    delta[ravel(spec, mid)] = 1.0;
    const auto fhat = forward_transform(delta);
    const double ref = std::abs(fhat[0]);
    CHECK(ref > 0.0);
    for (const auto& z : fhat.values()) CHECK(std::abs(z) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("transforms check the domain tag")
{
    const GridSpec spec = make_grid(1, 1.0, 4);
    const GridFunction f(spec);
    CHECK_THROWS_AS(inverse_transform(f), std::invalid_argument);
    CHECK_THROWS_AS(forward_transform(forward_transform(f)), std::invalid_argument);
}

TEST_CASE("vector fields need a shared grid")
{
    CHECK_THROWS_AS(VectorField({}), std::invalid_argument);
    const GridFunction a(make_grid(1, 1.0, 4)), b(make_grid(1, 1.0, 6));
    CHECK_THROWS_AS(VectorField({a, b}), std::invalid_argument);
    CHECK(VectorField({a, a}).size() == 2);
}
