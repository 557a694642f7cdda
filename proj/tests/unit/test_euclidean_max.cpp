#include "doctest.h"

#include "oracles.hpp"
#include "maxop/euclidean_max.hpp"

#include <cmath>
#include <random>

using namespace maxop;

namespace {

GridFunction noise(const GridSpec& spec, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(spec.size());
    for (auto& x : v) x = u(rng);
    return from_real(spec, v);
}

GridFunction ones(const GridSpec& spec)
{
    return sample(spec, [](std::span<const double>) { return 1.0; });
}

} // namespace

TEST_CASE("default radii")
{
    const GridSpec spec = make_grid(1, 1.0, 4);
    CHECK(default_radii(spec, 2).radii() == std::vector<double>{0.5, 2.0});
    const auto R3 = default_radii(spec, 3);
    CHECK(R3.radii()[1] == doctest::Approx(1.0).epsilon(1e-15));
    const auto R = default_radii(make_grid(3, 2.0, 16), 32);
    for (std::size_t i = 1; i < R.size(); ++i) CHECK(R.radii()[i] > R.radii()[i - 1]);
    CHECK_THROWS_AS(default_radii(spec, 1), std::invalid_argument);
    CHECK_THROWS_AS(RadiiSet({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(RadiiSet({}), std::invalid_argument);
}

TEST_CASE("constants are fixed points")
{
    for (int d : {1, 2, 3}) {
        const GridSpec spec = make_grid(d, 1.0, 8);
        const auto R = default_radii(spec, 8);
        for (BallMethod m : {BallMethod::direct, BallMethod::fft}) {
            const auto M = hl_maximal(ones(spec), R, m);
            for (const auto& z : M.values()) CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-12));
        }
        for (int k : {0, 1, 2}) {
            const auto W = weighted_maximal(ones(spec), k, R, BallMethod::direct);
            for (const auto& z : W.values()) CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-12));
        }
        const auto M1 = maximal_1d(ones(spec), d - 1, default_radii(make_grid(1, 1.0, 8), 8));
        for (const auto& z : M1.values()) CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact agreement with the brute-force oracle")
{
    for (int d : {1, 2})
        for (int N : {4, 6, 8}) {
            const GridSpec spec = make_grid(d, 1.0, N);
            const auto f = noise(spec, 100 * d + N);
            const auto R = default_radii(spec, 6);
            const auto ref = oracle::hl_maximal(f, R);
            const auto got = hl_maximal(f, R, BallMethod::direct);
            for (std::size_t i = 0; i < spec.size(); ++i) CHECK(got[i].real() == ref[i]);
        }
}

TEST_CASE("fft path agrees with the direct path")
{
    const GridSpec spec = make_grid(2, 2.0, 16);
    const auto f = noise(spec, 17);
    const auto R = default_radii(spec, 10);
    const auto a = hl_maximal(f, R, BallMethod::direct), b = hl_maximal(f, R, BallMethod::fft);
    for (std::size_t i = 0; i < spec.size(); ++i) CHECK(b[i].real() == doctest::Approx(a[i].real()).epsilon(1e-10));
}

TEST_CASE("domination of |f| and sublinearity")
{
    const GridSpec spec = make_grid(2, 1.5, 12);
    const auto R = default_radii(spec, 12);
    const auto f = noise(spec, 1), g = noise(spec, 2);
    std::vector<double> sum(spec.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f[i].real() + g[i].real();
    const auto Mf = hl_maximal(f, R), Mg = hl_maximal(g, R), Ms = hl_maximal(from_real(spec, sum), R);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        CHECK(Mf[i].real() >= std::abs(f[i]));
        CHECK(Ms[i].real() <= Mf[i].real() + Mg[i].real() + 1e-12);
    }
}

TEST_CASE("interval indicator seen from distance two")
{
    // Continuum value at x is 1/(x + 1), attained at r = x + 1.
    const GridSpec spec = make_grid(1, 4.0, 64);
    const auto f = sample(spec, [](std::span<const double> x) { return std::abs(x[0]) <= 1.0 ? 1.0 : 0.0; });
    std::vector<double> r;
    for (double s = spec.h; s <= 8.0; s += spec.h) r.push_back(s);
    const auto M = hl_maximal(f, RadiiSet(r));
    for (int i : {47, 48}) { // nodes 1.9375 and 2.0625
        const double x = spec.node(i);
        CHECK(std::abs(M[i].real() - 1.0 / (x + 1.0)) <= 2.0 * spec.h);
        CHECK(std::abs(M[i].real() - 1.0 / 3.0) <= 2.0 * spec.h);
    }
}

TEST_CASE("translation covariance away from the faces")
{
    const GridSpec spec = make_grid(2, 2.0, 16);
    const auto R = log_radii(spec.h, 0.75, 5);
    auto bump = [](double cx) {
        return [cx](std::span<const double> x) {
            const double s = (x[0] - cx) * (x[0] - cx) + x[1] * x[1];
            return s < 0.25 ? 1.0 - 4.0 * s : 0.0;
        };
    };
    const auto a = hl_maximal(sample(spec, bump(0.0)), R), b = hl_maximal(sample(spec, bump(spec.h)), R);
    std::vector<int> idx(2);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        unravel(spec, i, idx);
        if (idx[0] < 4 || idx[0] > 10 || idx[1] < 4 || idx[1] > 11) continue;
        const int shifted[] = {idx[0] + 1, idx[1]};
        CHECK(b[ravel(spec, shifted)].real() == doctest::Approx(a[i].real()).epsilon(1e-14));
    }
}

TEST_CASE("weighted operator with k = 0 is the ball operator")
{
    const GridSpec spec = make_grid(2, 1.0, 8);
    const auto f = noise(spec, 23);
    const auto R = default_radii(spec, 6);
    const auto a = hl_maximal(f, R, BallMethod::direct), b = weighted_maximal(f, 0, R, BallMethod::direct);
    for (std::size_t i = 0; i < spec.size(); ++i) CHECK(b[i].real() == doctest::Approx(a[i].real()).epsilon(1e-14));
    CHECK_THROWS_AS(weighted_maximal(f, -1, R), std::invalid_argument);
}

TEST_CASE("one-dimensional operator")
{
    const GridSpec spec = make_grid(1, 4.0, 64);
    GridFunction spike(spec);
    spike[32] = 1.0;
    std::vector<double> r;
    for (double s = spec.h; s <= 8.0; s += spec.h) r.push_back(s);
    const auto M = maximal_1d(spike, 0, RadiiSet(r));
    for (int k : {4, 8, 16}) {
        const double s = k * spec.h;
        CHECK(M[32 + k].real() == doctest::Approx(spec.h / (2.0 * s)).epsilon(spec.h / s));
    }
    CHECK_THROWS_AS(maximal_1d(spike, 1, RadiiSet(r)), std::invalid_argument);
}

TEST_CASE("fibers of the axis operator match the one-dimensional ball operator")
{
    const GridSpec plane = make_grid(2, 1.0, 8), line = make_grid(1, 1.0, 8);
    const auto f = noise(plane, 31);
    const auto R = default_radii(line, 6);
    for (int axis : {0, 1}) {
        const auto M = maximal_1d(f, axis, R);
        for (int k = 0; k < plane.N; ++k) {
            std::vector<double> fiber(line.N);
            for (int t = 0; t < line.N; ++t) {
                const int idx[] = {axis == 0 ? t : k, axis == 0 ? k : t};
                fiber[t] = f[ravel(plane, idx)].real();
            }
            const auto ref = hl_maximal(from_real(line, fiber), R, BallMethod::direct);
            for (int t = 0; t < line.N; ++t) {
                const int idx[] = {axis == 0 ? t : k, axis == 0 ? k : t};
                CHECK(M[ravel(plane, idx)].real() == doctest::Approx(ref[t].real()).epsilon(1e-14));
            }
        }
    }
}
