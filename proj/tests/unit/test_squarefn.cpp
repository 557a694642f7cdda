#include "doctest.h"

#include "maxop/families.hpp"
#include "maxop/norms.hpp"
#include "maxop/squarefn.hpp"

#include <cmath>

using namespace maxop;

namespace {

// Odd in x_0, so the zero frequency carries no mass.
GridFunction odd_gaussian(const GridSpec& spec, double amp = 1.0)
{
    return sample(spec, [amp](std::span<const double> x) {
        return amp * x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
}

double max_abs(const GridFunction& f)
{
    double m = 0.0;
    for (const auto& z : f.values()) m = std::max(m, std::abs(z));
    return m;
}

} // namespace

TEST_CASE("log t grid")
{
    const TGrid T = log_tgrid(0.5, 8.0, 16);
    CHECK(T.t.size() == 16u);
    CHECK(T.t.front() > 0.5);
    CHECK(T.t.back() < 8.0);
    double total = 0.0;
    for (double w : T.w) total += w;
    CHECK(total == doctest::Approx(std::log(16.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_tgrid(1.0, 0.5, 4), std::invalid_argument);
}

TEST_CASE("sharp annulus gives the Plancherel identity")
{
    const GridSpec spec = make_grid(2, 4.0, 32);
    const auto f = odd_gaussian(spec);
    for (double C : {1.0, 1.3}) {
        const RadialProfile omega = annulus_indicator(0.75, 4.0, C);
        const auto g = square_function(f, omega, make_tgrid(omega, spec));
        const Exponent two(2.0);
        CHECK(lp_norm(g, two) == doctest::Approx(C * std::sqrt(std::log(4.0)) * lp_norm(f, two)).epsilon(1e-3));
    }
}

TEST_CASE("disjoint supports give zero")
{
    const GridSpec spec = make_grid(2, 4.0, 32);
    const RadialProfile omega = annulus_indicator(1.0, 2.0, 1.0);
    const auto g = square_function(odd_gaussian(spec), omega, log_tgrid(1e-6, 2e-6, 8));
    for (const auto& z : g.values()) CHECK(z.real() == 0.0);
}

TEST_CASE("square function is nonnegative and homogeneous")
{
    const GridSpec spec = make_grid(2, 4.0, 32);
    const RadialProfile omega = bump(1);
    const TGrid T = make_tgrid(omega, spec);
    const auto a = square_function(odd_gaussian(spec), omega, T);
    const auto b = square_function(odd_gaussian(spec, -2.5), omega, T);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        CHECK(a[i].real() >= 0.0);
        CHECK(b[i].real() == doctest::Approx(2.5 * a[i].real()).epsilon(1e-12));
    }
}

TEST_CASE("doubling the t nodes barely moves the result")
{
    const GridSpec spec = make_grid(2, 4.0, 32);
    const RadialProfile omega = dyadic_piece(2, 1);
    const auto f = odd_gaussian(spec);
    const auto a = square_function(f, omega, make_tgrid(omega, spec, 128));
    const auto b = square_function(f, omega, make_tgrid(omega, spec, 256));
    double diff = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) diff = std::max(diff, std::abs(a[i].real() - b[i].real()));
    CHECK(diff <= 1e-3 * max_abs(a));
}

TEST_CASE("profiles without an annulus are rejected")
{
    const GridSpec spec = make_grid(2, 4.0, 32);
    const auto f = odd_gaussian(spec);
    CHECK_THROWS_AS(square_function(f, surface_multiplier(2), log_tgrid(0.5, 1.0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(square_function(f, bump(0), log_tgrid(0.5, 1.0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(annulus_indicator(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("vector-valued inequality")
{
    const GridSpec spec = make_grid(2, 4.0, 32);
    const VectorField F = make_family(Family::random_bumps, spec, 3, 5);

    const auto sharp = prop2_check(F, annulus_indicator(0.5, 4.0, 1.0));
    CHECK(sharp.lhs <= sharp.rhs * (1.0 + 1e-2));

    const RadialProfile m = dyadic_piece(2, 1);
    const auto r = prop2_check(F, m);
    CHECK(r.lhs <= r.rhs * (1.0 + 1e-2));
    CHECK(r.lhs > 0.0);

    std::vector<GridFunction> padded = F.members();
    padded.push_back(GridFunction(spec));
    const auto z = prop2_check(VectorField(padded), m);
    CHECK(z.lhs == doctest::Approx(r.lhs).epsilon(1e-14));
    CHECK(z.rhs == doctest::Approx(r.rhs).epsilon(1e-14));

    RadialProfile lying = annulus_indicator(0.5, 4.0, 1.0);
    lying.sup_bound = 0.5;
    CHECK_THROWS_AS(prop2_check(F, lying), std::invalid_argument);
    RadialProfile unbounded = bump(1);
    unbounded.sup_bound.reset();
    CHECK_THROWS_AS(prop2_check(F, unbounded), std::invalid_argument);
}
