#include "doctest.h"

#include "maxop/rotations.hpp"

#include <cmath>
#include <set>

using namespace maxop;

namespace {

GridFunction gaussian(const GridSpec& spec, double w, double tilt = 0.0)
{
    return sample(spec, [w, tilt](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::exp(-s / (w * w)) * (1.0 + tilt * x[0]);
    });
}

} // namespace

TEST_CASE("Haar rotations are orthogonal with unit determinant")
{
    for (int d = 1; d <= 7; ++d)
        for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 123456789ULL}) {
            const auto th = haar_rotation(d, seed);
            CHECK(th.d == d);
            const Eigen::MatrixXd e = th.m.transpose() * th.m - Eigen::MatrixXd::Identity(d, d);
            CHECK(e.cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(std::abs(std::abs(th.m.determinant()) - 1.0) <= 1e-10);
        }
    CHECK_THROWS_AS(haar_rotation(0, 1), std::invalid_argument);
}

TEST_CASE("Haar rotations are deterministic per seed")
{
    CHECK(haar_rotation(4, 7).m == haar_rotation(4, 7).m);
    CHECK(haar_rotation(4, 7).m != haar_rotation(4, 8).m);
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(3, i));
    CHECK(seen.size() == 1000u);
    CHECK(derive_seed(3, 5) == derive_seed(3, 5));
}

TEST_CASE("one-dimensional rotations are balanced signs")
{
    int plus = 0;
    const int n = 10000;
    for (int s = 0; s < n; ++s) {
        const double v = haar_rotation(1, s).m(0, 0);
        CHECK(std::abs(v) == 1.0);
        plus += v > 0.0;
    }
    CHECK(plus >= 0.48 * n);
    CHECK(plus <= 0.52 * n);
}

TEST_CASE("first column is centered on the sphere")
{
    const int d = 3, n = 10000;
    double sum = 0.0, sq = 0.0;
    for (int s = 0; s < n; ++s) {
        const double v = haar_rotation(d, 5000 + s).m(0, 0);
        sum += v;
        sq += v * v;
    }
    CHECK(std::abs(sum / n) <= 3.0 * std::sqrt(1.0 / d / n));
    CHECK(sq / n == doctest::Approx(1.0 / d).epsilon(0.05));
}

TEST_CASE("dimension split")
{
    CHECK(dimension_split(Exponent(2.0), Exponent(2.0)) == 3);
    CHECK(dimension_split(Exponent(3.0), Exponent(2.0)) == 4);
    CHECK(dimension_split(Exponent(1.25), Exponent(1.25)) == 6);
    for (double p : {1.1, 1.5, 2.0, 2.5, 4.0, 7.3})
        for (double q : {1.3, 2.0, 3.0}) {
            const int k = dimension_split(Exponent(p), Exponent(q));
            const double lo = k / (k - 1.0);
            CHECK(lo < p);
            CHECK(p < k);
            CHECK(lo < q);
            CHECK(q < k);
        }
    CHECK_THROWS_AS(dimension_split(Exponent::infinity(), Exponent(2.0)), std::invalid_argument);

    const auto s = make_split(5, 3);
    CHECK(s.k == 2);
    CHECK_THROWS_AS(make_split(3, 4), std::invalid_argument);
}

TEST_CASE("batch standard error")
{
    const std::vector<double> flat(64, 2.5);
    CHECK(batch_stderr(flat) == 0.0);
    std::vector<double> alt(64);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i / 4) % 2 ? 1.0 : -1.0;
    CHECK(batch_stderr(alt) > 0.0);
}

TEST_CASE("descent operator fixes constants")
{
    const GridSpec spec = make_grid(3, 1.5, 8);
    const auto one = sample(spec, [](std::span<const double>) { return 1.0; });
    const auto M = descent_maximal(one, haar_rotation(3, 4), make_split(3, 3), log_radii(spec.h, 1.0, 4));
    for (const auto& z : M.values()) CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("descent operator dominates |f| and rejects bad inputs")
{
    const GridSpec spec = make_grid(4, 1.5, 6);
    const auto f = gaussian(spec, 0.8, 0.4);
    const auto M = descent_maximal(f, haar_rotation(4, 2), make_split(4, 3), log_radii(spec.h, 1.0, 4));
    for (std::size_t i = 0; i < spec.size(); ++i) CHECK(M[i].real() >= std::abs(f[i]));
    CHECK_THROWS_AS(descent_maximal(f, haar_rotation(3, 2), make_split(3, 3), log_radii(spec.h, 1.0, 4)),
                    std::invalid_argument);
}

TEST_CASE("identity rotation in full dimension tracks the ball operator")
{
    const GridSpec spec = make_grid(3, 2.0, 16);
    const auto f = gaussian(spec, 0.7);
    const auto R = log_radii(2.0 * spec.h, 1.0, 5);
    const RotationMatrix id{3, Eigen::MatrixXd::Identity(3, 3)};
    const auto a = descent_maximal(f, id, make_split(3, 3), R);
    const auto b = hl_maximal(f, R);
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) worst = std::max(worst, std::abs(a[i].real() - b[i].real()));
    CHECK(worst <= 2.0 * spec.h);
}

TEST_CASE("signed permutations commute with the descent operator")
{
    // theta maps the cell-centered lattice to itself, so
    // M^theta f(x) = M^I (f o theta)(theta^-1 x) node by node.
    const GridSpec spec = make_grid(3, 1.5, 8);
    const auto f = gaussian(spec, 0.9, 0.5);
    RotationMatrix th{3, Eigen::MatrixXd::Zero(3, 3)};
    th.m(0, 1) = 1.0;
    th.m(1, 2) = -1.0;
    th.m(2, 0) = 1.0;
    const RotationMatrix id{3, Eigen::MatrixXd::Identity(3, 3)};

    auto apply = [&](const std::vector<int>& idx) {
        // index of theta x for a node x, using node(N-1-i) = -node(i)
        std::vector<int> out(3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (th.m(r, c) != 0.0) out[r] = th.m(r, c) > 0 ? idx[c] : spec.N - 1 - idx[c];
        return out;
    };
    std::vector<double> composed(spec.size());
    std::vector<int> idx(3);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        unravel(spec, i, idx);
        composed[i] = f[ravel(spec, apply(idx))].real();
    }
    const auto R = log_radii(spec.h, 1.2, 4);
    const auto lhs = descent_maximal(f, th, make_split(3, 3), R);
    const auto rhs = descent_maximal(from_real(spec, composed), id, make_split(3, 3), R);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        unravel(spec, i, idx);
        // rhs at theta^-1 x: find the node y with theta y = x
        std::size_t pre = 0;
        for (std::size_t j = 0; j < spec.size(); ++j) {
            std::vector<int> y(3);
            unravel(spec, j, y);
            if (apply(y) == idx) pre = j;
        }
        CHECK(lhs[i].real() == doctest::Approx(rhs[pre].real()).epsilon(1e-12));
    }
}

TEST_CASE("ball average equals the rotation average of plane averages")
{
    const GridSpec spec = make_grid(3, 2.0, 16);
    std::vector<int> mid(3, spec.N / 2);
    const std::size_t node = ravel(spec, mid);
    const auto one = sample(spec, [](std::span<const double>) { return 1.0; });
    const auto c = rotation_average_check(one, make_split(3, 3), 0.8, node, 16, 3);
    CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.rhs == doctest::Approx(1.0).epsilon(1e-12));

    const auto e = rotation_average_check(gaussian(spec, 0.8), make_split(3, 3), 0.8, node, 256, 5);
    CHECK(std::abs(e.lhs - e.rhs) <= 3.0 * e.std_error + 2.0 * spec.h);

    CHECK_THROWS_AS(rotation_average_check(one, make_split(3, 3), 3.0, node, 4, 1), std::domain_error);
}

TEST_CASE("sphere averages through great subspheres")
{
    const auto constant = [](std::span<const double>) { return 1.0; };
    const auto c = sphere_identity_check(constant, make_split(4, 3), 64, 1);
    CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.rhs == doctest::Approx(1.0).epsilon(1e-12));

    for (int d : {3, 4, 5}) {
        const auto sq = [](std::span<const double> y) { return y[0] * y[0]; };
        const auto e = sphere_identity_check(sq, make_split(d, 3), 2048, 10 + d);
        CHECK(std::abs(e.lhs - 1.0 / d) <= 4.0 * e.std_error + 1e-12);
        CHECK(std::abs(e.rhs - 1.0 / d) <= 4.0 * e.std_error + 1e-12);
        CHECK(std::abs(e.lhs - e.rhs) <= 3.0 * e.std_error);

        const auto odd = [](std::span<const double> y) { return y[1] * (1.0 + y[0] * y[0]); };
        const auto o = sphere_identity_check(odd, make_split(d, 3), 2048, 20 + d);
        CHECK(std::abs(o.lhs - o.rhs) <= 3.0 * o.std_error);
        CHECK(std::abs(o.rhs) <= 4.0 * o.std_error + 1e-12);
    }
}

TEST_CASE("rotation-averaged descent of a constant")
{
    const GridSpec spec = make_grid(4, 1.5, 6);
    const auto one = sample(spec, [](std::span<const double>) { return 1.0; });
    const auto r = lemma2_domination(one, make_split(4, 3), log_radii(spec.h, 1.0, 3), 4, 2);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        CHECK(r.average[i].real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.std_error[i].real() <= 1e-12);
    }
}
