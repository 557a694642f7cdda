#include "maxop/families.hpp"

#include "maxop/rotations.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace maxop {

Family parse_family(const std::string& name)
{
    if (name == "gaussian") return Family::gaussian;
    if (name == "ball_indicator") return Family::ball_indicator;
    if (name == "remark_bump") return Family::remark_bump;
    if (name == "random_bumps") return Family::random_bumps;
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::string to_string(Family family)
{
    switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::ball_indicator: return "ball_indicator";
    case Family::remark_bump: return "remark_bump";
    case Family::random_bumps: return "random_bumps";
    }
    return "unknown";
}

double remark_bump_profile(double s)
{
    s = std::abs(s);
    if (s >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

namespace {

double dist_sq(std::span<const double> x, const std::vector<double>& c)
{
    double s = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) s += (x[a] - c[a]) * (x[a] - c[a]);
    return s;
}

std::vector<double> line_center(int D, int n, int n_members)
{
    std::vector<double> c(D, 0.0);
    c[0] = (n - 0.5 * (n_members - 1)) * 0.5;
    return c;
}

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

} // namespace

std::vector<Field> family_fields(Family family, std::span<const double> half_width, int n_members,
                                 std::uint64_t seed)
{
    if (n_members < 1) throw std::invalid_argument("family needs at least one member");
    const int D = static_cast<int>(half_width.size());
    std::vector<Field> out;
    for (int n = 0; n < n_members; ++n) {
        switch (family) {
        case Family::gaussian: {
            auto c = line_center(D, n, n_members);
            out.push_back([c](std::span<const double> x) { return std::exp(-dist_sq(x, c)); });
            break;
        }
        case Family::ball_indicator: {
            auto c = line_center(D, n, n_members);
            out.push_back([c](std::span<const double> x) { return dist_sq(x, c) <= 1.0 ? 1.0 : 0.0; });
            break;
        }
        case Family::remark_bump:
            if (n == 0)
                out.push_back([](std::span<const double> x) {
                    double s = 0.0;
                    for (double v : x) s += v * v;
                    return remark_bump_profile(std::sqrt(s));
                });
            else
                out.push_back([](std::span<const double>) { return 0.0; });
            break;
        case Family::random_bumps: {
            std::mt19937_64 g(derive_seed(seed, static_cast<std::uint64_t>(n)));
            std::vector<double> c(D);
            for (int a = 0; a < D; ++a) c[a] = (uniform(g) - 0.5) * half_width[a];
            const double w = 0.5 + uniform(g);
            out.push_back([c, w](std::span<const double> x) { return std::exp(-dist_sq(x, c) / (w * w)); });
            break;
        }
        }
    }
    return out;
}

VectorField make_family(Family family, const GridSpec& spec, int n_members, std::uint64_t seed)
{
    const std::vector<double> hw(spec.d, spec.L);
    std::vector<GridFunction> members;
    for (const auto& f : family_fields(family, hw, n_members, seed)) members.push_back(sample(spec, f));
    return VectorField(std::move(members));
}

std::vector<GrushinFunction> make_family(Family family, const GrushinGrid& grid, int n_members, std::uint64_t seed)
{
    std::vector<double> hw(grid.d, grid.Lx);
    hw.push_back(grid.Lu);
    std::vector<GrushinFunction> members;
    std::vector<double> point(grid.d + 1);
    for (const auto& f : family_fields(family, hw, n_members, seed)) {
        members.push_back(sample(grid, [&](std::span<const double> x, double u) {
            std::copy(x.begin(), x.end(), point.begin());
            point.back() = u;
            return f(point);
        }));
    }
    return members;
}

} // namespace maxop
