#pragma once

#include "maxop/grid.hpp"
#include "maxop/grushin.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maxop {

enum class Family { gaussian, ball_indicator, remark_bump, random_bumps };

Family parse_family(const std::string& name);
std::string to_string(Family family);

// e^{-1/(1-s^2)} for s < 1, zero otherwise.
double remark_bump_profile(double s);

// Members as functions on R^D. half_width[a] is the box half-width on
// axis a; random_bumps draws centers in the middle half of the box.
std::vector<Field> family_fields(Family family, std::span<const double> half_width, int n_members,
                                 std::uint64_t seed);

VectorField make_family(Family family, const GridSpec& spec, int n_members, std::uint64_t seed);
// Same members on R^d x R_u, with u as the last coordinate.
std::vector<GrushinFunction> make_family(Family family, const GrushinGrid& grid, int n_members, std::uint64_t seed);

} // namespace maxop
