#pragma once

#include "maxop/euclidean_max.hpp"
#include "maxop/grid.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace maxop {

struct GrushinPoint {
    std::vector<double> x;
    double u = 0.0;
};

// Cell-centered grid on [-Lx, Lx]^d x [-Lu, Lu].
struct GrushinGrid {
    int d = 1;
    double Lx = 1.0;
    double Lu = 1.0;
    int Nx = 4;
    int Nu = 4;
    double hx = 0.5;
    double hu = 0.5;

    std::size_t x_size() const;
    std::size_t size() const { return x_size() * static_cast<std::size_t>(Nu); }
    double x_node(int i) const { return -Lx + (i + 0.5) * hx; }
    double u_node(int j) const { return -Lu + (j + 0.5) * hu; }
    double cell_volume() const;
    // The x factor as an isotropic grid.
    GridSpec x_spec() const { return GridSpec{d, Lx, Nx, hx}; }
};

GrushinGrid make_grushin_grid(int d, double Lx, int Nx, double Lu, int Nu);

// Values at the nodes, x axes first and u last (u fastest).
struct GrushinFunction {
    GrushinGrid grid;
    std::vector<double> values;
};

using GrushinField = std::function<double(std::span<const double> x, double u)>;
GrushinFunction sample(const GrushinGrid& grid, const GrushinField& field);

// d_K from |x|^2, |x'|^2, <x, x'> and |u - u'|.
double koranyi_gauge(double xx, double yy, double xy, double du);
double koranyi_distance(const GrushinPoint& g, const GrushinPoint& h);

// Membership rule shared by every Korányi ball computation.
inline bool in_koranyi_ball(double distance, double r) { return distance <= r * (1.0 + 1e-12); }

// Anisotropic dilation (s x, s^2 u).
GrushinPoint dilate(const GrushinPoint& g, double s);

struct BallVolume {
    double volume = 0.0;
    // Volume of cells whose corners straddle the sphere.
    double boundary = 0.0;
};

// Node count times cell volume of {d_K(g, .) <= r}. Throws if the ball
// reaches past the grid.
BallVolume koranyi_ball_volume(const GrushinPoint& g, double r, const GrushinGrid& grid);

enum class GrushinMethod { automatic, direct, prefix };

// max over r of averages of |f| over Korányi balls of node-centered lattice
// offsets, zero-extended, with the count taken over the infinite lattice.
// Includes the r -> 0 limit |f|.
GrushinFunction grushin_maximal(const GrushinFunction& f, const RadiiSet& R,
                                GrushinMethod method = GrushinMethod::automatic);

// 1-D maximal operator along u, then the Euclidean one in x per u-slice.
GrushinFunction iterated_maximal(const GrushinFunction& f, const RadiiSet& R_x, const RadiiSet& R_u);

RadiiSet default_koranyi_radii(const GrushinGrid& grid, int K = 16);
RadiiSet default_x_radii(const GrushinGrid& grid, int K = 16);
RadiiSet default_u_radii(const GrushinGrid& grid, int K = 16);

// max of M_K f / iterated over nodes where iterated >= 1e-3 max iterated.
double domination_constant(const GrushinFunction& mk, const GrushinFunction& iterated);

std::string cc_domination_note();

} // namespace maxop
