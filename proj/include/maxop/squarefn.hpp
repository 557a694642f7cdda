#pragma once

#include "maxop/grid.hpp"
#include "maxop/multiplier.hpp"

#include <vector>

namespace maxop {

// Midpoint rule in log t: nodes t_i = lo exp((i + 1/2) step), weights step.
struct TGrid {
    std::vector<double> t;
    std::vector<double> w;
    double lo = 0.0;
    double hi = 0.0;
};

TGrid log_tgrid(double lo, double hi, int n);

// Covers [a / s_max, b / s_min] for the active frequency radii of the grid.
// The step divides ln(b/a) exactly, so every frequency sees a whole number
// of nodes inside the annulus.
TGrid make_tgrid(const RadialProfile& omega, const GridSpec& spec, int nodes = 128);

// Profile C on [r, rho r], zero elsewhere.
RadialProfile annulus_indicator(double r, double rho, double C);

GridFunction square_function(const GridFunction& f, const RadialProfile& omega, const TGrid& T);
std::vector<GridFunction> square_function(const VectorField& F, const RadialProfile& omega, const TGrid& T);

struct Prop2Result {
    double lhs = 0.0;
    double rhs = 0.0;
};

// lhs = ||(sum_n g(f_n)^2)^(1/2)||_2, rhs = C sqrt(ln rho) ||(sum_n f_n^2)^(1/2)||_2.
Prop2Result prop2_check(const VectorField& F, const RadialProfile& omega, int nodes = 128);

} // namespace maxop
