#pragma once

// Brute-force reference implementations. Each one loops over every grid
// point in the plainest order that defines the quantity; they share only the
// distance functions and tie tolerances with the library.

#include "maxop/euclidean_max.hpp"
#include "maxop/grid.hpp"
#include "maxop/grushin.hpp"
#include "maxop/norms.hpp"

#include <functional>
#include <vector>

namespace maxop::oracle {

// Ball averages over lattice offsets o with |o|^2 <= floor((r/h)^2 (1 + 1e-12)),
// summing grid points in lexicographic order and dividing by the count of
// the full lattice ball.
std::vector<double> hl_maximal(const GridFunction& f, const RadiiSet& R);

// Korányi ball averages by a triple loop over (node, x', u').
std::vector<double> grushin_maximal(const GrushinFunction& f, const RadiiSet& R);

std::vector<double> lq_pointwise(const VectorField& F, double q);
double mixed_norm(const VectorField& F, double p, double q);

// C(w) = int phi_l(s) cos(2 pi w s) ds.
double bump_cosine_transform(int l, double w);
// m_l^v(rho) in R^3 from (C(rho - 1) - C(rho + 1)) / (2 pi rho).
double dyadic_kernel_3d(int l, double rho);

// Euclidean distance maximal function of f1 at |x| = rho by sphere
// quadrature, swept over r in [rho - 1, rho + 1].
double remark_spherical_maximal(int d, double rho);

} // namespace maxop::oracle
