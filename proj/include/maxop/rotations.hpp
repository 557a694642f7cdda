#pragma once

#include "maxop/euclidean_max.hpp"
#include "maxop/grid.hpp"
#include "maxop/norms.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>

namespace maxop {

struct RotationMatrix {
    int d = 1;
    Eigen::MatrixXd m;
};

// Stream splitting: seed for the index-th draw of a seeded stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// column signs fixed by sign(diag R).
RotationMatrix haar_rotation(int d, std::uint64_t seed);

// R^d = R^{d'} x R^{d-d'} with weight exponent k = d - d'.
struct DescentSplit {
    int d = 3;
    int d_prime = 3;
    int k = 0;
};

DescentSplit make_split(int d, int d_prime);

// floor(max(2, p, q, p', q')) + 1 for finite p, q > 1.
int dimension_split(Exponent p, Exponent q);

// Polar product rule for the d'-dimensional weighted averages: Gauss-Legendre
// nodes per radial shell times a fixed antipodal set of sphere directions.
struct DescentOptions {
    int radial_nodes = 6;
    int directions = 64;
    std::uint64_t seed = 0x6d61786f70ULL;
};

// max over r of sum |f(x - theta(y', 0))| |y'|^k / sum |y'|^k over the
// d'-ball of radius r, with multilinear interpolation and zero extension.
GridFunction descent_maximal(const GridFunction& f, const RotationMatrix& theta, const DescentSplit& split,
                             const RadiiSet& R, const DescentOptions& options = {});

struct McEstimate {
    double lhs = 0.0;
    double rhs = 0.0;
    double std_error = 0.0;
};

// Standard error of the mean by batch means.
double batch_stderr(std::span<const double> samples, int batches = 16);

// lhs: lattice ball average of |f| at (node, r); rhs: Haar average of the
// weighted d'-plane averages through the node.
McEstimate rotation_average_check(const GridFunction& f, const DescentSplit& split, double r, std::size_t node,
                                  int n_mc, std::uint64_t seed, const DescentOptions& options = {});

using SphereFunction = std::function<double(std::span<const double>)>;

// lhs: Monte Carlo mean of f1 over S^{d-1}; rhs: Haar average of means of
// f1 over the rotated great d'-spheres. stderr combines both.
McEstimate sphere_identity_check(const SphereFunction& f1, const DescentSplit& split, int n_mc,
                                 std::uint64_t seed, const DescentOptions& options = {});

struct DominationResult {
    GridFunction average;
    GridFunction std_error;
};

// Haar Monte Carlo average of descent_maximal over n_mc rotations.
DominationResult lemma2_domination(const GridFunction& f, const DescentSplit& split, const RadiiSet& R, int n_mc,
                                   std::uint64_t seed, const DescentOptions& options = {});

} // namespace maxop
