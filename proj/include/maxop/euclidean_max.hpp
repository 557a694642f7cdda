#pragma once

#include "maxop/grid.hpp"

#include <vector>

namespace maxop {

// Finite set of radii standing in for sup over r > 0.
class RadiiSet {
public:
    explicit RadiiSet(std::vector<double> radii);

    const std::vector<double>& radii() const { return radii_; }
    std::size_t size() const { return radii_.size(); }
    double min() const { return radii_.front(); }
    double max() const { return radii_.back(); }

private:
    std::vector<double> radii_;
};

// K log-spaced radii from h to 2L sqrt(d).
RadiiSet default_radii(const GridSpec& spec, int K = 32);
RadiiSet log_radii(double lo, double hi, int K);

enum class BallMethod { automatic, direct, fft };

// Centered ball averages of |f| over lattice offsets |o| h <= r, with f
// zero-extended outside the cube and the count taken over the full lattice
// ball. The r -> 0 limit |f(x)| is included, so Mf >= |f|.
GridFunction hl_maximal(const GridFunction& f, const RadiiSet& R, BallMethod method = BallMethod::automatic);
std::vector<GridFunction> hl_maximal(const VectorField& F, const RadiiSet& R,
                                     BallMethod method = BallMethod::automatic);

// Ball averages against the weight |y|^k. k = 0 is hl_maximal.
GridFunction weighted_maximal(const GridFunction& f, int k, const RadiiSet& R,
                              BallMethod method = BallMethod::automatic);
std::vector<GridFunction> weighted_maximal(const VectorField& F, int k, const RadiiSet& R,
                                           BallMethod method = BallMethod::automatic);

// Centered interval averages along one axis, independently per fiber.
GridFunction maximal_1d(const GridFunction& f, int axis, const RadiiSet& R);

// Same along an axis of a real array with arbitrary extents and spacing h.
std::vector<double> maximal_along_axis(std::span<const double> values, std::span<const int> extent, int axis,
                                       double h, const RadiiSet& R);

} // namespace maxop
