#pragma once

#include "maxop/grid.hpp"

#include <span>

namespace maxop {

// Lebesgue exponent p in (1, inf].
class Exponent {
public:
    explicit Exponent(double p);
    static Exponent infinity();

    bool is_infinite() const { return infinite_; }
    double value() const;

private:
    Exponent() = default;
    double p_ = 2.0;
    bool infinite_ = false;
};

// Deterministic tree summation.
double pairwise_sum(std::span<const double> v);

double lp_norm(const GridFunction& f, Exponent p);
GridFunction lq_pointwise(const VectorField& F, Exponent q);
double mixed_norm(const VectorField& F, Exponent p, Exponent q);
// h^d times the number of nodes with g > lambda.
double level_measure(const GridFunction& g, double lambda);

} // namespace maxop
