#pragma once

#include <vector>

namespace maxop {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; cached, safe to call concurrently.
const QuadratureRule& gauss_legendre(int n);

// Same rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

} // namespace maxop
