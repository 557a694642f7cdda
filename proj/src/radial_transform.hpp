#pragma once

#include <functional>
#include <vector>

namespace maxop::detail {

// Nodes t_i and weights W_i with sum_i W_i g(t_i) ~ c_d int g(t)(1-t^2)^{(d-3)/2} dt.
// d >= 3 substitutes t = cos(theta), which leaves the smooth weight
// sin^{d-2}(theta); d = 2 uses Gauss-Chebyshev.
struct SphereRule {
    std::vector<double> t;
    std::vector<double> w;
};

const SphereRule& sphere_rule(int d, int n);

// Radial profile of the d-dimensional inverse Fourier transform of a
// compactly supported radial function psi(|xi|), tabulated on [0, u_max]
// and interpolated; zero beyond u_max.
class RadialTransform {
public:
    RadialTransform(const std::function<double(double)>& psi, double lo, double hi, int d, double u_max);

    double operator()(double u) const;

private:
    double step_;
    std::vector<double> table_;
};

// Transform of phi_0 (base 0) or phi_1 (base 1); built once per dimension.
const RadialTransform& bump_transform(int d, int base);

} // namespace maxop::detail
