#include "maxop/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace maxop {

namespace {

QuadratureRule build(int n)
{
    QuadratureRule q{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (converged) break;
            converged = std::abs(dx) < 1e-14;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0;
    return q;
}

} // namespace

const QuadratureRule& gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
    static std::mutex lock;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard guard(lock);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(build(n));
    return *slot;
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
    const QuadratureRule& ref = gauss_legendre(n);
    QuadratureRule q{std::vector<double>(n), std::vector<double>(n)};
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = mid + half * ref.nodes[i];
        q.weights[i] = half * ref.weights[i];
    }
    return q;
}

} // namespace maxop
