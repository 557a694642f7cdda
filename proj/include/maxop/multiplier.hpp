#pragma once

#include "maxop/euclidean_max.hpp"
#include "maxop/grid.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace maxop {

// Scalar function of the radius s >= 0, zero outside [lo, hi].
struct RadialProfile {
    std::function<double(double)> eval;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::optional<double> sup_bound;
    std::string name;

    double operator()(double s) const { return eval(s); }
    bool compact() const { return hi < std::numeric_limits<double>::infinity(); }
};

RadialProfile constant_profile(double c);

// Normalizing constant c_d of the Gegenbauer weight, so that
// c_d * int_{-1}^{1} (1 - t^2)^{(d-3)/2} dt = 1.
double sphere_weight_constant(int d);
// Surface area of the unit sphere in R^d.
double sphere_area(int d);

// Fourier transform of normalized surface measure on S^{d-1} at radius s,
// and its radial derivative. d = 1 gives cos(2 pi s), the transform of the
// normalized counting measure on {-1, 1}.
double surface_multiplier_value(int d, double s);
double surface_multiplier_derivative(int d, double s);
RadialProfile surface_multiplier(int d);

// The smooth step h(t), 0 for t <= 0 and 1 for t >= 1, and h'.
double smooth_step(double t);
double smooth_step_derivative(double t);

// Littlewood-Paley partition: phi_0 = 1 - h(s - 1) and
// phi_l(s) = phi_0(2^-l s) - phi_0(2^(1-l) s).
double bump_value(int l, double s);
double bump_derivative(int l, double s);
RadialProfile bump(int l);

// m_l = phi_l m and its radial Euler derivative s m_l'(s).
RadialProfile dyadic_piece(int d, int l);
RadialProfile tilde_piece(int d, int l);

// sup |g| on [a, b] by a sampled sweep refined around the largest samples.
double sup_abs(const std::function<double(double)>& g, double a, double b, double step);

// Keeps the forward transform of f for repeated multiplier applications.
class SpectralField {
public:
    explicit SpectralField(const GridFunction& f);

    // (f^ omega(r |.|))^v; real part for real f.
    GridFunction apply(const RadialProfile& omega, double r) const;

private:
    GridFunction spectrum_;
    std::vector<std::int64_t> index_sq_;
    bool real_input_;
};

GridFunction apply_multiplier(const GridFunction& f, const RadialProfile& omega, double r);
GridFunction maximal_multiplier(const GridFunction& f, const RadialProfile& omega, const RadiiSet& R);
std::vector<GridFunction> maximal_multiplier(const VectorField& F, const RadialProfile& omega, const RadiiSet& R);
GridFunction spherical_maximal(const GridFunction& f, int d, const RadiiSet& R);
std::vector<GridFunction> spherical_maximal(const VectorField& F, int d, const RadiiSet& R);

// omega^v sampled on the grid. Rejects profiles reaching past the frequency
// extent N/(4L).
GridFunction kernel(const RadialProfile& omega, const GridSpec& spec);

struct RadialMajorant {
    RadialProfile profile;
    double l1_norm = 0.0;
};

// Smallest nonincreasing radial step function above |k|, and its integral.
RadialMajorant radial_majorant(const GridFunction& k);

// Radial profile of phi_l^v in R^d.
double bump_kernel(int l, int d, double u);

// m_l^v at radius x_norm by the Funk-Hecke reduction to one dimension.
double funk_hecke_kernel(int l, int d, double x_norm);

// Average of a radial function over the sphere of radius r centered at a
// point at distance rho from the origin.
double radial_sphere_mean(const std::function<double(double)>& f, int d, double rho, double r);

struct DecayRow {
    int l = 0;
    double c1 = 0.0; // ||m_l||_inf 2^{l(d-1)/2}
    double c2 = 0.0; // ||m~_l||_inf 2^{l(d-3)/2}
    double c3 = 0.0; // sup_{|x| <= 8} |m_l^v(x)| (1+|x|)^{d+1} / 2^l
};

std::vector<DecayRow> decay_constants(int d, int l_max = 8);
void write_decay_csv(std::ostream& out, const std::vector<DecayRow>& rows);

} // namespace maxop
