#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace maxop {

using complex = std::complex<double>;

// Uniform cell-centered grid on [-L, L]^d with N points per axis.
struct GridSpec {
    int d = 1;
    double L = 1.0;
    int N = 4;
    double h = 0.5;

    std::size_t size() const;
    // Node coordinate along any axis.
    double node(int i) const { return -L + (i + 0.5) * h; }
    // Frequency of centered index i (i = 0 is -N/2).
    double frequency(int i) const { return (i - N / 2) / (2.0 * L); }
    double cell_volume() const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int d, double L, int N);

enum class Domain { physical, frequency };

// Samples over a GridSpec, row-major with the last axis fastest. Frequency
// data is stored in centered order.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const GridSpec& spec, Domain domain = Domain::physical);
    GridFunction(const GridSpec& spec, std::vector<complex> values, Domain domain = Domain::physical);

    const GridSpec& spec() const { return spec_; }
    Domain domain() const { return domain_; }
    std::size_t size() const { return values_.size(); }

    std::span<complex> values() { return values_; }
    std::span<const complex> values() const { return values_; }
    complex& operator[](std::size_t i) { return values_[i]; }
    const complex& operator[](std::size_t i) const { return values_[i]; }

    bool is_real() const;
    std::vector<double> real_part() const;
    std::vector<double> abs() const;

private:
    GridSpec spec_;
    Domain domain_ = Domain::physical;
    std::vector<complex> values_;
};

GridFunction from_real(const GridSpec& spec, std::span<const double> values);

// Finite family of grid functions on one spec.
class VectorField {
public:
    explicit VectorField(std::vector<GridFunction> members);

    const GridSpec& spec() const { return members_.front().spec(); }
    std::size_t size() const { return members_.size(); }
    const GridFunction& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<GridFunction>& members() const { return members_; }

private:
    std::vector<GridFunction> members_;
};

using Field = std::function<double(std::span<const double>)>;

GridFunction sample(const GridSpec& spec, const Field& field);

// Multi-index of a flat position.
void unravel(const GridSpec& spec, std::size_t flat, std::span<int> index);
std::size_t ravel(const GridSpec& spec, std::span<const int> index);
void node_coordinates(const GridSpec& spec, std::size_t flat, std::span<double> x);

// f^(xi) = int f(x) exp(-2 pi i <x, xi>) dx, discretized so that Plancherel
// holds with weights h^d and (2L)^-d.
GridFunction forward_transform(const GridFunction& f);
GridFunction inverse_transform(const GridFunction& fhat);

// Discrete L2 norms in the physical and frequency weights.
double physical_l2(const GridFunction& f);
double frequency_l2(const GridFunction& fhat);

} // namespace maxop
