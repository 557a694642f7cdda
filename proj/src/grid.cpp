#include "maxop/grid.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maxop {

std::size_t GridSpec::size() const
{
    std::size_t n = 1;
    for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(N);
    return n;
}

double GridSpec::cell_volume() const { return std::pow(h, d); }

GridSpec make_grid(int d, double L, int N)
{
    if (d < 1) throw std::invalid_argument("grid dimension must be >= 1");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid half-width must be positive");
    if (N < 4 || N % 2 != 0) throw std::invalid_argument("grid size must be even and >= 4, got " + std::to_string(N));
    return GridSpec{d, L, N, 2.0 * L / N};
}

GridFunction::GridFunction(const GridSpec& spec, Domain domain)
    : spec_(spec), domain_(domain), values_(spec.size())
{
}

GridFunction::GridFunction(const GridSpec& spec, std::vector<complex> values, Domain domain)
    : spec_(spec), domain_(domain), values_(std::move(values))
{
    if (values_.size() != spec_.size()) throw std::invalid_argument("value count does not match grid");
}

bool GridFunction::is_real() const
{
    return std::all_of(values_.begin(), values_.end(), [](const complex& z) { return z.imag() == 0.0; });
}

std::vector<double> GridFunction::real_part() const
{
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](const complex& z) { return z.real(); });
    return out;
}

std::vector<double> GridFunction::abs() const
{
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](const complex& z) { return std::abs(z); });
    return out;
}

GridFunction from_real(const GridSpec& spec, std::span<const double> values)
{
    if (values.size() != spec.size()) throw std::invalid_argument("value count does not match grid");
    return GridFunction(spec, std::vector<complex>(values.begin(), values.end()));
}

VectorField::VectorField(std::vector<GridFunction> members) : members_(std::move(members))
{
    if (members_.empty()) throw std::invalid_argument("vector field needs at least one member");
    for (const auto& m : members_)
        if (!(m.spec() == members_.front().spec()))
            throw std::invalid_argument("vector field members must share one grid");
}

void unravel(const GridSpec& spec, std::size_t flat, std::span<int> index)
{
    for (int a = spec.d - 1; a >= 0; --a) {
        index[a] = static_cast<int>(flat % spec.N);
        flat /= spec.N;
    }
}

std::size_t ravel(const GridSpec& spec, std::span<const int> index)
{
    std::size_t flat = 0;
    for (int a = 0; a < spec.d; ++a) flat = flat * spec.N + index[a];
    return flat;
}

void node_coordinates(const GridSpec& spec, std::size_t flat, std::span<double> x)
{
    for (int a = spec.d - 1; a >= 0; --a) {
        x[a] = spec.node(static_cast<int>(flat % spec.N));
        flat /= spec.N;
    }
}

GridFunction sample(const GridSpec& spec, const Field& field)
{
    GridFunction f(spec);
    std::vector<double> x(spec.d);
    for (std::size_t i = 0; i < f.size(); ++i) {
        node_coordinates(spec, i, x);
        double v = field(x);
        if (!std::isfinite(v)) throw std::domain_error("sampled field is not finite at node " + std::to_string(i));
        f[i] = v;
    }
    return f;
}

namespace {

// Reorders between standard DFT order and centered order, multiplying by a
// separable per-axis factor indexed by the centered position.
void reorder(const GridSpec& spec, const complex* src, complex* dst, const std::vector<complex>& factor,
             bool to_centered)
{
    const int d = spec.d, N = spec.N;
    std::vector<std::size_t> stride(d);
    std::size_t s = 1;
    for (int a = d - 1; a >= 0; --a) {
        stride[a] = s;
        s *= N;
    }
    std::vector<int> c(d, 0);
    const std::size_t total = spec.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t other = 0;
        complex w = 1.0;
        for (int a = 0; a < d; ++a) {
            other += static_cast<std::size_t>((c[a] + N / 2) % N) * stride[a];
            w *= factor[c[a]];
        }
        if (to_centered)
            dst[flat] = w * src[other];
        else
            dst[other] = w * src[flat];
        for (int a = d - 1; a >= 0; --a) {
            if (++c[a] < N) break;
            c[a] = 0;
        }
    }
}

std::vector<complex> axis_phase(const GridSpec& spec, int sign, double scale)
{
    std::vector<complex> ph(spec.N);
    for (int c = 0; c < spec.N; ++c) {
        int k = c - spec.N / 2;
        double parity = (k % 2 == 0) ? 1.0 : -1.0;
        ph[c] = scale * parity * std::polar(1.0, sign * std::numbers::pi * k / spec.N);
    }
    return ph;
}

} // namespace

GridFunction forward_transform(const GridFunction& f)
{
    if (f.domain() != Domain::physical) throw std::invalid_argument("forward transform expects physical data");
    const GridSpec& spec = f.spec();
    const std::size_t n = spec.size();
    auto buf = detail::complex_buffer(n);
    std::copy(f.values().begin(), f.values().end(), buf.get());
    auto plan = detail::Plan::dft(std::vector<int>(spec.d, spec.N), buf.get(), buf.get(), FFTW_FORWARD);
    plan.execute();
    GridFunction out(spec, Domain::frequency);
    reorder(spec, buf.get(), out.values().data(), axis_phase(spec, -1, spec.h), true);
    return out;
}

GridFunction inverse_transform(const GridFunction& fhat)
{
    if (fhat.domain() != Domain::frequency) throw std::invalid_argument("inverse transform expects frequency data");
    const GridSpec& spec = fhat.spec();
    const std::size_t n = spec.size();
    auto buf = detail::complex_buffer(n);
    reorder(spec, fhat.values().data(), buf.get(), axis_phase(spec, +1, 1.0 / (2.0 * spec.L)), false);
    auto plan = detail::Plan::dft(std::vector<int>(spec.d, spec.N), buf.get(), buf.get(), FFTW_BACKWARD);
    plan.execute();
    return GridFunction(spec, std::vector<complex>(buf.get(), buf.get() + n), Domain::physical);
}

double physical_l2(const GridFunction& f)
{
    double s = 0.0;
    for (const auto& z : f.values()) s += std::norm(z);
    return std::sqrt(s * f.spec().cell_volume());
}

double frequency_l2(const GridFunction& fhat)
{
    double s = 0.0;
    for (const auto& z : fhat.values()) s += std::norm(z);
    return std::sqrt(s * std::pow(2.0 * fhat.spec().L, -fhat.spec().d));
}

} // namespace maxop
