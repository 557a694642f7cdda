#include "maxop/grushin.hpp"

#include "maxop/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace maxop {

std::size_t GrushinGrid::x_size() const
{
    std::size_t n = 1;
    for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(Nx);
    return n;
}

double GrushinGrid::cell_volume() const { return std::pow(hx, d) * hu; }

GrushinGrid make_grushin_grid(int d, double Lx, int Nx, double Lu, int Nu)
{
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(Lx > 0.0) || !(Lu > 0.0)) throw std::invalid_argument("half-widths must be positive");
    if (Nx < 2 || Nx % 2 != 0 || Nu < 2 || Nu % 2 != 0)
        throw std::invalid_argument("grid sizes must be even and >= 2");
    return GrushinGrid{d, Lx, Lu, Nx, Nu, 2.0 * Lx / Nx, 2.0 * Lu / Nu};
}

namespace {

// x coordinates of every x node, row-major.
std::vector<double> x_coordinates(const GrushinGrid& grid)
{
    const std::size_t n = grid.x_size();
    std::vector<double> c(n * grid.d);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (int a = grid.d - 1; a >= 0; --a) {
            c[i * grid.d + a] = grid.x_node(static_cast<int>(rest % grid.Nx));
            rest /= grid.Nx;
        }
    }
    return c;
}

double dot(const double* a, const double* b, int d)
{
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

// Largest j >= 0 with (x', j hu) in the ball around (x, 0), or -1.
int u_reach(double xx, double yy, double xy, double r, double hu)
{
    auto member = [&](int j) { return in_koranyi_ball(koranyi_gauge(xx, yy, xy, j * hu), r); };
    const double rr = r * (1.0 + 1e-12);
    const double B = rr * rr + 2.0 * xy, A = xx + yy;
    int j = 0;
    if (B > A) j = static_cast<int>(std::floor(std::sqrt(B * B - A * A) / (2.0 * hu)));
    while (member(j + 1)) ++j;
    while (j >= 0 && !member(j)) --j;
    return j;
}

} // namespace

GrushinFunction sample(const GrushinGrid& grid, const GrushinField& field)
{
    const auto coords = x_coordinates(grid);
    GrushinFunction f{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.x_size(); ++i) {
        std::span<const double> x(coords.data() + i * grid.d, grid.d);
        for (int j = 0; j < grid.Nu; ++j) {
            double v = field(x, grid.u_node(j));
            if (!std::isfinite(v)) throw std::domain_error("sampled value is not finite");
            f.values[i * grid.Nu + j] = v;
        }
    }
    return f;
}

double koranyi_gauge(double xx, double yy, double xy, double du)
{
    const double a = xx + yy, b = 2.0 * du;
    return std::sqrt(std::max(0.0, std::sqrt(a * a + b * b) - 2.0 * xy));
}

double koranyi_distance(const GrushinPoint& g, const GrushinPoint& h)
{
    if (g.x.size() != h.x.size()) throw std::invalid_argument("points differ in dimension");
    const int d = static_cast<int>(g.x.size());
    return koranyi_gauge(dot(g.x.data(), g.x.data(), d), dot(h.x.data(), h.x.data(), d),
                         dot(g.x.data(), h.x.data(), d), std::abs(g.u - h.u));
}

GrushinPoint dilate(const GrushinPoint& g, double s)
{
    GrushinPoint out{g.x, g.u * s * s};
    for (double& c : out.x) c *= s;
    return out;
}

BallVolume koranyi_ball_volume(const GrushinPoint& g, double r, const GrushinGrid& grid)
{
    if (static_cast<int>(g.x.size()) != grid.d) throw std::invalid_argument("point dimension does not match grid");
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    const int d = grid.d;
    const double xn = std::sqrt(dot(g.x.data(), g.x.data(), d));
    // |u - u'| <= sqrt((r^2 - |x-x'|^2)(r^2 + |x+x'|^2)) / 2 inside the ball.
    const double U = 0.5 * r * std::sqrt(r * r + (2.0 * xn + r) * (2.0 * xn + r));
    for (double c : g.x)
        if (c - r < -grid.Lx || c + r > grid.Lx) throw std::domain_error("Korányi ball leaves the grid in x");
    if (g.u - U < -grid.Lu || g.u + U > grid.Lu) throw std::domain_error("Korányi ball leaves the grid in u");

    auto lo_index = [](double v, double L, double h, int N) {
        return std::clamp(static_cast<int>(std::floor((v + L) / h - 0.5)) - 1, 0, N - 1);
    };
    auto hi_index = [](double v, double L, double h, int N) {
        return std::clamp(static_cast<int>(std::ceil((v + L) / h - 0.5)) + 1, 0, N - 1);
    };
    std::vector<int> lo(d), hi(d);
    for (int a = 0; a < d; ++a) {
        lo[a] = lo_index(g.x[a] - r, grid.Lx, grid.hx, grid.Nx);
        hi[a] = hi_index(g.x[a] + r, grid.Lx, grid.hx, grid.Nx);
    }
    const int ulo = lo_index(g.u - U, grid.Lu, grid.hu, grid.Nu);
    const int uhi = hi_index(g.u + U, grid.Lu, grid.hu, grid.Nu);

    const double gg = dot(g.x.data(), g.x.data(), d);
    std::size_t inside = 0, mixed = 0;
    std::vector<int> idx(lo);
    std::vector<double> y(d), corner(d);
    const int corners = 1 << (d + 1);
    for (;;) {
        for (int a = 0; a < d; ++a) y[a] = grid.x_node(idx[a]);
        const double yy = dot(y.data(), y.data(), d), gy = dot(g.x.data(), y.data(), d);
        for (int j = ulo; j <= uhi; ++j) {
            const double u = grid.u_node(j);
            if (in_koranyi_ball(koranyi_gauge(gg, yy, gy, std::abs(g.u - u)), r)) ++inside;
            int in = 0;
            for (int c = 0; c < corners; ++c) {
                for (int a = 0; a < d; ++a) corner[a] = y[a] + (((c >> a) & 1) ? 0.5 : -0.5) * grid.hx;
                const double cu = u + (((c >> d) & 1) ? 0.5 : -0.5) * grid.hu;
                const double cc = dot(corner.data(), corner.data(), d), gc = dot(g.x.data(), corner.data(), d);
                in += in_koranyi_ball(koranyi_gauge(gg, cc, gc, std::abs(g.u - cu)), r) ? 1 : 0;
            }
            if (in != 0 && in != corners) ++mixed;
        }
        int a = d - 1;
        while (a >= 0 && ++idx[a] > hi[a]) {
            idx[a] = lo[a];
            --a;
        }
        if (a < 0) break;
    }
    return BallVolume{static_cast<double>(inside) * grid.cell_volume(), static_cast<double>(mixed) * grid.cell_volume()};
}

namespace {

// Lattice count of the ball around (x, 0) over the infinite x lattice
// through x and all u offsets, per radius.
std::vector<double> lattice_counts(const GrushinGrid& grid, std::span<const int> index, const RadiiSet& R)
{
    const int d = grid.d;
    const int K = static_cast<int>(R.size());
    const int reach = static_cast<int>(std::floor(R.max() / grid.hx)) + 1;
    std::vector<double> x(d), y(d);
    for (int a = 0; a < d; ++a) x[a] = grid.x_node(index[a]);
    const double xx = dot(x.data(), x.data(), d);
    std::vector<double> count(K, 0.0);
    std::vector<int> o(d, -reach);
    for (;;) {
        for (int a = 0; a < d; ++a) y[a] = grid.x_node(index[a] + o[a]);
        const double yy = dot(y.data(), y.data(), d), xy = dot(x.data(), y.data(), d);
        if (u_reach(xx, yy, xy, R.max(), grid.hu) >= 0) {
            for (int k = 0; k < K; ++k) {
                int J = u_reach(xx, yy, xy, R.radii()[k], grid.hu);
                if (J >= 0) count[k] += 2.0 * J + 1.0;
            }
        }
        int a = d - 1;
        while (a >= 0 && ++o[a] > reach) {
            o[a] = -reach;
            --a;
        }
        if (a < 0) break;
    }
    return count;
}

// Counts per x node, shared across the hyperoctahedral symmetry of the grid.
std::vector<std::vector<double>> all_counts(const GrushinGrid& grid, const RadiiSet& R)
{
    const std::size_t n = grid.x_size();
    std::map<std::vector<int>, std::size_t> keys;
    std::vector<std::size_t> key_of(n);
    std::vector<std::vector<int>> reps;
    std::vector<int> idx(grid.d);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (int a = grid.d - 1; a >= 0; --a) {
            int v = static_cast<int>(rest % grid.Nx);
            idx[a] = std::min(v, grid.Nx - 1 - v);
            rest /= grid.Nx;
        }
        std::sort(idx.begin(), idx.end());
        auto [it, fresh] = keys.emplace(idx, reps.size());
        if (fresh) reps.push_back(idx);
        key_of[i] = it->second;
    }
    std::vector<std::vector<double>> unique(reps.size());
    parallel_for(reps.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) unique[k] = lattice_counts(grid, reps[k], R);
    });
    std::vector<std::vector<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = unique[key_of[i]];
    return out;
}

} // namespace

GrushinFunction grushin_maximal(const GrushinFunction& f, const RadiiSet& R, GrushinMethod method)
{
    const GrushinGrid& grid = f.grid;
    if (f.values.size() != grid.size()) throw std::invalid_argument("values do not match the grid");
    const int d = grid.d, Nu = grid.Nu;
    const int K = static_cast<int>(R.size());
    const std::size_t nx = grid.x_size();
    if (method == GrushinMethod::automatic) method = grid.size() <= 4096 ? GrushinMethod::direct : GrushinMethod::prefix;

    std::vector<double> v(f.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f.values[i]);
    const auto coords = x_coordinates(grid);
    std::vector<double> norms(nx);
    for (std::size_t i = 0; i < nx; ++i) norms[i] = dot(&coords[i * d], &coords[i * d], d);
    const auto counts = all_counts(grid, R);

    std::vector<double> prefix;
    if (method == GrushinMethod::prefix) {
        prefix.assign(nx * (Nu + 1), 0.0);
        for (std::size_t i = 0; i < nx; ++i)
            for (int j = 0; j < Nu; ++j) prefix[i * (Nu + 1) + j + 1] = prefix[i * (Nu + 1) + j] + v[i * Nu + j];
    }

    GrushinFunction out{grid, std::vector<double>(grid.size())};
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        std::vector<double> sums(static_cast<std::size_t>(Nu) * K);
        std::vector<int> J(K), first;
        for (std::size_t ix = begin; ix < end; ++ix) {
            std::fill(sums.begin(), sums.end(), 0.0);
            const double* x = &coords[ix * d];
            for (std::size_t iy = 0; iy < nx; ++iy) {
                const double xy = dot(x, &coords[iy * d], d);
                if (u_reach(norms[ix], norms[iy], xy, R.max(), grid.hu) < 0) continue;
                for (int k = 0; k < K; ++k) J[k] = u_reach(norms[ix], norms[iy], xy, R.radii()[k], grid.hu);
                const double* fiber = &v[iy * Nu];
                if (method == GrushinMethod::direct) {
                    const int reach = std::min(J[K - 1], Nu - 1);
                    first.assign(reach + 1, 0);
                    for (int j = 0, k = 0; j <= reach; ++j) {
                        while (J[k] < j) ++k;
                        first[j] = k;
                    }
                    for (int iu = 0; iu < Nu; ++iu) {
                        double* s = &sums[static_cast<std::size_t>(iu) * K];
                        const int lo = std::max(0, iu - reach), hi = std::min(Nu - 1, iu + reach);
                        for (int ju = lo; ju <= hi; ++ju) {
                            const double val = fiber[ju];
                            for (int k = first[std::abs(ju - iu)]; k < K; ++k) s[k] += val;
                        }
                    }
                } else {
                    const double* P = &prefix[iy * (Nu + 1)];
                    for (int iu = 0; iu < Nu; ++iu) {
                        double* s = &sums[static_cast<std::size_t>(iu) * K];
                        for (int k = 0; k < K; ++k) {
                            if (J[k] < 0) continue;
                            s[k] += P[std::min(iu + J[k], Nu - 1) + 1] - P[std::max(iu - J[k], 0)];
                        }
                    }
                }
            }
            for (int iu = 0; iu < Nu; ++iu) {
                double best = v[ix * Nu + iu];
                for (int k = 0; k < K; ++k)
                    if (counts[ix][k] > 0.0) best = std::max(best, sums[static_cast<std::size_t>(iu) * K + k] / counts[ix][k]);
                out.values[ix * Nu + iu] = best;
            }
        }
    });
    return out;
}

GrushinFunction iterated_maximal(const GrushinFunction& f, const RadiiSet& R_x, const RadiiSet& R_u)
{
    const GrushinGrid& grid = f.grid;
    if (f.values.size() != grid.size()) throw std::invalid_argument("values do not match the grid");
    std::vector<int> extent(grid.d, grid.Nx);
    extent.push_back(grid.Nu);
    const auto along_u = maximal_along_axis(f.values, extent, grid.d, grid.hu, R_u);

    const GridSpec xs = grid.x_spec();
    const std::size_t nx = grid.x_size();
    std::vector<GridFunction> slices;
    slices.reserve(grid.Nu);
    std::vector<double> slice(nx);
    for (int j = 0; j < grid.Nu; ++j) {
        for (std::size_t i = 0; i < nx; ++i) slice[i] = along_u[i * grid.Nu + j];
        slices.push_back(from_real(xs, slice));
    }
    const auto mx = hl_maximal(VectorField(std::move(slices)), R_x);
    GrushinFunction out{grid, std::vector<double>(grid.size())};
    for (int j = 0; j < grid.Nu; ++j)
        for (std::size_t i = 0; i < nx; ++i) out.values[i * grid.Nu + j] = mx[j][i].real();
    return out;
}

RadiiSet default_koranyi_radii(const GrushinGrid& grid, int K)
{
    const double lo = std::min(grid.hx, std::sqrt(2.0 * grid.hu));
    const double hi = 2.0 * std::pow(grid.d * std::pow(grid.Lx, 4) + 4.0 * grid.Lu * grid.Lu, 0.25);
    return log_radii(lo, hi, K);
}

RadiiSet default_x_radii(const GrushinGrid& grid, int K) { return default_radii(grid.x_spec(), K); }

RadiiSet default_u_radii(const GrushinGrid& grid, int K) { return log_radii(grid.hu, 2.0 * grid.Lu, K); }

double domination_constant(const GrushinFunction& mk, const GrushinFunction& iterated)
{
    if (mk.values.size() != iterated.values.size()) throw std::invalid_argument("grids differ");
    const double top = *std::max_element(iterated.values.begin(), iterated.values.end());
    double c = 0.0;
    for (std::size_t i = 0; i < mk.values.size(); ++i)
        if (iterated.values[i] >= 1e-3 * top && iterated.values[i] > 0.0)
            c = std::max(c, mk.values[i] / iterated.values[i]);
    return c;
}

std::string cc_domination_note()
{
    return "M_CC f <= (1/C) M_K f by the equivalence of d_CC and d_K; "
           "d_CC and B_CC are not computed; "
           "M_CC is covered only through M_K f <= C_meas M_R^d(M_R f(.;u))(x)";
}

} // namespace maxop
