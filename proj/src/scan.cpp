#include "maxop/scan.hpp"

#include "maxop/euclidean_max.hpp"
#include "maxop/grushin.hpp"
#include "maxop/multiplier.hpp"
#include "maxop/rotations.hpp"
#include "maxop/squarefn.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace maxop {

namespace {

const std::vector<std::pair<Operator, std::string>> operator_names = {
    {Operator::HL, "HL"},         {Operator::HL_weighted, "HL_weighted"}, {Operator::SPH, "SPH"},
    {Operator::MULT_L, "MULT_L"}, {Operator::SQFN, "SQFN"},               {Operator::DESCENT, "DESCENT"},
    {Operator::MK, "MK"},         {Operator::MK_iter, "MK_iter"},
};

} // namespace

Operator parse_operator(const std::string& name)
{
    for (const auto& [op, n] : operator_names)
        if (n == name) return op;
    throw std::invalid_argument("unknown operator '" + name + "'");
}

std::string to_string(Operator op)
{
    for (const auto& [o, n] : operator_names)
        if (o == op) return n;
    return "unknown";
}

GridChoice default_grid(int d)
{
    if (d <= 3) return {4.0, 32};
    if (d <= 5) return {4.0, 16};
    return {4.0, 8};
}

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

long long parse_int(const std::string& s)
{
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

double parse_double(const std::string& s)
{
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

Exponent make_exponent(double p) { return std::isinf(p) ? Exponent::infinity() : Exponent(p); }

std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    for (const auto& item : split(s, ',')) {
        auto dots = item.find("..");
        if (dots != std::string::npos) {
            int lo = static_cast<int>(parse_int(trim(item.substr(0, dots))));
            int hi = static_cast<int>(parse_int(trim(item.substr(dots + 2))));
            if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(static_cast<int>(parse_int(item)));
        }
    }
    return out;
}

std::vector<Exponent> parse_exponent_list(const std::string& s)
{
    std::vector<Exponent> out;
    for (const auto& item : split(s, ',')) out.push_back(make_exponent(parse_double(item)));
    return out;
}

// JSON scalars and arrays back to the command-line spelling.
std::string flatten(const nlohmann::json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + flatten(v[i]);
        return out;
    }
    if (v.is_object() && v.contains("L") && v.contains("N")) return flatten(v["L"]) + "," + flatten(v["N"]);
    throw std::invalid_argument("unsupported configuration value " + v.dump());
}

} // namespace

void set_field(ScanConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "operator") cfg.op = parse_operator(value);
    else if (key == "d_range") cfg.d_range = parse_int_list(value);
    else if (key == "p_list") cfg.p_list = parse_exponent_list(value);
    else if (key == "q_list") cfg.q_list = parse_exponent_list(value);
    else if (key == "family") cfg.family = parse_family(value);
    else if (key == "n_members") cfg.n_members = static_cast<int>(parse_int(value));
    else if (key == "grid") {
        auto parts = split(value, ',');
        if (parts.size() != 2) throw std::invalid_argument("grid must be 'L,N'");
        cfg.grid = GridChoice{parse_double(parts[0]), static_cast<int>(parse_int(parts[1]))};
    } else if (key == "radii_K") cfg.radii_K = static_cast<int>(parse_int(value));
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "l") cfg.l = static_cast<int>(parse_int(value));
    else if (key == "k") cfg.k = static_cast<int>(parse_int(value));
    else throw std::invalid_argument("unknown configuration key '" + key + "'");
}

ScanConfig parse_config(const std::string& json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");
    ScanConfig cfg;
    for (const auto& [key, value] : j.items()) set_field(cfg, key, flatten(value));
    validate(cfg);
    return cfg;
}

ScanConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const ScanConfig& cfg)
{
    if (cfg.d_range.empty() || cfg.p_list.empty() || cfg.q_list.empty())
        throw std::invalid_argument("d_range, p_list and q_list must be nonempty");
    for (int d : cfg.d_range)
        if (d < 1) throw std::invalid_argument("dimensions must be >= 1");
    if (cfg.n_members < 1) throw std::invalid_argument("n_members must be >= 1");
    if (cfg.radii_K < 2) throw std::invalid_argument("radii_K must be >= 2");
    if (cfg.grid && (!(cfg.grid->L > 0.0) || cfg.grid->N < 4 || cfg.grid->N % 2 != 0))
        throw std::invalid_argument("grid needs L > 0 and even N >= 4");
    if (cfg.l < 0 || (cfg.op == Operator::SQFN && cfg.l < 1)) throw std::invalid_argument("l out of range");
    if (cfg.k < 0) throw std::invalid_argument("k must be >= 0");
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    return s;
}

// Operator output on one dimension, shared by every (p, q).
struct Outputs {
    std::vector<std::vector<double>> in;
    std::vector<std::vector<double>> out;
    double cell = 1.0;
    double ms = 0.0;
    std::string extra;
    std::string error;
};

double lq_at(const std::vector<std::vector<double>>& F, std::size_t i, Exponent q)
{
    if (q.is_infinite()) {
        double m = 0.0;
        for (const auto& f : F) m = std::max(m, std::abs(f[i]));
        return m;
    }
    std::vector<double> terms(F.size());
    for (std::size_t n = 0; n < F.size(); ++n) terms[n] = std::pow(std::abs(F[n][i]), q.value());
    return std::pow(pairwise_sum(terms), 1.0 / q.value());
}

// Mixed norm over arbitrary cells; used for the anisotropic Grushin grid.
double mixed_norm_values(const std::vector<std::vector<double>>& F, double cell, Exponent p, Exponent q)
{
    const std::size_t n = F.front().size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lq_at(F, i, q);
    if (p.is_infinite()) return *std::max_element(g.begin(), g.end());
    for (double& v : g) v = std::pow(v, p.value());
    return std::pow(pairwise_sum(g) * cell, 1.0 / p.value());
}

std::vector<double> real_values(const GridFunction& f) { return f.real_part(); }

GrushinGrid grushin_grid(int d, const std::optional<GridChoice>& choice)
{
    GridChoice g = choice.value_or(GridChoice{4.0, d == 1 ? 32 : d == 2 ? 16 : d == 3 ? 12 : 8});
    return make_grushin_grid(d, g.L, g.N, 0.5 * g.L * g.L, g.N);
}

std::string grid_extra(const GridSpec& spec, int K)
{
    return "L=" + num(spec.L) + ";N=" + std::to_string(spec.N) + ";K=" + std::to_string(K);
}

// Least-squares slope of log M against log |x| over grid nodes with
// |x| in [2, 4].
double grid_decay_slope(const GridFunction& m)
{
    const GridSpec& spec = m.spec();
    std::vector<double> x(spec.d);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        node_coordinates(spec, i, x);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        const double r = std::sqrt(r2);
        const double v = m[i].real();
        if (r < 2.0 || r > 4.0 || !(v > 0.0)) continue;
        const double lx = std::log(r), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        n += 1.0;
    }
    if (n < 2.0) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outputs euclidean_outputs(const ScanConfig& cfg, int d, int d_prime)
{
    Outputs o;
    const GridChoice gc = cfg.grid.value_or(default_grid(d));
    const GridSpec spec = make_grid(d, gc.L, gc.N);
    o.cell = spec.cell_volume();
    const VectorField F = make_family(cfg.family, spec, cfg.n_members, cfg.seed);
    for (const auto& f : F.members()) o.in.push_back(real_values(f));
    const RadiiSet R = default_radii(spec, cfg.radii_K);
    o.extra = grid_extra(spec, cfg.radii_K);

    const auto t0 = Clock::now();
    std::vector<GridFunction> out;
    switch (cfg.op) {
    case Operator::HL: out = hl_maximal(F, R); break;
    case Operator::HL_weighted:
        out = weighted_maximal(F, cfg.k, R);
        o.extra += ";k=" + std::to_string(cfg.k);
        break;
    case Operator::SPH:
        if (d < 2) throw std::invalid_argument("spherical maximal operator needs d >= 2");
        out = spherical_maximal(F, d, R);
        if (cfg.family == Family::remark_bump) {
            o.extra += ";slope=" + num(remark_decay_slope(d)) + ";grid_slope=" + num(grid_decay_slope(out.front()));
        }
        break;
    case Operator::MULT_L:
        out = maximal_multiplier(F, dyadic_piece(d, cfg.l), R);
        o.extra += ";l=" + std::to_string(cfg.l);
        break;
    case Operator::SQFN: {
        const RadialProfile omega = bump(cfg.l);
        out = square_function(F, omega, make_tgrid(omega, spec));
        o.extra += ";omega=phi_" + std::to_string(cfg.l);
        break;
    }
    case Operator::DESCENT: {
        const DescentSplit split = make_split(d, d_prime);
        const RotationMatrix theta = haar_rotation(d, derive_seed(cfg.seed, static_cast<std::uint64_t>(d)));
        for (const auto& f : F.members()) out.push_back(descent_maximal(f, theta, split, R));
        o.extra += ";d_prime=" + std::to_string(d_prime);
        break;
    }
    default: throw std::logic_error("not a Euclidean operator");
    }
    o.ms = elapsed_ms(t0);
    for (const auto& g : out) o.out.push_back(real_values(g));
    return o;
}

Outputs grushin_outputs(const ScanConfig& cfg, int d)
{
    Outputs o;
    const GrushinGrid grid = grushin_grid(d, cfg.grid);
    o.cell = grid.cell_volume();
    const auto members = make_family(cfg.family, grid, cfg.n_members, cfg.seed);
    for (const auto& f : members) o.in.push_back(f.values);
    const RadiiSet Rk = default_koranyi_radii(grid, cfg.radii_K);
    const RadiiSet Rx = default_x_radii(grid, cfg.radii_K), Ru = default_u_radii(grid, cfg.radii_K);
    o.extra = "Lx=" + num(grid.Lx) + ";Lu=" + num(grid.Lu) + ";Nx=" + std::to_string(grid.Nx) +
              ";Nu=" + std::to_string(grid.Nu) + ";K=" + std::to_string(cfg.radii_K);

    const auto t0 = Clock::now();
    double c_meas = 0.0;
    for (const auto& f : members) {
        GrushinFunction iter = iterated_maximal(f, Rx, Ru);
        if (cfg.op == Operator::MK) {
            GrushinFunction mk = grushin_maximal(f, Rk);
            if (*std::max_element(iter.values.begin(), iter.values.end()) > 0.0)
                c_meas = std::max(c_meas, domination_constant(mk, iter));
            o.out.push_back(std::move(mk.values));
        } else {
            o.out.push_back(std::move(iter.values));
        }
    }
    o.ms = elapsed_ms(t0);
    if (cfg.op == Operator::MK) o.extra += ";C_meas=" + num(c_meas);
    o.extra += ";note=" + cc_domination_note();
    return o;
}

Outputs compute(const ScanConfig& cfg, int d, int d_prime)
{
    try {
        if (cfg.op == Operator::MK || cfg.op == Operator::MK_iter) return grushin_outputs(cfg, d);
        return euclidean_outputs(cfg, d, d_prime);
    } catch (const std::exception& e) {
        Outputs o;
        o.error = sanitize(e.what());
        return o;
    }
}

double exponent_value(Exponent e) { return e.is_infinite() ? std::numeric_limits<double>::infinity() : e.value(); }

} // namespace

ScanReport run_scan(const ScanConfig& cfg)
{
    validate(cfg);
    ScanReport report;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int d : cfg.d_range) {
        std::map<int, Outputs> cache;
        for (Exponent p : cfg.p_list) {
            for (Exponent q : cfg.q_list) {
                ScanRow row{to_string(cfg.op), d, exponent_value(p), exponent_value(q), to_string(cfg.family),
                            cfg.n_members, nan, nan, nan, 0.0, ""};
                int d_prime = 0;
                if (cfg.op == Operator::DESCENT) {
                    try {
                        d_prime = dimension_split(p, q);
                    } catch (const std::exception& e) {
                        row.extra = "error=" + sanitize(e.what());
                        report.rows.push_back(row);
                        continue;
                    }
                    if (d_prime > d) {
                        row.extra = "error=d_prime " + std::to_string(d_prime) + " exceeds d";
                        report.rows.push_back(row);
                        continue;
                    }
                }
                const auto t0 = Clock::now();
                bool fresh = !cache.count(d_prime);
                if (fresh) cache.emplace(d_prime, compute(cfg, d, d_prime));
                const Outputs& o = cache.at(d_prime);
                if (!o.error.empty()) {
                    row.extra = "error=" + o.error;
                    report.rows.push_back(row);
                    continue;
                }
                try {
                    row.input_norm = mixed_norm_values(o.in, o.cell, p, q);
                    row.output_norm = mixed_norm_values(o.out, o.cell, p, q);
                    row.ratio = row.output_norm / row.input_norm;
                    row.extra = o.extra;
                } catch (const std::exception& e) {
                    row.extra = "error=" + sanitize(e.what());
                }
                row.wall_ms = elapsed_ms(t0);
                report.rows.push_back(row);
            }
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(), [](const ScanRow& a, const ScanRow& b) {
        if (a.op != b.op) return a.op < b.op;
        if (a.d != b.d) return a.d < b.d;
        if (a.p != b.p) return a.p < b.p;
        return a.q < b.q;
    });
    return report;
}

namespace {

void write_rows(const ScanReport& report, std::ostream& out, bool with_time)
{
    out << csv_header << '\n';
    for (const auto& r : report.rows) {
        out << r.op << ',' << r.d << ',' << num(r.p) << ',' << num(r.q) << ',' << r.family << ',' << r.n_members
            << ',' << num(r.input_norm) << ',' << num(r.output_norm) << ',' << num(r.ratio) << ','
            << (with_time ? num(r.wall_ms) : "") << ',' << r.extra << '\n';
    }
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

} // namespace

void emit_csv(const ScanReport& report, std::ostream& out) { write_rows(report, out, true); }

void emit_csv(const ScanReport& report, const std::string& path)
{
    auto out = open_output(path);
    emit_csv(report, out);
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string deterministic_csv(const ScanReport& report)
{
    std::ostringstream out;
    write_rows(report, out, false);
    return out.str();
}

ScanReport parse_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header) throw std::invalid_argument("missing CSV header");
    ScanReport report;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 11) throw std::invalid_argument("CSV row needs 11 fields");
        auto number = [](const std::string& s) {
            return s == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse_double(s);
        };
        report.rows.push_back(ScanRow{f[0], static_cast<int>(parse_int(f[1])), number(f[2]), number(f[3]), f[4],
                                      static_cast<int>(parse_int(f[5])), number(f[6]), number(f[7]), number(f[8]),
                                      f[9].empty() ? 0.0 : number(f[9]), f[10]});
    }
    return report;
}

void emit_plotdata(const ScanReport& report, std::ostream& out)
{
    std::vector<std::tuple<std::string, double, double>> keys;
    for (const auto& r : report.rows) {
        auto key = std::make_tuple(r.op, r.p, r.q);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    bool first = true;
    for (const auto& [op, p, q] : keys) {
        if (!first) out << '\n';
        first = false;
        out << "# operator=" << op << " p=" << num(p) << " q=" << num(q) << '\n';
        for (const auto& r : report.rows)
            if (r.op == op && r.p == p && r.q == q) out << r.d << ' ' << num(r.ratio) << '\n';
    }
}

void emit_plotdata(const ScanReport& report, const std::string& path)
{
    auto out = open_output(path);
    emit_plotdata(report, out);
    if (!out) throw std::runtime_error("write failed for " + path);
}

double remark_decay_slope(int d, int points)
{
    if (points < 2) throw std::invalid_argument("need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < points; ++i) {
        const double rho = 2.0 + 2.0 * i / (points - 1);
        auto mean = [&](double r) { return radial_sphere_mean(remark_bump_profile, d, rho, r); };
        const double m = sup_abs(mean, rho - 1.0, rho + 1.0, 1.0 / 64.0);
        const double lx = std::log(rho), ly = std::log(m);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

} // namespace maxop
