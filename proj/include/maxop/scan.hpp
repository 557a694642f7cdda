#pragma once

#include "maxop/families.hpp"
#include "maxop/norms.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maxop {

enum class Operator { HL, HL_weighted, SPH, MULT_L, SQFN, DESCENT, MK, MK_iter };

Operator parse_operator(const std::string& name);
std::string to_string(Operator op);

struct GridChoice {
    double L = 4.0;
    int N = 32;
};

struct ScanConfig {
    Operator op = Operator::HL;
    std::vector<int> d_range{1, 2, 3};
    std::vector<Exponent> p_list{Exponent(2.0)};
    std::vector<Exponent> q_list{Exponent(2.0)};
    Family family = Family::gaussian;
    int n_members = 4;
    // Per-dimension defaults when unset.
    std::optional<GridChoice> grid;
    int radii_K = 32;
    std::uint64_t seed = 1;
    // Dyadic index for MULT_L and SQFN.
    int l = 1;
    // Weight exponent for HL_weighted.
    int k = 1;
};

GridChoice default_grid(int d);

// Flat JSON object with the ScanConfig field names as keys.
ScanConfig parse_config(const std::string& json_text);
ScanConfig load_config(const std::string& path);
// Sets one field from its command-line spelling: lists are comma-separated,
// integer ranges may be written "1..5", grid is "L,N".
void set_field(ScanConfig& cfg, const std::string& key, const std::string& value);
void validate(const ScanConfig& cfg);

struct ScanRow {
    std::string op;
    int d = 0;
    double p = 0.0;
    double q = 0.0;
    std::string family;
    int n_members = 0;
    double input_norm = 0.0;
    double output_norm = 0.0;
    double ratio = 0.0;
    double wall_ms = 0.0;
    std::string extra;
};

struct ScanReport {
    std::vector<ScanRow> rows;
};

// Rows for every (d, p, q), sorted by (operator, d, p, q). A row whose
// operator rejects its input carries error=... in extra and NaN norms.
ScanReport run_scan(const ScanConfig& cfg);

inline constexpr const char* csv_header =
    "operator,d,p,q,family,n_members,input_norm,output_norm,ratio,wall_ms,extra";

void emit_csv(const ScanReport& report, std::ostream& out);
void emit_csv(const ScanReport& report, const std::string& path);
ScanReport parse_csv(std::istream& in);

// One block per (operator, p, q) of "d ratio" lines, blocks separated by a
// blank line.
void emit_plotdata(const ScanReport& report, std::ostream& out);
void emit_plotdata(const ScanReport& report, const std::string& path);

// CSV with the wall_ms column blanked, for byte comparison across runs.
std::string deterministic_csv(const ScanReport& report);

// Least-squares slope of log M_S f1(x) against log |x| over |x| in [2, 4],
// from sphere quadrature of the compact bump e^{-1/(1-|x|^2)}.
double remark_decay_slope(int d, int points = 9);

} // namespace maxop
