#include "doctest.h"

#include "maxop/scan.hpp"

#include <cmath>
#include <sstream>

using namespace maxop;

namespace {

ScanConfig small_hl()
{
    ScanConfig cfg;
    cfg.d_range = {1, 2, 3};
    cfg.grid = GridChoice{4.0, 12};
    cfg.radii_K = 8;
    cfg.n_members = 3;
    return cfg;
}

std::string csv_of(const ScanReport& r)
{
    std::ostringstream out;
    emit_csv(r, out);
    return out.str();
}

} // namespace

TEST_CASE("header only for an empty report")
{
    CHECK(csv_of(ScanReport{}) == std::string(csv_header) + "\n");
    CHECK(std::string(csv_header) == "operator,d,p,q,family,n_members,input_norm,output_norm,ratio,wall_ms,extra");
    std::ostringstream plot;
    emit_plotdata(ScanReport{}, plot);
    CHECK(plot.str().empty());
}

TEST_CASE("a row survives a CSV round trip")
{
    ScanReport r;
    r.rows.push_back({"HL", 2, 2.0, 1.5, "gaussian", 4, 0.1 + 0.2, 1.0 / 3.0, (1.0 / 3.0) / (0.1 + 0.2), 12.5, "a=1;b=2"});
    std::istringstream in(csv_of(r));
    const auto back = parse_csv(in);
    REQUIRE(back.rows.size() == 1);
    const auto& b = back.rows[0];
    CHECK(b.op == "HL");
    CHECK(b.d == 2);
    CHECK(b.p == 2.0);
    CHECK(b.q == 1.5);
    CHECK(b.family == "gaussian");
    CHECK(b.n_members == 4);
    CHECK(b.input_norm == r.rows[0].input_norm);
    CHECK(b.output_norm == r.rows[0].output_norm);
    CHECK(b.ratio == r.rows[0].ratio);
    CHECK(b.wall_ms == 12.5);
    CHECK(b.extra == "a=1;b=2");

    std::istringstream bad("not,a,header\n");
    CHECK_THROWS_AS(parse_csv(bad), std::invalid_argument);
}

TEST_CASE("ball operator scan: ratios, ordering, determinism")
{
    const ScanConfig cfg = small_hl();
    const auto a = run_scan(cfg);
    REQUIRE(a.rows.size() == 3);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& r = a.rows[i];
        CHECK(r.op == "HL");
        CHECK(r.d == static_cast<int>(i) + 1);
        CHECK(r.ratio >= 1.0 - 1e-12);
        CHECK(r.ratio == doctest::Approx(r.output_norm / r.input_norm).epsilon(1e-12));
        CHECK(r.wall_ms >= 0.0);
    }
    CHECK(deterministic_csv(a) == deterministic_csv(run_scan(cfg)));

    std::istringstream in(csv_of(a));
    for (const auto& r : parse_csv(in).rows) CHECK(r.ratio == doctest::Approx(r.output_norm / r.input_norm).epsilon(1e-12));
}

TEST_CASE("a single member makes the ratio independent of q")
{
    ScanConfig cfg = small_hl();
    cfg.d_range = {2};
    cfg.n_members = 1;
    cfg.q_list = {Exponent(1.5), Exponent(2.0), Exponent(4.0)};
    const auto rep = run_scan(cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& r : rep.rows) CHECK(r.ratio == doctest::Approx(rep.rows[0].ratio).epsilon(1e-12));
}

TEST_CASE("rows a module rejects carry an error tag")
{
    ScanConfig cfg = small_hl();
    cfg.op = Operator::SPH;
    cfg.d_range = {1};
    const auto rep = run_scan(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].extra.rfind("error=", 0) == 0);
    CHECK(std::isnan(rep.rows[0].ratio));
    CHECK(csv_of(rep).find(",nan,") != std::string::npos);
}

TEST_CASE("plot data blocks")
{
    ScanConfig cfg = small_hl();
    cfg.d_range = {1, 2};
    cfg.p_list = {Exponent(2.0), Exponent(3.0)};
    std::ostringstream out;
    emit_plotdata(run_scan(cfg), out);
    const std::string s = out.str();
    CHECK(s.find("# operator=HL p=2 q=2\n1 ") != std::string::npos);
    CHECK(s.find("\n\n# operator=HL p=3 q=2\n") != std::string::npos);
}

TEST_CASE("configuration parsing")
{
    const auto cfg = parse_config(R"({"operator": "MULT_L", "d_range": "1..4", "p_list": [2, 3.5],
                                      "q_list": "1.5,inf", "family": "random_bumps", "n_members": 2,
                                      "grid": {"L": 3, "N": 16}, "radii_K": 12, "seed": 9, "l": 2})");
    CHECK(cfg.op == Operator::MULT_L);
    CHECK(cfg.d_range == std::vector<int>{1, 2, 3, 4});
    REQUIRE(cfg.p_list.size() == 2);
    CHECK(cfg.p_list[1].value() == 3.5);
    CHECK(cfg.q_list[1].is_infinite());
    CHECK(cfg.family == Family::random_bumps);
    CHECK(cfg.n_members == 2);
    REQUIRE(cfg.grid.has_value());
    CHECK(cfg.grid->L == 3.0);
    CHECK(cfg.grid->N == 16);
    CHECK(cfg.radii_K == 12);
    CHECK(cfg.seed == 9u);
    CHECK(cfg.l == 2);

    ScanConfig c;
    set_field(c, "d_range", "1..3,6");
    CHECK(c.d_range == std::vector<int>{1, 2, 3, 6});
    set_field(c, "grid", "2.5,8");
    CHECK(c.grid->N == 8);
    CHECK_THROWS_AS(set_field(c, "d_range", "4..2"), std::invalid_argument);
    CHECK_THROWS_AS(set_field(c, "colour", "red"), std::invalid_argument);
    CHECK_THROWS_AS(set_field(c, "operator", "HLX"), std::invalid_argument);
    CHECK_THROWS_AS(set_field(c, "p_list", "1.0"), std::invalid_argument);
    CHECK_THROWS_AS(set_field(c, "grid", "4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[1, 2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"n_members": 0})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"grid": "4,7"})"), std::invalid_argument);
}

TEST_CASE("operator and family names round trip")
{
    for (Operator op : {Operator::HL, Operator::HL_weighted, Operator::SPH, Operator::MULT_L, Operator::SQFN,
                        Operator::DESCENT, Operator::MK, Operator::MK_iter})
        CHECK(parse_operator(to_string(op)) == op);
    for (Family f : {Family::gaussian, Family::ball_indicator, Family::remark_bump, Family::random_bumps})
        CHECK(parse_family(to_string(f)) == f);
}

TEST_CASE("grid defaults by dimension")
{
    CHECK(default_grid(1).N == 32);
    CHECK(default_grid(3).N == 32);
    CHECK(default_grid(4).N == 16);
    CHECK(default_grid(5).N == 16);
    CHECK(default_grid(6).N == 8);
    CHECK(default_grid(2).L == 4.0);
}

TEST_CASE("compact bump decays like |x|^-(d-1)")
{
    for (int d : {3, 4}) CHECK(remark_decay_slope(d) == doctest::Approx(-(d - 1.0)).epsilon(0.2 / (d - 1.0)));
}

TEST_CASE("Grushin scans carry the domination note")
{
    ScanConfig cfg;
    cfg.op = Operator::MK;
    cfg.d_range = {1};
    cfg.grid = GridChoice{2.0, 8};
    cfg.radii_K = 6;
    cfg.n_members = 1;
    const auto rep = run_scan(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].extra.find("C_meas=") != std::string::npos);
    CHECK(rep.rows[0].extra.find("M_CC") != std::string::npos);
    CHECK(rep.rows[0].ratio >= 1.0 - 1e-12);
}
