#include "checks.hpp"

#include "maxop/multiplier.hpp"
#include "maxop/scan.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_contract = 2;

const char* const config_fields[] = {"operator", "d_range", "p_list", "q_list", "family", "n_members",
                                     "grid",     "radii_K", "seed",   "l",      "k"};

struct ScanArgs {
    std::string config;
    std::string out;
    std::string plot;
    std::map<std::string, std::string> fields;
};

void add_scan_options(CLI::App* cmd, ScanArgs& args)
{
    cmd->add_option("--config", args.config, "JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out, "CSV output path (stdout when omitted)");
    cmd->add_option("--plot", args.plot, "plot-data output path");
    for (const char* f : config_fields) cmd->add_option(std::string("--") + f, args.fields[f]);
}

maxop::ScanConfig build_config(const ScanArgs& args)
{
    maxop::ScanConfig cfg = args.config.empty() ? maxop::ScanConfig{} : maxop::load_config(args.config);
    for (const auto& [key, value] : args.fields)
        if (!value.empty()) maxop::set_field(cfg, key, value);
    maxop::validate(cfg);
    return cfg;
}

int emit(const maxop::ScanReport& report, const ScanArgs& args)
{
    if (args.out.empty()) maxop::emit_csv(report, std::cout);
    else maxop::emit_csv(report, args.out);
    if (!args.plot.empty()) maxop::emit_plotdata(report, args.plot);
    for (const auto& r : report.rows)
        if (r.extra.rfind("error=", 0) == 0) return exit_contract;
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Maximal operators on discretized grids"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "norm-ratio sweep over dimensions and exponents");
    add_scan_options(scan, scan_args);

    ScanArgs grushin_args;
    auto* grushin = app.add_subcommand("grushin", "MK and MK_iter sweeps");
    add_scan_options(grushin, grushin_args);

    int decay_d = 3, decay_lmax = 8;
    std::string decay_out;
    auto* decay = app.add_subcommand("decay", "normalized decay constants of the dyadic pieces");
    decay->add_option("--d", decay_d, "dimension")->check(CLI::Range(3, 64));
    decay->add_option("--l_max", decay_lmax, "largest dyadic index")->check(CLI::Range(2, 20));
    decay->add_option("--out", decay_out, "CSV output path (stdout when omitted)");

    std::vector<int> only;
    auto* check = app.add_subcommand("check", "run the property suite");
    check->add_option("--only", only, "criterion ids to run")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*scan) return emit(maxop::run_scan(build_config(scan_args)), scan_args);

        if (*grushin) {
            maxop::ScanConfig cfg = build_config(grushin_args);
            maxop::ScanReport all;
            for (maxop::Operator op : {maxop::Operator::MK, maxop::Operator::MK_iter}) {
                cfg.op = op;
                auto rows = maxop::run_scan(cfg).rows;
                all.rows.insert(all.rows.end(), rows.begin(), rows.end());
            }
            return emit(all, grushin_args);
        }

        if (*decay) {
            const auto rows = maxop::decay_constants(decay_d, decay_lmax);
            if (decay_out.empty()) {
                maxop::write_decay_csv(std::cout, rows);
            } else {
                std::ofstream out(decay_out);
                if (!out) throw std::runtime_error("cannot write " + decay_out);
                maxop::write_decay_csv(out, rows);
            }
            return exit_ok;
        }

        if (*check) return maxop::check::run_checks(only, std::cout) == 0 ? exit_ok : exit_contract;
    } catch (const std::invalid_argument& e) {
        std::cerr << "maxop: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "maxop: " << e.what() << '\n';
        return exit_contract;
    }
    return exit_usage;
}
