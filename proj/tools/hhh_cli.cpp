#include <iostream>

#include "CLI11.hpp"
#include "hhh/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Triply graded homology of braid closures"};
    hhh::Config cfg;
    std::vector<std::string> renders, cutoffs;
    std::string format = "json", norm;
    bool no_simplify = false;
    app.add_option("--strands,-n", cfg.strands, "strand count")->required();
    app.add_option("--braid,-b", cfg.braid, "whitespace-separated signed generators, e.g. \"1 1 1\"");
    app.add_option("--cutoff", cutoffs, "q bound, or axis=bound for q, a, X, C");
    app.add_option("--render", renders, "qat, QAT, QpApTp or tilde; repeatable");
    app.add_flag("--no-simplify", no_simplify, "skip Gaussian elimination");
    app.add_flag("--support", cfg.support, "run the support report");
    app.add_option("--power-bound", cfg.power_bound, "largest power tried in nilpotence tests");
    app.add_option("--jobs,-j", cfg.jobs, "worker count");
    app.add_option("--cache-dir", cfg.cache_dir, "directory for cached complexes");
    app.add_option("--out-dir", cfg.out_dir, "directory for JSON artifacts");
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--normalization", norm, "per positive crossing shift dX,dh,da");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        cfg.simplify = !no_simplify;
        cfg.table_format = format == "table";
        for (auto& c : cutoffs) hhh::parse_cutoff(c, cfg);
        if (!renders.empty()) {
            cfg.renders.clear();
            for (auto& r : renders) cfg.renders.push_back(hhh::parse_render(r));
        }
        if (!norm.empty()) cfg.normalization = hhh::parse_normalization(norm);
    } catch (const hhh::CliError& e) {
        std::cerr << nlohmann::json{{"error", e.code}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "config_error"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return hhh::run(cfg, std::cout, std::cerr);
}
