// Command-line driver for the quantum parity check simulator.
//
// Subcommands mirror the experiment's data runs: a single setting, analyzer
// sweeps (Malus-law curves), the electronic-delay scan of the feed-forward
// window, and photon-overlap scans. Output is CSV; summaries go to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qpc/qpc.hpp"

namespace {

struct Options {
    std::string scenario_path;
    std::string out_path; // empty = stdout
    std::string channel = "both";
    uint64_t seed = 0;
    uint64_t shots = 0; // 0 = analytic
    int threads = 1;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file (INI)")->required();
    cmd->add_option("--seed", opt.seed, "Master seed for Monte Carlo runs");
    cmd->add_option("--shots", opt.shots, "Shots per point; omit (or 0) for the analytic engine");
    cmd->add_option("--out", opt.out_path, "CSV destination (default: stdout)");
    cmd->add_option("--channel", opt.channel, "Primary rate column: d2a, d2b or both")
        ->check(CLI::IsMember({"d2a", "d2b", "both"}));
    cmd->add_option("--threads", opt.threads, "Worker threads for Monte Carlo shots")
        ->check(CLI::PositiveNumber);
}

qpc::ChannelSelect channel_of(const std::string& s) {
    if (s == "d2a") return qpc::ChannelSelect::D2a;
    if (s == "d2b") return qpc::ChannelSelect::D2b;
    return qpc::ChannelSelect::Both;
}

qpc::Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qpc::IoError("cannot read scenario file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return qpc::parse_scenario(ss.str());
}

void write_curve(const qpc::Curve& curve, const Options& opt) {
    const qpc::ChannelSelect sel = channel_of(opt.channel);
    if (opt.out_path.empty())
        qpc::emit_csv(curve, std::cout, sel);
    else
        qpc::emit_csv_file(curve, opt.out_path, sel);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator of a non-deterministic quantum parity check with real-time feed-forward"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* cmd_run = app.add_subcommand("run", "Evaluate the scenario at its [sweep] `at` value");
    CLI::App* cmd_an = app.add_subcommand("sweep-analyzer", "Rate vs analyzer setting theta_1");
    CLI::App* cmd_dl = app.add_subcommand("sweep-delay", "Rate vs extra electronic delay");
    CLI::App* cmd_ov = app.add_subcommand("sweep-overlap", "Rate vs photon overlap / path delay");
    for (CLI::App* c : {cmd_run, cmd_an, cmd_dl, cmd_ov}) add_common(c, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        const qpc::Scenario scenario = load_scenario(opt.scenario_path);
        qpc::Curve curve;
        if (cmd_run->parsed()) {
            curve = qpc::run_single(scenario, opt.shots, opt.seed, opt.threads);
        } else if (cmd_an->parsed()) {
            curve = qpc::sweep_analyzer(scenario, opt.shots, opt.seed, opt.threads);
            std::fprintf(stderr, "visibility (%s channel): %.6f\n", opt.channel.c_str(),
                         qpc::visibility_of(curve, channel_of(opt.channel)));
        } else if (cmd_dl->parsed()) {
            curve = qpc::sweep_delay(scenario, opt.shots, opt.seed, opt.threads);
            const qpc::PlateauStats ps = qpc::plateau_stats(curve, channel_of(opt.channel));
            std::fprintf(stderr, "plateau center: %.3f ns, FWHM: %.3f ns, peak rate: %.6f /min\n",
                         ps.center, ps.fwhm, ps.peak);
        } else {
            curve = qpc::sweep_overlap(scenario, opt.shots, opt.seed, opt.threads);
            std::fprintf(stderr, "visibility (%s channel): %.6f\n", opt.channel.c_str(),
                         qpc::visibility_of(curve, channel_of(opt.channel)));
        }
        write_curve(curve, opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
