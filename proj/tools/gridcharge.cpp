#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gridcharge/harness.hpp"

using namespace gridcharge;

namespace {

std::string default_config() {
    if (const char* env = std::getenv("GRIDCHARGE_CONFIG")) return env;
    return "";
}

ExperimentConfig load_config_or_die(const std::string& path) {
    if (path.empty()) {
        std::cerr << "no config given (use --config or GRIDCHARGE_CONFIG)\n";
        std::exit(2);
    }
    return ExperimentConfig::load(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emissions-aware EV smart-charging pipeline"};
    app.require_subcommand(1);

    std::string config_path = default_config();
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int runs = 0;
    int run_index = 0;
    std::vector<double> lambdas;
    std::string price_mode;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config JSON");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; },
            "master seed override");
    };

    auto* ucp_cmd = app.add_subcommand("ucp", "solve the dispatch problem and export it");
    add_common(ucp_cmd);

    auto* charge_cmd =
        app.add_subcommand("charge", "run one end-to-end scenario and export schedules");
    add_common(charge_cmd);
    charge_cmd->add_option("--lambda", lambdas, "trade-off weight(s)")->delimiter(',');
    charge_cmd->add_option("--run-index", run_index, "scenario index (default 0)");
    charge_cmd->add_option("--price-mode", price_mode, "sample|mean");

    auto* mc_cmd = app.add_subcommand("montecarlo", "aggregate statistics over K runs");
    add_common(mc_cmd);
    mc_cmd->add_option("--runs", runs, "number of Monte Carlo runs");
    mc_cmd->add_option("--lambdas", lambdas, "trade-off weights")->delimiter(',');

    auto* dump_cmd = app.add_subcommand("dump-lp", "write the dispatch LP in text form");
    add_common(dump_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = load_config_or_die(config_path);
        if (seed_set) cfg.master_seed = seed;
        if (!lambdas.empty()) cfg.lambda_values = lambdas;
        if (!price_mode.empty()) cfg.price_mode = price_mode;
        if (runs > 0) cfg.n_runs = runs;

        if (app.got_subcommand(ucp_cmd)) {
            Experiment exp(cfg);
            const auto run = exp.run_single(0);
            emit_dispatch_outputs(run.dispatch, run.intensity, run.emission_prices,
                                  out_dir);
            std::cout << "dispatch written to " << out_dir << " (total cost "
                      << run.dispatch.total_cost << ")\n";
        } else if (app.got_subcommand(charge_cmd)) {
            Experiment exp(cfg);
            const auto run = exp.run_single(run_index);
            emit_run_outputs(run, cfg, out_dir);
            emit_dispatch_outputs(run.dispatch, run.intensity, run.emission_prices,
                                  out_dir);
            std::cout << "run " << run_index << " written to " << out_dir << "\n";
        } else if (app.got_subcommand(mc_cmd)) {
            Experiment exp(cfg);
            const auto stats = exp.run_monte_carlo();
            emit_summary(stats, cfg, out_dir);
            std::cout << "summary for " << stats.n_runs << " runs written to " << out_dir
                      << "\n";
        } else if (app.got_subcommand(dump_cmd)) {
            Experiment exp(cfg);
            UcpInstance instance = exp.base_instance();
            Rng rng = Rng::derive(cfg.master_seed, 0, "inflows");
            instance.inflows = sample_inflows(
                instance.hydro, static_cast<int>(instance.demand.values.size()), rng);
            std::filesystem::create_directories(out_dir);
            std::ofstream f(std::filesystem::path(out_dir) / "ucp.lp.txt");
            f << dump_lp(build_ucp(instance));
            std::cout << "LP written to " << out_dir << "/ucp.lp.txt\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
