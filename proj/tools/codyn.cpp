// codyn: simulate coevolutionary minimal substrates and emit landscape plot data.

#include "codyn/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Codynamic fitness landscapes of coevolutionary minimal substrates"};
    app.require_subcommand(1);

    codyn::CommandOptions opts;
    std::string format = "csv";
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t runs = 0;
    std::size_t generations = 0;
    std::string objective;
    std::string mode;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "INI config file");
        cmd->add_option("--seed", seed, "trajectory seed (simulate/landscape) or master seed (measures)");
        cmd->add_option("--out", opts.out_dir, "output directory")->default_str(".");
        cmd->add_option("--workers", workers, "worker threads for batches")->check(CLI::PositiveNumber);
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--objective", objective, "crisp|smooth|ridge|sinusoid")
            ->check(CLI::IsMember({"crisp", "smooth", "ridge", "sinusoid"}));
        cmd->add_option("--mode", mode, "competitive|cooperative")
            ->check(CLI::IsMember({"competitive", "cooperative"}));
        cmd->add_option("--generations", generations, "number of generations K");
    };

    auto* simulate = app.add_subcommand("simulate", "run one trajectory; write best-of summary and snapshots");
    add_common(simulate);
    bool no_snapshots = false;
    simulate->add_flag("--no-snapshots", no_snapshots, "skip per-generation landscape snapshots");

    auto* landscape = app.add_subcommand("landscape", "write landscape snapshots at chosen generations");
    add_common(landscape);
    landscape->add_option("--at", opts.snapshot_generations, "generations to snapshot")
        ->delimiter(',')
        ->default_str("0,3,6");

    auto* measures = app.add_subcommand("measures", "batch of runs; write dist/kld/bhatt means and 95% CIs");
    add_common(measures);
    measures->add_option("--runs", runs, "number of runs R")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    auto* active = app.get_subcommands().front();
    auto given = [&](const char* name) { return active->count(name) > 0; };
    if (given("--config")) {
        opts.config_path = config_path;
    }
    if (given("--seed")) {
        opts.seed = seed;
    }
    if (given("--workers")) {
        opts.workers = workers;
    }
    if (given("--generations")) {
        opts.generations = generations;
    }
    if (given("--objective")) {
        opts.objective = objective;
    }
    if (given("--mode")) {
        opts.mode = mode;
    }
    if (active == measures && given("--runs")) {
        opts.runs = runs;
    }
    opts.snapshots = !no_snapshots;

    try {
        opts.format = codyn::parse_format(format);
        std::vector<std::filesystem::path> written;
        if (active == simulate) {
            written = codyn::cmd_simulate(opts);
        } else if (active == landscape) {
            written = codyn::cmd_landscape(opts);
        } else {
            written = codyn::cmd_measures(opts);
        }
        for (const auto& path : written) {
            std::cout << path.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "codyn " << active->get_name() << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
