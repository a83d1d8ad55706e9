#include "codyn/commands.hpp"

#include "codyn/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace codyn {

namespace fs = std::filesystem;

namespace {

void prepare_out_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
    }
}

// Reads the file back and checks it carries the expected header and row count.
void verify_output(const fs::path& path, OutputFormat format, std::string_view header, std::size_t rows)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("output '" + path.string() + "' is missing after write");
    }
    if (format == OutputFormat::Json) {
        try {
            [[maybe_unused]] const auto doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("output '" + path.string() + "' is not valid JSON: " + e.what());
        }
        return;
    }
    std::string line;
    std::getline(in, line);
    if (line != header) {
        throw std::runtime_error("output '" + path.string() + "' has an unexpected header");
    }
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++count;
    }
    if (count != rows) {
        throw std::runtime_error("output '" + path.string() + "' has " + std::to_string(count) + " rows, expected " +
                                 std::to_string(rows));
    }
}

fs::path emit_snapshot(const Snapshot& snap, const CommandOptions& options)
{
    std::ostringstream buf;
    if (options.format == OutputFormat::Csv) {
        write_snapshot_csv(buf, snap);
    } else {
        write_snapshot_json(buf, snap);
    }
    const fs::path path = options.out_dir / snapshot_filename(snap.generation, options.format);
    write_file(path, buf.str());
    verify_output(path, options.format, kSnapshotHeader, snap.x.size());
    return path;
}

std::uint64_t trajectory_seed(const ExperimentConfig& config, const CommandOptions& options)
{
    return options.seed.value_or(config.master_seed);
}

} // namespace

ExperimentConfig resolve_config(const CommandOptions& options)
{
    ExperimentConfig config = options.config_path ? load_config(*options.config_path) : ExperimentConfig::defaults();
    if (options.objective) {
        const double n = config.substrate.kind.family() == ObjectiveKind::Family::Ridge ? config.substrate.kind.ridge_n()
                                                                                        : ObjectiveKind::kDefaultRidgeN;
        const ObjectiveKind kind = ObjectiveKind::parse(*options.objective, n);
        if (!(kind == config.substrate.kind)) {
            const ExperimentConfig fresh = ExperimentConfig::defaults(kind);
            config.substrate = fresh.substrate;
            config.evo.init_p1 = fresh.evo.init_p1;
            config.evo.init_p2 = fresh.evo.init_p2;
            config.grid = fresh.grid;
        }
    }
    if (options.mode) {
        if (*options.mode == "competitive") {
            config.mode = InteractionMode::competitive();
        } else if (*options.mode == "cooperative") {
            config.mode = InteractionMode::cooperation();
        } else {
            throw ConfigError("--mode must be competitive|cooperative");
        }
    }
    if (options.seed) {
        config.master_seed = *options.seed;
    }
    if (options.workers) {
        config.workers = *options.workers;
    }
    if (options.runs) {
        config.runs = *options.runs;
    }
    if (options.generations) {
        config.evo.generations = *options.generations;
    }
    config.validate();
    return config;
}

std::vector<fs::path> cmd_simulate(const CommandOptions& options)
{
    const ExperimentConfig config = resolve_config(options);
    prepare_out_dir(options.out_dir);
    const auto trajectory = run_trajectory(config, trajectory_seed(config, options));

    std::vector<fs::path> written;
    std::ostringstream buf;
    if (options.format == OutputFormat::Csv) {
        write_trajectory_csv(buf, trajectory);
    } else {
        write_trajectory_json(buf, trajectory);
    }
    const fs::path summary = options.out_dir / (std::string("trajectory") + std::string(extension(options.format)));
    write_file(summary, buf.str());
    verify_output(summary, options.format, kTrajectoryHeader, 2 * trajectory.size());
    written.push_back(summary);

    if (options.snapshots) {
        const Grid grid = config.grid.build();
        for (const auto& state : trajectory) {
            written.push_back(emit_snapshot(make_snapshot(state, grid, config.substrate.kind), options));
        }
    }
    return written;
}

std::vector<fs::path> cmd_landscape(const CommandOptions& options)
{
    if (options.snapshot_generations.empty()) {
        throw ConfigError("landscape: no generations requested");
    }
    CommandOptions adjusted = options;
    adjusted.generations = std::max(options.generations.value_or(0),
                                    *std::ranges::max_element(options.snapshot_generations));
    const ExperimentConfig config = resolve_config(adjusted);
    prepare_out_dir(options.out_dir);
    const auto trajectory = run_trajectory(config, trajectory_seed(config, options));
    const Grid grid = config.grid.build();

    std::vector<std::size_t> wanted = options.snapshot_generations;
    std::ranges::sort(wanted);
    const auto [first, last] = std::ranges::unique(wanted);
    wanted.erase(first, last);

    std::vector<fs::path> written;
    for (std::size_t k : wanted) {
        written.push_back(emit_snapshot(make_snapshot(trajectory.at(k), grid, config.substrate.kind), options));
    }
    return written;
}

std::vector<fs::path> cmd_measures(const CommandOptions& options)
{
    ExperimentConfig config = resolve_config(options);
    prepare_out_dir(options.out_dir);
    const BatchResult result = run_batch(config);

    std::ostringstream buf;
    if (options.format == OutputFormat::Csv) {
        write_measures_csv(buf, result.series);
    } else {
        write_measures_json(buf, result.series);
    }
    const fs::path path = options.out_dir / (std::string("measures") + std::string(extension(options.format)));
    write_file(path, buf.str());
    verify_output(path, options.format, kMeasuresHeader,
                  result.series.generations() * kPopulations.size() * kMeasures.size());

    std::vector<fs::path> written{path};
    if (config.snapshots) {
        const fs::path dir = options.out_dir / "snapshots";
        prepare_out_dir(dir);
        for (const auto& snap : result.snapshots) {
            CommandOptions per_run = options;
            per_run.out_dir = dir / ("run_" + std::to_string(snap.run));
            prepare_out_dir(per_run.out_dir);
            written.push_back(emit_snapshot(snap, per_run));
        }
    }
    return written;
}

} // namespace codyn
