#pragma once

// Subcommands behind the `codyn` executable. Each returns the files it wrote
// and throws on any failure (config, computation or I/O).

#include "codyn/experiment.hpp"
#include "codyn/output.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace codyn {

/// Command-line values. Set fields override the config file, which
/// overrides the built-in defaults.
struct CommandOptions {
    std::optional<std::filesystem::path> config_path;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = ".";
    std::optional<std::size_t> workers;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> generations;
    std::optional<std::string> objective;
    std::optional<std::string> mode;
    OutputFormat format = OutputFormat::Csv;
    /// landscape: generations to snapshot
    std::vector<std::size_t> snapshot_generations{0, 3, 6};
    /// simulate: also write a landscape snapshot for every generation
    bool snapshots = true;
};

/// Config file (if any) with command-line overrides applied, validated.
ExperimentConfig resolve_config(const CommandOptions& options);

std::vector<std::filesystem::path> cmd_simulate(const CommandOptions& options);
std::vector<std::filesystem::path> cmd_landscape(const CommandOptions& options);
std::vector<std::filesystem::path> cmd_measures(const CommandOptions& options);

} // namespace codyn
