#pragma once

// Batches of independent coevolutionary runs and their aggregation into
// per-generation means with 95% confidence intervals.

#include "codyn/evolution.hpp"
#include "codyn/landscape.hpp"
#include "codyn/substrate.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codyn {

struct SubstrateSpec {
    ObjectiveKind kind = ObjectiveKind::smooth_unimodal_pair();

    friend bool operator==(const SubstrateSpec&, const SubstrateSpec&) = default;
};

struct ExperimentConfig {
    SubstrateSpec substrate;
    EvoParams evo;
    InteractionMode mode = InteractionMode::competitive();
    GridSpec grid;
    MeasureOptions measures;
    std::size_t runs = 100;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;
    bool snapshots = false;

    /// Defaults for `kind`: init intervals and grid follow the substrate.
    static ExperimentConfig defaults(const ObjectiveKind& kind = ObjectiveKind::smooth_unimodal_pair());

    /// Throws ConfigError on the first violated constraint.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// INI document with sections [substrate] [evolution] [interaction]
/// [landscape] [experiment]. Missing keys keep the substrate defaults;
/// unknown sections or keys are rejected.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& config);

enum class Measure { Dist, Kld, Bhatt };
inline constexpr std::array<Measure, 3> kMeasures{Measure::Dist, Measure::Kld, Measure::Bhatt};
inline constexpr std::array<PopulationLabel, 2> kPopulations{PopulationLabel::P1, PopulationLabel::P2};
std::string_view to_string(Measure measure);

struct ConfidenceInterval {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// mean +- t(0.975, n-1) * s / sqrt(n); a single sample gives a zero-width interval.
ConfidenceInterval ci95(std::span<const double> samples);

/// Per-run measure values, indexed [generation][population][measure].
using RunMeasures = std::vector<std::array<std::array<double, 3>, 2>>;

struct MeasureSeries {
    std::size_t runs = 0;
    /// [generation][population][measure]
    std::vector<std::array<std::array<ConfidenceInterval, 3>, 2>> stats;

    [[nodiscard]] std::size_t generations() const noexcept { return stats.size(); }
    [[nodiscard]] const ConfidenceInterval& at(std::size_t generation, PopulationLabel pop, Measure measure) const;
};

/// Subjective landscapes of both populations plus each population's
/// objective reference at one generation of one run.
struct Snapshot {
    std::size_t run = 0;
    std::size_t generation = 0;
    std::vector<double> x;
    std::vector<double> f_obj_p1;
    std::vector<double> f_obj_p2;
    std::vector<double> f_sub_p1;
    std::vector<double> f_sub_p2;
};

Snapshot make_snapshot(const CoevoState& state, const Grid& grid, const ObjectiveKind& kind, std::size_t run = 0);

std::vector<CoevoState> run_trajectory(const ExperimentConfig& config, std::uint64_t seed);

/// Measures of one run, generation by generation.
RunMeasures measure_trajectory(std::span<const CoevoState> trajectory, const Grid& grid, const ObjectiveKind& kind,
                               const MeasureOptions& options);

/// Deterministic reduction over runs, applied in the order given.
MeasureSeries aggregate(std::span<const RunMeasures> runs);

struct BatchResult {
    MeasureSeries series;
    /// Filled only when config.snapshots is set: every generation of every run.
    std::vector<Snapshot> snapshots;
};

/// Runs config.runs trajectories seeded with derive_seed(master_seed, r),
/// on up to config.workers threads. A failing run aborts the batch with an
/// error naming its seed.
BatchResult run_batch(const ExperimentConfig& config);

} // namespace codyn
