#pragma once

// Flat-file writers for plot data. Numbers use the shortest representation
// that round-trips to the same double.

#include "codyn/evolution.hpp"
#include "codyn/experiment.hpp"

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace codyn {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);
std::string_view extension(OutputFormat format);

std::string format_number(double value);

inline constexpr std::string_view kSnapshotHeader = "x,f_obj,f_sub_p1,f_sub_p2";
inline constexpr std::string_view kMeasuresHeader = "generation,population,measure,mean,ci_lo,ci_hi";
inline constexpr std::string_view kTrajectoryHeader = "generation,population,best_genotype,best_fitness";

/// f_obj is the P1 reference profile (identical for both populations on
/// test-based substrates).
void write_snapshot_csv(std::ostream& out, const Snapshot& snapshot);
void write_snapshot_json(std::ostream& out, const Snapshot& snapshot);

/// Rows ordered by generation, then population (P1, P2), then measure (dist, kld, bhatt).
void write_measures_csv(std::ostream& out, const MeasureSeries& series);
void write_measures_json(std::ostream& out, const MeasureSeries& series);

/// Best genotype and its subjective fitness per generation and population.
void write_trajectory_csv(std::ostream& out, std::span<const CoevoState> trajectory);
void write_trajectory_json(std::ostream& out, std::span<const CoevoState> trajectory);

/// e.g. "landscape_k003.csv"
std::string snapshot_filename(std::size_t generation, OutputFormat format);

/// Writes `content` to `path`, throwing std::runtime_error if the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace codyn
