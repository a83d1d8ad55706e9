#include "codyn/output.hpp"

#include "codyn/error.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace codyn {

namespace {

nlohmann::json number_array(std::span<const double> values)
{
    auto arr = nlohmann::json::array();
    for (double v : values) {
        arr.push_back(v);
    }
    return arr;
}

void require_rows(const Snapshot& s)
{
    const auto n = s.x.size();
    if (s.f_obj_p1.size() != n || s.f_sub_p1.size() != n || s.f_sub_p2.size() != n) {
        throw ContractError("snapshot columns differ in length");
    }
}

} // namespace

OutputFormat parse_format(std::string_view text)
{
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv|json)");
}

std::string_view extension(OutputFormat format)
{
    return format == OutputFormat::Csv ? ".csv" : ".json";
}

std::string format_number(double value)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return {buf.data(), end};
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snapshot)
{
    require_rows(snapshot);
    out << kSnapshotHeader << '\n';
    for (std::size_t j = 0; j < snapshot.x.size(); ++j) {
        out << format_number(snapshot.x[j]) << ',' << format_number(snapshot.f_obj_p1[j]) << ','
            << format_number(snapshot.f_sub_p1[j]) << ',' << format_number(snapshot.f_sub_p2[j]) << '\n';
    }
}

void write_snapshot_json(std::ostream& out, const Snapshot& snapshot)
{
    require_rows(snapshot);
    nlohmann::json doc;
    doc["run"] = snapshot.run;
    doc["generation"] = snapshot.generation;
    doc["x"] = number_array(snapshot.x);
    doc["f_obj"] = number_array(snapshot.f_obj_p1);
    doc["f_sub_p1"] = number_array(snapshot.f_sub_p1);
    doc["f_sub_p2"] = number_array(snapshot.f_sub_p2);
    out << doc.dump(2) << '\n';
}

void write_measures_csv(std::ostream& out, const MeasureSeries& series)
{
    out << kMeasuresHeader << '\n';
    for (std::size_t k = 0; k < series.generations(); ++k) {
        for (auto pop : kPopulations) {
            for (auto m : kMeasures) {
                const auto& ci = series.at(k, pop, m);
                out << k << ',' << to_string(pop) << ',' << to_string(m) << ',' << format_number(ci.mean) << ','
                    << format_number(ci.lo) << ',' << format_number(ci.hi) << '\n';
            }
        }
    }
}

void write_measures_json(std::ostream& out, const MeasureSeries& series)
{
    nlohmann::json doc;
    doc["runs"] = series.runs;
    auto rows = nlohmann::json::array();
    for (std::size_t k = 0; k < series.generations(); ++k) {
        for (auto pop : kPopulations) {
            for (auto m : kMeasures) {
                const auto& ci = series.at(k, pop, m);
                rows.push_back({{"generation", k},
                                {"population", to_string(pop)},
                                {"measure", to_string(m)},
                                {"mean", ci.mean},
                                {"ci_lo", ci.lo},
                                {"ci_hi", ci.hi}});
            }
        }
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& out, std::span<const CoevoState> trajectory)
{
    out << kTrajectoryHeader << '\n';
    for (const auto& state : trajectory) {
        for (auto label : kPopulations) {
            const auto& pop = state.population(label);
            out << state.generation << ',' << to_string(label) << ',' << format_number(pop.best()) << ','
                << format_number(pop.best_fitness()) << '\n';
        }
    }
}

void write_trajectory_json(std::ostream& out, std::span<const CoevoState> trajectory)
{
    auto rows = nlohmann::json::array();
    for (const auto& state : trajectory) {
        for (auto label : kPopulations) {
            const auto& pop = state.population(label);
            rows.push_back({{"generation", state.generation},
                            {"population", to_string(label)},
                            {"best_genotype", pop.best()},
                            {"best_fitness", pop.best_fitness()}});
        }
    }
    out << nlohmann::json{{"rows", std::move(rows)}}.dump(2) << '\n';
}

std::string snapshot_filename(std::size_t generation, OutputFormat format)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "landscape_k%03zu", generation);
    return std::string(buf.data()) + std::string(extension(format));
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

} // namespace codyn
