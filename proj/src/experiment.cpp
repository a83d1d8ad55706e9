#include "codyn/experiment.hpp"

#include "codyn/error.hpp"
#include "codyn/random.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace codyn {

std::string_view to_string(Measure measure)
{
    switch (measure) {
    case Measure::Dist: return "dist";
    case Measure::Kld: return "kld";
    case Measure::Bhatt: return "bhatt";
    }
    return "?";
}

ExperimentConfig ExperimentConfig::defaults(const ObjectiveKind& kind)
{
    ExperimentConfig config;
    config.substrate.kind = kind;
    config.evo.init_p1 = default_init_interval(kind);
    config.evo.init_p2 = default_init_interval(kind);
    config.grid = default_grid(kind);
    return config;
}

void ExperimentConfig::validate() const
{
    evo.validate();
    if (runs < 1) {
        throw ConfigError("runs must be >= 1");
    }
    if (workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) || !(grid.lo < grid.hi) || grid.points < 2) {
        throw ConfigError("landscape grid needs finite lo < hi and at least 2 points");
    }
    if (!std::isfinite(measures.epsilon) || !(measures.epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
}

const ConfidenceInterval& MeasureSeries::at(std::size_t generation, PopulationLabel pop, Measure measure) const
{
    return stats.at(generation)[static_cast<std::size_t>(pop)][static_cast<std::size_t>(measure)];
}

ConfidenceInterval ci95(std::span<const double> samples)
{
    if (samples.empty()) {
        throw ContractError("ci95 of an empty sample");
    }
    const auto n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    if (samples.size() == 1) {
        return {mean, mean, mean};
    }
    double ss = 0.0;
    for (double v : samples) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t t_dist(n - 1.0);
    const double half = boost::math::quantile(t_dist, 0.975) * sd / std::sqrt(n);
    return {mean, mean - half, mean + half};
}

Snapshot make_snapshot(const CoevoState& state, const Grid& grid, const ObjectiveKind& kind, std::size_t run)
{
    Snapshot snap;
    snap.run = run;
    snap.generation = state.generation;
    snap.x.assign(grid.points().begin(), grid.points().end());
    snap.f_obj_p1 = objective_profile(kind, grid, state.pop1.task).values;
    snap.f_obj_p2 = objective_profile(kind, grid, state.pop2.task).values;
    snap.f_sub_p1 = subjective_profile(state.pop1, grid, kind, state.generation).values;
    snap.f_sub_p2 = subjective_profile(state.pop2, grid, kind, state.generation).values;
    return snap;
}

std::vector<CoevoState> run_trajectory(const ExperimentConfig& config, std::uint64_t seed)
{
    config.validate();
    return run_trajectory(config.evo, config.substrate.kind, config.mode, seed);
}

RunMeasures measure_trajectory(std::span<const CoevoState> trajectory, const Grid& grid, const ObjectiveKind& kind,
                               const MeasureOptions& options)
{
    RunMeasures out;
    out.reserve(trajectory.size());
    for (const auto& state : trajectory) {
        const auto [m1, m2] = measure_generation(state, grid, kind, options);
        out.push_back({{{m1.dist, m1.kld, m1.bhatt}, {m2.dist, m2.kld, m2.bhatt}}});
    }
    return out;
}

MeasureSeries aggregate(std::span<const RunMeasures> runs)
{
    if (runs.empty()) {
        throw ContractError("aggregate: no runs");
    }
    const std::size_t generations = runs.front().size();
    for (const auto& r : runs) {
        if (r.size() != generations) {
            throw ContractError("aggregate: runs differ in generation count");
        }
    }
    MeasureSeries series;
    series.runs = runs.size();
    series.stats.resize(generations);
    std::vector<double> column(runs.size());
    for (std::size_t k = 0; k < generations; ++k) {
        for (std::size_t p = 0; p < 2; ++p) {
            for (std::size_t m = 0; m < 3; ++m) {
                for (std::size_t r = 0; r < runs.size(); ++r) {
                    column[r] = runs[r][k][p][m];
                }
                series.stats[k][p][m] = ci95(column);
            }
        }
    }
    return series;
}

BatchResult run_batch(const ExperimentConfig& config)
{
    config.validate();
    const Grid grid = config.grid.build();
    const auto& kind = config.substrate.kind;

    std::vector<RunMeasures> measures(config.runs);
    std::vector<std::vector<Snapshot>> snapshots(config.snapshots ? config.runs : 0);
    std::vector<std::exception_ptr> failures(config.runs);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t r = next++; r < config.runs; r = next++) {
            try {
                const auto trajectory = run_trajectory(config.evo, kind, config.mode, derive_seed(config.master_seed, r));
                measures[r] = measure_trajectory(trajectory, grid, kind, config.measures);
                if (config.snapshots) {
                    for (const auto& state : trajectory) {
                        snapshots[r].push_back(make_snapshot(state, grid, kind, r));
                    }
                }
            } catch (...) {
                failures[r] = std::current_exception();
            }
        }
    };

    const std::size_t threads = std::min(config.workers, config.runs);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    for (std::size_t r = 0; r < config.runs; ++r) {
        if (!failures[r]) {
            continue;
        }
        std::string what = "unknown error";
        try {
            std::rethrow_exception(failures[r]);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        throw EvaluationError("run " + std::to_string(r) + " (seed " +
                              std::to_string(derive_seed(config.master_seed, r)) + ") failed: " + what);
    }

    BatchResult result;
    result.series = aggregate(measures);
    for (auto& per_run : snapshots) {
        std::move(per_run.begin(), per_run.end(), std::back_inserter(result.snapshots));
    }
    return result;
}

} // namespace codyn
