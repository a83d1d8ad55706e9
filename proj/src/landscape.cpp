#include "codyn/landscape.hpp"

#include "codyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace codyn {

namespace {

void require_same_grid(const LandscapeProfile& a, const LandscapeProfile& b)
{
    if (!(a.grid == b.grid)) {
        throw ContractError("profiles are defined on different grids");
    }
    if (a.values.size() != a.grid.size() || b.values.size() != b.grid.size()) {
        throw ContractError("profile length does not match its grid");
    }
}

} // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points))
{
    if (points_.size() < 2) {
        throw ContractError("grid needs at least 2 points");
    }
    for (std::size_t j = 0; j < points_.size(); ++j) {
        if (!std::isfinite(points_[j]) || (j > 0 && !(points_[j - 1] < points_[j]))) {
            throw ContractError("grid points must be finite and strictly increasing");
        }
    }
}

Grid make_grid(double lo, double hi, std::size_t count)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw ContractError("make_grid: need finite lo < hi");
    }
    if (count < 2) {
        throw ContractError("make_grid: need at least 2 points");
    }
    std::vector<double> points(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t j = 0; j + 1 < count; ++j) {
        points[j] = lo + static_cast<double>(j) * step;
    }
    points.back() = hi;
    return Grid(std::move(points));
}

GridSpec default_grid(const ObjectiveKind& kind)
{
    if (kind.family() == ObjectiveKind::Family::Ridge) {
        return {-0.25 * kind.ridge_n(), 1.25 * kind.ridge_n(), 301};
    }
    return {-3.0, 3.0, 301};
}

LandscapeProfile objective_profile(const ObjectiveKind& kind, const Grid& grid, Task task)
{
    LandscapeProfile profile{grid, std::vector<double>(grid.size()), ProfileKind::Objective, std::nullopt, 0};
    if (kind.test_based()) {
        std::ranges::transform(grid.points(), profile.values.begin(),
                               [&](double x) { return eval_objective_test(kind, x); });
    } else {
        const double partner = kind.optimum_partner(task);
        std::ranges::transform(grid.points(), profile.values.begin(),
                               [&](double x) { return eval_objective_shared(kind, x, partner); });
    }
    return profile;
}

LandscapeProfile subjective_profile_test(const Grid& grid, std::span<const EvaluatorSample> samples,
                                         const ObjectiveKind& kind)
{
    if (kind.compositional()) {
        throw ContractError("subjective_profile_test requires a test-based objective");
    }
    if (samples.empty()) {
        throw EvaluationError("subjective_profile_test: no evaluator samples");
    }
    std::vector<std::vector<double>> sample_fitness;
    sample_fitness.reserve(samples.size());
    bool uniform_size = true;
    for (const auto& s : samples) {
        if (s.empty()) {
            throw EvaluationError("empty evaluator sample: evaluation is disengaged");
        }
        uniform_size = uniform_size && s.size() == samples.front().size();
        auto& f = sample_fitness.emplace_back(s.size());
        std::ranges::transform(s, f.begin(), [&](double v) { return eval_objective_test(kind, v); });
    }

    LandscapeProfile profile{grid, std::vector<double>(grid.size()), ProfileKind::Subjective, std::nullopt, 0};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double fx = eval_objective_test(kind, grid[j]);
        // Integer win counts keep the average on the exact lattice k / (mu * lambda).
        std::size_t wins = 0;
        double mean = 0.0;
        for (const auto& f : sample_fitness) {
            const auto w = static_cast<std::size_t>(std::ranges::count_if(f, [&](double fs) { return fx > fs; }));
            wins += w;
            mean += static_cast<double>(w) / static_cast<double>(f.size());
        }
        profile.values[j] = uniform_size
            ? static_cast<double>(wins) / static_cast<double>(samples.size() * samples.front().size())
            : mean / static_cast<double>(samples.size());
    }
    return profile;
}

LandscapeProfile subjective_profile_comp(const Grid& grid, double partner_best, const ObjectiveKind& kind)
{
    if (kind.test_based()) {
        throw ContractError("subjective_profile_comp requires a compositional objective");
    }
    LandscapeProfile profile{grid, std::vector<double>(grid.size()), ProfileKind::Subjective, std::nullopt, 0};
    std::ranges::transform(grid.points(), profile.values.begin(),
                           [&](double x) { return subjective_compositional(x, partner_best, kind); });
    return profile;
}

std::vector<double> normalize_profile(std::span<const double> values, double offset, double epsilon)
{
    std::vector<double> out(values.size());
    std::ranges::transform(values, out.begin(), [&](double v) { return std::max(v - offset, epsilon); });
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    for (auto& v : out) {
        v /= total;
    }
    return out;
}

double dist(const LandscapeProfile& obj, const LandscapeProfile& sub, DistNorm norm)
{
    require_same_grid(obj, sub);
    const auto [lo, hi] = std::ranges::minmax(obj.values);
    double dist_max = hi - lo;
    if (norm == DistNorm::RangeSqrtJ) {
        dist_max *= std::sqrt(static_cast<double>(obj.values.size()));
    }
    if (!(dist_max > 0.0)) {
        throw EvaluationError("dist: objective profile is flat, maximal fitness difference is 0");
    }
    double sq = 0.0;
    for (std::size_t j = 0; j < obj.values.size(); ++j) {
        const double d = obj.values[j] - sub.values[j];
        sq += d * d;
    }
    return std::sqrt(sq) / dist_max;
}

double kld_normalized(std::span<const double> p_obj, std::span<const double> p_sub)
{
    if (p_obj.size() != p_sub.size()) {
        throw ContractError("kld: distributions differ in length");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < p_obj.size(); ++j) {
        if (p_obj[j] > 0.0) {
            sum += p_obj[j] * std::log2(p_obj[j] / p_sub[j]);
        }
    }
    // Rounding can leave a tiny negative value for identical inputs.
    return std::max(sum, 0.0);
}

double bhatt_normalized(std::span<const double> h_obj, std::span<const double> h_sub, BhattMode mode)
{
    if (h_obj.size() != h_sub.size()) {
        throw ContractError("bhatt: histograms differ in length");
    }
    if (mode == BhattMode::Hellinger) {
        // 1 - sum sqrt(h_obj h_sub) == sum (sqrt h_obj - sqrt h_sub)^2 / 2 for unit-sum
        // inputs; this form is exactly zero for identical histograms.
        double radicand = 0.0;
        for (std::size_t j = 0; j < h_obj.size(); ++j) {
            const double d = std::sqrt(h_obj[j]) - std::sqrt(h_sub[j]);
            radicand += d * d;
        }
        return std::sqrt(std::min(0.5 * radicand, 1.0));
    }
    double overlap = 0.0;
    for (std::size_t j = 0; j < h_obj.size(); ++j) {
        overlap += h_obj[j] * h_sub[j];
    }
    return std::sqrt(std::max(1.0 - overlap, 0.0));
}

double kld(const LandscapeProfile& obj, const LandscapeProfile& sub, double offset, double epsilon)
{
    require_same_grid(obj, sub);
    return kld_normalized(normalize_profile(obj.values, offset, epsilon), normalize_profile(sub.values, offset, epsilon));
}

double bhatt(const LandscapeProfile& obj, const LandscapeProfile& sub, double offset, BhattMode mode, double epsilon)
{
    require_same_grid(obj, sub);
    return bhatt_normalized(normalize_profile(obj.values, offset, epsilon),
                            normalize_profile(sub.values, offset, epsilon), mode);
}

MeasureTriple measure(const LandscapeProfile& obj, const LandscapeProfile& sub, const ObjectiveKind& kind,
                      const MeasureOptions& options)
{
    const double offset = kind.global_min();
    return {dist(obj, sub, options.dist_norm), kld(obj, sub, offset, options.epsilon),
            bhatt(obj, sub, offset, options.bhatt_mode, options.epsilon)};
}

LandscapeProfile subjective_profile(const Population& pop, const Grid& grid, const ObjectiveKind& kind,
                                    std::size_t generation)
{
    LandscapeProfile profile = [&] {
        if (kind.compositional()) {
            if (!pop.partner_best) {
                throw EvaluationError("population " + std::string(to_string(pop.label)) + " has no partner slice");
            }
            return subjective_profile_comp(grid, *pop.partner_best, kind);
        }
        return subjective_profile_test(grid, pop.samples, kind);
    }();
    profile.population = pop.label;
    profile.generation = generation;
    return profile;
}

std::pair<MeasureTriple, MeasureTriple> measure_generation(const CoevoState& state, const Grid& grid,
                                                           const ObjectiveKind& kind, const MeasureOptions& options)
{
    auto for_population = [&](const Population& pop) {
        const LandscapeProfile obj = objective_profile(kind, grid, pop.task);
        const LandscapeProfile sub = subjective_profile(pop, grid, kind, state.generation);
        return measure(obj, sub, kind, options);
    };
    return {for_population(state.pop1), for_population(state.pop2)};
}

} // namespace codyn
