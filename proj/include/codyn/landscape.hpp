#pragma once

// Landscape profiles over a fixed grid and the three similarity measures
// between an objective and a subjective profile: normalized Euclidean
// distance, Kullback-Leibler divergence and a Bhattacharyya-type coefficient.

#include "codyn/evolution.hpp"
#include "codyn/substrate.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace codyn {

class Grid {
public:
    /// Throws ContractError unless at least 2 finite, strictly increasing points.
    explicit Grid(std::vector<double> points);

    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] double operator[](std::size_t j) const noexcept { return points_[j]; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<double> points_;
};

/// `count` equally spaced points from lo to hi, both included.
Grid make_grid(double lo, double hi, std::size_t count);

struct GridSpec {
    double lo = -3.0;
    double hi = 3.0;
    std::size_t points = 301;

    [[nodiscard]] Grid build() const { return make_grid(lo, hi, points); }
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// [-3, 3] x 301 points; Ridge uses [-0.25 n, 1.25 n].
GridSpec default_grid(const ObjectiveKind& kind);

enum class ProfileKind { Objective, Subjective };

struct LandscapeProfile {
    Grid grid;
    std::vector<double> values;
    ProfileKind kind = ProfileKind::Objective;
    std::optional<PopulationLabel> population;
    std::size_t generation = 0;
};

/// Reference landscape. Compositional objectives are sliced at the partner
/// coordinate of the global optimum matching `task`.
LandscapeProfile objective_profile(const ObjectiveKind& kind, const Grid& grid, Task task);

/// Mean over the retained per-individual samples of the number-game landscape.
LandscapeProfile subjective_profile_test(const Grid& grid, std::span<const EvaluatorSample> samples,
                                         const ObjectiveKind& kind);

/// Slice of the shared landscape at `partner_best`.
LandscapeProfile subjective_profile_comp(const Grid& grid, double partner_best, const ObjectiveKind& kind);

enum class DistNorm {
    RangeSqrtJ, ///< (max - min of the objective profile) * sqrt(J); dist in [0, 1]
    Range,      ///< plain objective range
};

enum class BhattMode {
    Hellinger, ///< sqrt(1 - sum sqrt(h_obj * h_sub)); zero for identical profiles
    Verbatim,  ///< sqrt(1 - sum h_obj * h_sub)
};

struct MeasureOptions {
    DistNorm dist_norm = DistNorm::RangeSqrtJ;
    BhattMode bhatt_mode = BhattMode::Hellinger;
    double epsilon = 1e-12;

    friend bool operator==(const MeasureOptions&, const MeasureOptions&) = default;
};

struct MeasureTriple {
    double dist = 0.0;
    double kld = 0.0;
    double bhatt = 0.0;
};

/// Shifts by `offset` (subtracted), floors at `epsilon`, rescales to unit sum.
std::vector<double> normalize_profile(std::span<const double> values, double offset, double epsilon);

/// Throws EvaluationError when the objective profile is flat.
double dist(const LandscapeProfile& obj, const LandscapeProfile& sub, DistNorm norm = DistNorm::RangeSqrtJ);

/// Both profiles are normalized with the same `offset` (the objective's
/// analytic global minimum) before comparison.
double kld(const LandscapeProfile& obj, const LandscapeProfile& sub, double offset = 0.0, double epsilon = 1e-12);
double bhatt(const LandscapeProfile& obj, const LandscapeProfile& sub, double offset = 0.0,
             BhattMode mode = BhattMode::Hellinger, double epsilon = 1e-12);

/// Same measures on already normalized distributions.
double kld_normalized(std::span<const double> p_obj, std::span<const double> p_sub);
double bhatt_normalized(std::span<const double> h_obj, std::span<const double> h_sub,
                        BhattMode mode = BhattMode::Hellinger);

MeasureTriple measure(const LandscapeProfile& obj, const LandscapeProfile& sub, const ObjectiveKind& kind,
                      const MeasureOptions& options);

/// Subjective landscape of one population at the state's generation.
LandscapeProfile subjective_profile(const Population& pop, const Grid& grid, const ObjectiveKind& kind,
                                    std::size_t generation);

std::pair<MeasureTriple, MeasureTriple> measure_generation(const CoevoState& state, const Grid& grid,
                                                           const ObjectiveKind& kind, const MeasureOptions& options);

} // namespace codyn
