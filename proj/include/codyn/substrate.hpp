#pragma once

// Minimal coevolutionary substrates: the four objective fitness functions and
// the two subjective fitness rules built on top of them.
//
// Test-based substrates (CrispLinear, SmoothUnimodalPair) score an individual
// against a sample of opponents with the number game. Compositional substrates
// (Ridge, Sinusoid) share one two-dimensional landscape; an individual's
// subjective fitness is the slice through it at the partner population's best
// member.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace codyn {

/// One-dimensional, real-valued search space point. Never clipped.
using Genotype = double;

enum class Task { Maximize, Minimize };

enum class PopulationLabel { P1, P2 };

std::string_view to_string(Task task);
std::string_view to_string(PopulationLabel label);
Task parse_task(std::string_view text);

/// Both populations' optimization directions. Cooperation means the two
/// directions agree; it is derived, never stored.
struct InteractionMode {
    Task task_p1 = Task::Minimize;
    Task task_p2 = Task::Maximize;

    [[nodiscard]] bool cooperative() const noexcept { return task_p1 == task_p2; }
    [[nodiscard]] Task task(PopulationLabel label) const noexcept {
        return label == PopulationLabel::P1 ? task_p1 : task_p2;
    }

    static InteractionMode competitive() { return {Task::Minimize, Task::Maximize}; }
    static InteractionMode cooperation(Task both = Task::Maximize) { return {both, both}; }

    friend bool operator==(const InteractionMode&, const InteractionMode&) = default;
};

class ObjectiveKind {
public:
    enum class Family { CrispLinear, SmoothUnimodalPair, Ridge, Sinusoid };

    static constexpr double kDefaultRidgeN = 8.0;
    /// Coordinate of the sinusoid's optima along each axis: (+-c, +-c).
    static constexpr double kSinusoidOptimum = 0.4925;
    static constexpr double kSinusoidExtremum = 0.5611;

    static ObjectiveKind crisp_linear() { return ObjectiveKind(Family::CrispLinear, 0.0); }
    static ObjectiveKind smooth_unimodal_pair() { return ObjectiveKind(Family::SmoothUnimodalPair, 0.0); }
    /// Throws ContractError unless n > 0 and finite.
    static ObjectiveKind ridge(double n = kDefaultRidgeN);
    static ObjectiveKind sinusoid() { return ObjectiveKind(Family::Sinusoid, 0.0); }

    /// Accepts "crisp", "smooth", "ridge", "sinusoid".
    static ObjectiveKind parse(std::string_view name, double ridge_n = kDefaultRidgeN);

    [[nodiscard]] Family family() const noexcept { return family_; }
    /// Ridge size/height parameter; 0 for every other family.
    [[nodiscard]] double ridge_n() const noexcept { return n_; }
    [[nodiscard]] bool compositional() const noexcept {
        return family_ == Family::Ridge || family_ == Family::Sinusoid;
    }
    [[nodiscard]] bool test_based() const noexcept { return !compositional(); }
    [[nodiscard]] std::string_view name() const noexcept;

    /// Analytic global minimum of the objective over the whole plane/line.
    [[nodiscard]] double global_min() const noexcept;

    /// For compositional families: the partner coordinate of the global
    /// optimum matching `task` (the reference slice for objective profiles).
    [[nodiscard]] double optimum_partner(Task task) const;

    friend bool operator==(const ObjectiveKind&, const ObjectiveKind&) = default;

private:
    ObjectiveKind(Family family, double n) : family_(family), n_(n) {}

    Family family_;
    double n_;
};

/// f_obj(x) for the test-based families.
double eval_objective_test(const ObjectiveKind& kind, double x);

/// f_obj(x, y) for the compositional families.
double eval_objective_shared(const ObjectiveKind& kind, double x, double y);

/// Number-game outcome: 1 iff f_obj(x) > f_obj(s_i) strictly.
int score(double x, double s_i, const ObjectiveKind& kind);

/// Mean score of `x` against every member of `sample`; a value in
/// {0, 1/mu, ..., 1}. Throws EvaluationError on an empty sample.
double subjective_test(double x, std::span<const Genotype> sample, const ObjectiveKind& kind);

/// Number of sample members that `x` beats. subjective_test == wins / sample.size().
std::size_t count_wins(double x, std::span<const Genotype> sample, const ObjectiveKind& kind);

/// Slice of the shared landscape at the partner's best member.
double subjective_compositional(double x, double partner_best, const ObjectiveKind& kind);

/// Index of the best fitness under `task`; ties go to the lowest index.
std::size_t best_index(std::span<const double> fitnesses, Task task);

Genotype best_of(std::span<const Genotype> genotypes, std::span<const double> fitnesses, Task task);

} // namespace codyn
