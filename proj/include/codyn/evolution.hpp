#pragma once

// Two-population coevolutionary algorithm with shared synchronization: both
// populations complete a generation (selection, mutation), then each new
// population is evaluated against the other population as it stood at the
// end of the previous generation.

#include "codyn/random.hpp"
#include "codyn/substrate.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace codyn {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class SamplingMode { WithoutReplacement, WithReplacement };

struct EvoParams {
    std::size_t lambda = 24;
    std::size_t mu = 12;
    std::size_t tournament_size = 2;
    double mutation_prob = 0.5;
    double mutation_sigma = 0.1;
    std::size_t generations = 10;
    Interval init_p1{-3.0, 3.0};
    Interval init_p2{-3.0, 3.0};
    SamplingMode sampling = SamplingMode::WithoutReplacement;

    /// Throws ConfigError on the first violated constraint.
    void validate() const;

    friend bool operator==(const EvoParams&, const EvoParams&) = default;
};

/// Default initialization interval for a substrate: [-3, 3] except Ridge, [0, n].
Interval default_init_interval(const ObjectiveKind& kind);

/// One evaluator sample: opponent genotypes drawn for a single fitness evaluation.
using EvaluatorSample = std::vector<Genotype>;

struct Population {
    std::vector<Genotype> genotypes;
    /// Subjective fitness, empty until the population has been evaluated.
    std::vector<double> fitnesses;
    Task task = Task::Maximize;
    PopulationLabel label = PopulationLabel::P1;
    /// Test-based: the sample each individual was scored against.
    std::vector<EvaluatorSample> samples;
    /// Compositional: the opponent's best member used for the slice.
    std::optional<Genotype> partner_best;

    [[nodiscard]] std::size_t size() const noexcept { return genotypes.size(); }
    [[nodiscard]] bool evaluated() const noexcept { return !genotypes.empty() && fitnesses.size() == genotypes.size(); }
    /// Best member under the population's own task (lowest index on ties).
    [[nodiscard]] Genotype best() const;
    [[nodiscard]] double best_fitness() const;
};

struct CoevoState {
    Population pop1;
    Population pop2;
    std::size_t generation = 0;

    [[nodiscard]] const Population& population(PopulationLabel label) const noexcept {
        return label == PopulationLabel::P1 ? pop1 : pop2;
    }
    [[nodiscard]] Genotype best1() const { return pop1.best(); }
    [[nodiscard]] Genotype best2() const { return pop2.best(); }
};

/// lambda genotypes i.i.d. uniform on `interval`; fitness left unset.
Population init_population(const EvoParams& params, const Interval& interval, Task task, PopulationLabel label, Rng& rng);

/// Draws `mu` opponent genotypes according to `mode`.
EvaluatorSample draw_sample(const std::vector<Genotype>& opponent, std::size_t mu, SamplingMode mode, Rng& rng);

/// Number game: every individual gets a fresh sample of `mu` opponents.
Population evaluate_test(Population pop, const Population& opponent_prev, const EvoParams& params,
                         const ObjectiveKind& kind, Rng& rng);

/// Shared landscape: every individual is scored on the slice at the
/// opponent's best member. The opponent must already carry fitness values.
Population evaluate_compositional(Population pop, const Population& opponent_prev, const ObjectiveKind& kind);

/// lambda tournaments, contestants drawn with replacement, first drawn wins ties.
std::vector<Genotype> tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng);

/// Additive Gaussian perturbation with probability mutation_prob per gene.
std::vector<Genotype> mutate(std::vector<Genotype> genotypes, const EvoParams& params, Rng& rng);

/// Evaluates both initial populations against each other (generation 0).
CoevoState bootstrap(Population pop1, Population pop2, const EvoParams& params, const ObjectiveKind& kind, Rng& rng);

CoevoState step_generation(const CoevoState& state, const EvoParams& params, const ObjectiveKind& kind, Rng& rng);

/// Evaluated states for k = 0..params.generations.
std::vector<CoevoState> run_trajectory(const EvoParams& params, const ObjectiveKind& kind, const InteractionMode& mode,
                                       std::uint64_t seed);

} // namespace codyn
