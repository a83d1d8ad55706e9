#include "codyn/evolution.hpp"

#include "codyn/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace codyn {

namespace {

void check_interval(const Interval& interval, const char* which)
{
    if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi) || !(interval.lo < interval.hi)) {
        throw ConfigError(std::string("initialization interval for ") + which + " must satisfy lo < hi (finite)");
    }
}

Population next_generation(const Population& pop, const EvoParams& params, Rng& rng)
{
    Population next;
    next.task = pop.task;
    next.label = pop.label;
    next.genotypes = mutate(tournament_select(pop, params.tournament_size, rng), params, rng);
    return next;
}

Population evaluate(Population pop, const Population& opponent, const EvoParams& params, const ObjectiveKind& kind,
                    Rng& rng)
{
    if (kind.compositional()) {
        return evaluate_compositional(std::move(pop), opponent, kind);
    }
    return evaluate_test(std::move(pop), opponent, params, kind, rng);
}

} // namespace

void EvoParams::validate() const
{
    if (lambda < 1) {
        throw ConfigError("lambda (population size) must be >= 1");
    }
    if (mu < 1 || mu > lambda) {
        throw ConfigError("mu (sample size) must satisfy 1 <= mu <= lambda");
    }
    if (tournament_size < 1) {
        throw ConfigError("tournament_size must be >= 1");
    }
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw ConfigError("mutation_prob must lie in [0, 1]");
    }
    if (!std::isfinite(mutation_sigma) || !(mutation_sigma > 0.0)) {
        throw ConfigError("mutation_sigma must be positive and finite");
    }
    check_interval(init_p1, "P1");
    check_interval(init_p2, "P2");
}

Interval default_init_interval(const ObjectiveKind& kind)
{
    if (kind.family() == ObjectiveKind::Family::Ridge) {
        return {0.0, kind.ridge_n()};
    }
    return {-3.0, 3.0};
}

Genotype Population::best() const
{
    if (!evaluated()) {
        throw EvaluationError("population " + std::string(to_string(label)) + " has no fitness values");
    }
    return best_of(genotypes, fitnesses, task);
}

double Population::best_fitness() const
{
    if (!evaluated()) {
        throw EvaluationError("population " + std::string(to_string(label)) + " has no fitness values");
    }
    return fitnesses[best_index(fitnesses, task)];
}

Population init_population(const EvoParams& params, const Interval& interval, Task task, PopulationLabel label, Rng& rng)
{
    check_interval(interval, std::string(to_string(label)).c_str());
    Population pop;
    pop.task = task;
    pop.label = label;
    pop.genotypes.resize(params.lambda);
    std::uniform_real_distribution<double> uniform(interval.lo, interval.hi);
    for (auto& g : pop.genotypes) {
        g = uniform(rng);
    }
    return pop;
}

EvaluatorSample draw_sample(const std::vector<Genotype>& opponent, std::size_t mu, SamplingMode mode, Rng& rng)
{
    if (mu == 0) {
        throw EvaluationError("sample size mu must be >= 1");
    }
    if (opponent.empty()) {
        throw EvaluationError("cannot draw evaluators from an empty population");
    }
    EvaluatorSample sample;
    sample.reserve(mu);
    if (mode == SamplingMode::WithReplacement) {
        std::uniform_int_distribution<std::size_t> pick(0, opponent.size() - 1);
        for (std::size_t i = 0; i < mu; ++i) {
            sample.push_back(opponent[pick(rng)]);
        }
        return sample;
    }
    if (mu > opponent.size()) {
        throw EvaluationError("sample size mu=" + std::to_string(mu) + " exceeds opponent population size " +
                              std::to_string(opponent.size()));
    }
    // partial Fisher-Yates over indices
    std::vector<std::size_t> idx(opponent.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < mu; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
        sample.push_back(opponent[idx[i]]);
    }
    return sample;
}

Population evaluate_test(Population pop, const Population& opponent_prev, const EvoParams& params,
                         const ObjectiveKind& kind, Rng& rng)
{
    if (kind.compositional()) {
        throw ContractError("evaluate_test requires a test-based objective");
    }
    pop.samples.clear();
    pop.samples.reserve(pop.size());
    pop.fitnesses.resize(pop.size());
    pop.partner_best.reset();
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop.samples.push_back(draw_sample(opponent_prev.genotypes, params.mu, params.sampling, rng));
        pop.fitnesses[i] = subjective_test(pop.genotypes[i], pop.samples.back(), kind);
    }
    return pop;
}

Population evaluate_compositional(Population pop, const Population& opponent_prev, const ObjectiveKind& kind)
{
    if (kind.test_based()) {
        throw ContractError("evaluate_compositional requires a compositional objective");
    }
    if (!opponent_prev.evaluated()) {
        throw EvaluationError("evaluate_compositional: opponent population has not been evaluated");
    }
    const Genotype partner = opponent_prev.best();
    pop.samples.clear();
    pop.partner_best = partner;
    pop.fitnesses.resize(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop.fitnesses[i] = subjective_compositional(pop.genotypes[i], partner, kind);
    }
    return pop;
}

std::vector<Genotype> tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng)
{
    if (!pop.evaluated()) {
        throw EvaluationError("tournament_select: population has no fitness values");
    }
    if (tournament_size < 1) {
        throw ContractError("tournament_size must be >= 1");
    }
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    std::vector<Genotype> selected;
    selected.reserve(pop.size());
    for (std::size_t slot = 0; slot < pop.size(); ++slot) {
        std::size_t winner = pick(rng);
        for (std::size_t c = 1; c < tournament_size; ++c) {
            const std::size_t challenger = pick(rng);
            const double fc = pop.fitnesses[challenger];
            const double fw = pop.fitnesses[winner];
            if (pop.task == Task::Maximize ? fc > fw : fc < fw) {
                winner = challenger;
            }
        }
        selected.push_back(pop.genotypes[winner]);
    }
    return selected;
}

std::vector<Genotype> mutate(std::vector<Genotype> genotypes, const EvoParams& params, Rng& rng)
{
    std::bernoulli_distribution hit(params.mutation_prob);
    std::normal_distribution<double> noise(0.0, params.mutation_sigma);
    for (auto& g : genotypes) {
        if (hit(rng)) {
            g += noise(rng);
        }
    }
    return genotypes;
}

CoevoState bootstrap(Population pop1, Population pop2, const EvoParams& params, const ObjectiveKind& kind, Rng& rng)
{
    CoevoState state;
    state.generation = 0;
    if (kind.test_based()) {
        // Evaluate against each other's initial genotypes; the opponents'
        // fitness is not needed by the number game.
        Population seed1 = pop1;
        Population seed2 = pop2;
        state.pop1 = evaluate_test(std::move(pop1), seed2, params, kind, rng);
        state.pop2 = evaluate_test(std::move(pop2), seed1, params, kind, rng);
        return state;
    }
    // No opponent fitness exists yet: each population's first partner is a
    // uniformly drawn member of the other initial population.
    std::uniform_int_distribution<std::size_t> pick1(0, pop2.size() - 1);
    const Genotype partner_for_p1 = pop2.genotypes[pick1(rng)];
    std::uniform_int_distribution<std::size_t> pick2(0, pop1.size() - 1);
    const Genotype partner_for_p2 = pop1.genotypes[pick2(rng)];
    for (auto [pop, partner] : {std::pair{&pop1, partner_for_p1}, std::pair{&pop2, partner_for_p2}}) {
        pop->partner_best = partner;
        pop->fitnesses.resize(pop->size());
        for (std::size_t i = 0; i < pop->size(); ++i) {
            pop->fitnesses[i] = subjective_compositional(pop->genotypes[i], partner, kind);
        }
    }
    state.pop1 = std::move(pop1);
    state.pop2 = std::move(pop2);
    return state;
}

CoevoState step_generation(const CoevoState& state, const EvoParams& params, const ObjectiveKind& kind, Rng& rng)
{
    if (!state.pop1.evaluated() || !state.pop2.evaluated()) {
        throw EvaluationError("step_generation: state is not fully evaluated");
    }
    Population next1 = next_generation(state.pop1, params, rng);
    Population next2 = next_generation(state.pop2, params, rng);

    CoevoState next;
    next.generation = state.generation + 1;
    next.pop1 = evaluate(std::move(next1), state.pop2, params, kind, rng);
    next.pop2 = evaluate(std::move(next2), state.pop1, params, kind, rng);
    return next;
}

std::vector<CoevoState> run_trajectory(const EvoParams& params, const ObjectiveKind& kind, const InteractionMode& mode,
                                       std::uint64_t seed)
{
    params.validate();
    Rng rng(seed);
    Population p1 = init_population(params, params.init_p1, mode.task_p1, PopulationLabel::P1, rng);
    Population p2 = init_population(params, params.init_p2, mode.task_p2, PopulationLabel::P2, rng);

    std::vector<CoevoState> trajectory;
    trajectory.reserve(params.generations + 1);
    trajectory.push_back(bootstrap(std::move(p1), std::move(p2), params, kind, rng));
    for (std::size_t k = 0; k < params.generations; ++k) {
        trajectory.push_back(step_generation(trajectory.back(), params, kind, rng));
    }
    return trajectory;
}

} // namespace codyn
