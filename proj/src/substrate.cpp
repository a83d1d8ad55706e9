#include "codyn/substrate.hpp"

#include "codyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace codyn {

std::string_view to_string(Task task)
{
    return task == Task::Maximize ? "maximize" : "minimize";
}

std::string_view to_string(PopulationLabel label)
{
    return label == PopulationLabel::P1 ? "P1" : "P2";
}

Task parse_task(std::string_view text)
{
    if (text == "maximize" || text == "max") {
        return Task::Maximize;
    }
    if (text == "minimize" || text == "min") {
        return Task::Minimize;
    }
    throw ConfigError("unknown task '" + std::string(text) + "' (expected maximize|minimize)");
}

ObjectiveKind ObjectiveKind::ridge(double n)
{
    if (!std::isfinite(n) || n <= 0.0) {
        throw ContractError("ridge parameter n must be positive and finite");
    }
    return ObjectiveKind(Family::Ridge, n);
}

ObjectiveKind ObjectiveKind::parse(std::string_view name, double ridge_n)
{
    if (name == "crisp") {
        return crisp_linear();
    }
    if (name == "smooth") {
        return smooth_unimodal_pair();
    }
    if (name == "ridge") {
        return ridge(ridge_n);
    }
    if (name == "sinusoid") {
        return sinusoid();
    }
    throw ConfigError("unknown objective '" + std::string(name) + "' (expected crisp|smooth|ridge|sinusoid)");
}

std::string_view ObjectiveKind::name() const noexcept
{
    switch (family_) {
    case Family::CrispLinear: return "crisp";
    case Family::SmoothUnimodalPair: return "smooth";
    case Family::Ridge: return "ridge";
    case Family::Sinusoid: return "sinusoid";
    }
    return "?";
}

double ObjectiveKind::global_min() const noexcept
{
    return family_ == Family::Sinusoid ? -kSinusoidExtremum : 0.0;
}

double ObjectiveKind::optimum_partner(Task task) const
{
    const bool max = task == Task::Maximize;
    switch (family_) {
    case Family::Ridge: return max ? n_ : 0.0;
    case Family::Sinusoid: return max ? kSinusoidOptimum : -kSinusoidOptimum;
    default: break;
    }
    throw ContractError("optimum_partner is only defined for compositional objectives");
}

double eval_objective_test(const ObjectiveKind& kind, double x)
{
    switch (kind.family()) {
    case ObjectiveKind::Family::CrispLinear:
        return (x >= 0.0 && x <= 1.0) ? x : 0.5;
    case ObjectiveKind::Family::SmoothUnimodalPair:
        return 0.5 + x / (1.0 + x * x);
    default: break;
    }
    throw ContractError("eval_objective_test called with compositional objective '" + std::string(kind.name()) + "'");
}

double eval_objective_shared(const ObjectiveKind& kind, double x, double y)
{
    switch (kind.family()) {
    case ObjectiveKind::Family::Ridge: {
        const double n = kind.ridge_n();
        if (x >= 0.0 && x <= n && y >= 0.0 && y <= n) {
            return n + 2.0 * std::min(x, y) - std::max(x, y);
        }
        return n;
    }
    case ObjectiveKind::Family::Sinusoid:
        return std::sin(x + y) / (1.0 + x * x + y * y);
    default: break;
    }
    throw ContractError("eval_objective_shared called with test-based objective '" + std::string(kind.name()) + "'");
}

int score(double x, double s_i, const ObjectiveKind& kind)
{
    return eval_objective_test(kind, x) > eval_objective_test(kind, s_i) ? 1 : 0;
}

std::size_t count_wins(double x, std::span<const Genotype> sample, const ObjectiveKind& kind)
{
    const double fx = eval_objective_test(kind, x);
    return static_cast<std::size_t>(std::count_if(sample.begin(), sample.end(), [&](Genotype s) {
        return fx > eval_objective_test(kind, s);
    }));
}

double subjective_test(double x, std::span<const Genotype> sample, const ObjectiveKind& kind)
{
    if (kind.compositional()) {
        throw ContractError("subjective_test requires a test-based objective");
    }
    if (sample.empty()) {
        throw EvaluationError("empty evaluator sample: evaluation is disengaged");
    }
    return static_cast<double>(count_wins(x, sample, kind)) / static_cast<double>(sample.size());
}

double subjective_compositional(double x, double partner_best, const ObjectiveKind& kind)
{
    return eval_objective_shared(kind, x, partner_best);
}

std::size_t best_index(std::span<const double> fitnesses, Task task)
{
    if (fitnesses.empty()) {
        throw EvaluationError("best_of on an empty population");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < fitnesses.size(); ++i) {
        const bool better = task == Task::Maximize ? fitnesses[i] > fitnesses[best] : fitnesses[i] < fitnesses[best];
        if (better) {
            best = i;
        }
    }
    return best;
}

Genotype best_of(std::span<const Genotype> genotypes, std::span<const double> fitnesses, Task task)
{
    if (genotypes.size() != fitnesses.size()) {
        throw ContractError("best_of: genotype and fitness lists differ in length");
    }
    return genotypes[best_index(fitnesses, task)];
}

} // namespace codyn
