#include "codyn/error.hpp"
#include "codyn/evolution.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace codyn;

namespace {

Population make_pop(std::vector<double> genotypes, std::vector<double> fitnesses, Task task,
                    PopulationLabel label = PopulationLabel::P1)
{
    Population pop;
    pop.genotypes = std::move(genotypes);
    pop.fitnesses = std::move(fitnesses);
    pop.task = task;
    pop.label = label;
    return pop;
}

const auto crisp = ObjectiveKind::crisp_linear();
const auto smooth = ObjectiveKind::smooth_unimodal_pair();
const auto ridge8 = ObjectiveKind::ridge(8.0);
const auto sinusoid = ObjectiveKind::sinusoid();

} // namespace

TEST_CASE("parameter validation")
{
    EvoParams p;
    CHECK_NOTHROW(p.validate());
    p.mu = 25;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = EvoParams{};
    p.tournament_size = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = EvoParams{};
    p.mutation_sigma = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = EvoParams{};
    p.mutation_prob = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = EvoParams{};
    p.init_p2 = {1.0, 1.0};
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("init_population")
{
    EvoParams p;
    Rng rng(1);
    const auto pop = init_population(p, {0.0, 1.0}, Task::Maximize, PopulationLabel::P1, rng);
    CHECK(pop.size() == 24);
    CHECK_FALSE(pop.evaluated());
    for (double g : pop.genotypes) {
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
    }

    p.lambda = 1;
    const auto single = init_population(p, {0.5, 0.5 + 1e-9}, Task::Maximize, PopulationLabel::P1, rng);
    REQUIRE(single.size() == 1);
    CHECK(single.genotypes[0] == doctest::Approx(0.5));

    Rng a(99);
    Rng b(99);
    p.lambda = 24;
    CHECK(init_population(p, {-3, 3}, Task::Minimize, PopulationLabel::P2, a).genotypes ==
          init_population(p, {-3, 3}, Task::Minimize, PopulationLabel::P2, b).genotypes);

    CHECK_THROWS_AS(init_population(p, {1.0, 0.0}, Task::Maximize, PopulationLabel::P1, rng), ConfigError);
}

TEST_CASE("draw_sample without replacement picks distinct members")
{
    std::vector<double> opponent(24);
    std::iota(opponent.begin(), opponent.end(), 0.0);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto s = draw_sample(opponent, 12, SamplingMode::WithoutReplacement, rng);
        CHECK(s.size() == 12);
        CHECK(std::set<double>(s.begin(), s.end()).size() == 12);
    }
    const auto all = draw_sample(opponent, 24, SamplingMode::WithoutReplacement, rng);
    CHECK(std::set<double>(all.begin(), all.end()).size() == 24);
    CHECK_THROWS_AS(draw_sample(opponent, 25, SamplingMode::WithoutReplacement, rng), EvaluationError);
    CHECK(draw_sample(opponent, 30, SamplingMode::WithReplacement, rng).size() == 30);
}

TEST_CASE("evaluate_test")
{
    EvoParams p;
    p.mu = 3;
    Rng rng(8);

    SUBCASE("forced full sample reproduces hand enumeration")
    {
        const auto opp = make_pop({0.1, 0.5, 0.9}, {}, Task::Maximize, PopulationLabel::P2);
        const auto out = evaluate_test(make_pop({0.8}, {}, Task::Maximize), opp, p, crisp, rng);
        CHECK(out.fitnesses[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        REQUIRE(out.samples.size() == 1);
        CHECK(out.samples[0].size() == 3);
    }
    SUBCASE("opponents at the global minimum")
    {
        const auto opp = make_pop({0.0, 0.0, 0.0}, {}, Task::Maximize, PopulationLabel::P2);
        const auto out = evaluate_test(make_pop({0.3, 0.9, 5.0}, {}, Task::Maximize), opp, p, crisp, rng);
        for (double f : out.fitnesses) {
            CHECK(f == 1.0);
        }
    }
    SUBCASE("equal objective fitness scores zero")
    {
        const auto opp = make_pop({2.0, -4.0, 9.0}, {}, Task::Maximize, PopulationLabel::P2);
        const auto out = evaluate_test(make_pop({3.0}, {}, Task::Maximize), opp, p, crisp, rng);
        CHECK(out.fitnesses[0] == 0.0);
    }
    SUBCASE("errors")
    {
        p.mu = 4;
        const auto opp = make_pop({0.1, 0.5, 0.9}, {}, Task::Maximize, PopulationLabel::P2);
        CHECK_THROWS_AS(evaluate_test(make_pop({0.8}, {}, Task::Maximize), opp, p, crisp, rng), EvaluationError);
        p.mu = 3;
        CHECK_THROWS_AS(evaluate_test(make_pop({0.8}, {}, Task::Maximize), opp, p, ridge8, rng), ContractError);
    }
}

TEST_CASE("evaluate_compositional")
{
    SUBCASE("ridge maximum")
    {
        const auto opp = make_pop({8.0, 3.0}, {16.0, 1.0}, Task::Maximize, PopulationLabel::P2);
        const auto out = evaluate_compositional(make_pop({8.0}, {}, Task::Maximize), opp, ridge8);
        CHECK(out.fitnesses[0] == 16.0);
        CHECK(out.partner_best == 8.0);
    }
    SUBCASE("ridge interior point")
    {
        const auto opp = make_pop({5.0, 2.0}, {9.0, 1.0}, Task::Minimize, PopulationLabel::P2);
        const auto out = evaluate_compositional(make_pop({4.0}, {}, Task::Maximize), opp, ridge8);
        CHECK(out.partner_best == 2.0);
        CHECK(out.fitnesses[0] == 8.0);
    }
    SUBCASE("sinusoid zero crossing")
    {
        const auto opp = make_pop({0.7, -1.2}, {0.3, 0.1}, Task::Maximize, PopulationLabel::P2);
        const auto out = evaluate_compositional(make_pop({-0.7, 0.2}, {}, Task::Maximize), opp, sinusoid);
        CHECK(out.fitnesses[0] == 0.0);
    }
    SUBCASE("unevaluated opponent")
    {
        const auto opp = make_pop({0.7, -1.2}, {}, Task::Maximize, PopulationLabel::P2);
        CHECK_THROWS_AS(evaluate_compositional(make_pop({0.1}, {}, Task::Maximize), opp, sinusoid), EvaluationError);
    }
}

TEST_CASE("tournament_select")
{
    Rng rng(13);
    SUBCASE("equal fitness degenerates to uniform resampling")
    {
        const auto pop = make_pop({1, 2, 3, 4}, {0.5, 0.5, 0.5, 0.5}, Task::Maximize);
        const auto out = tournament_select(pop, 2, rng);
        CHECK(out.size() == 4);
        for (double g : out) {
            CHECK(std::ranges::find(pop.genotypes, g) != pop.genotypes.end());
        }
    }
    SUBCASE("better of two wins three quarters of the slots")
    {
        // P(better drawn at least once in 2 draws with replacement) = 1 - 1/4
        const auto pop = make_pop({0.0, 1.0}, {0.0, 1.0}, Task::Maximize);
        std::size_t wins = 0;
        for (int t = 0; t < 5000; ++t) {
            for (double g : tournament_select(pop, 2, rng)) {
                wins += g == 1.0 ? 1 : 0;
            }
        }
        CHECK(std::abs(static_cast<double>(wins) / 10000.0 - 0.75) <= 0.02);
    }
    SUBCASE("minimize mirrors maximize")
    {
        Rng a(21);
        Rng b(21);
        const auto max_pop = make_pop({0.0, 1.0}, {1.0, 0.0}, Task::Maximize);
        const auto min_pop = make_pop({0.0, 1.0}, {0.0, 1.0}, Task::Minimize);
        CHECK(tournament_select(max_pop, 2, a) == tournament_select(min_pop, 2, b));
    }
    SUBCASE("selection does not lower expected fitness")
    {
        const auto pop = make_pop({0, 1, 2, 3, 4, 5}, {0.1, 0.7, 0.3, 0.9, 0.2, 0.5}, Task::Maximize);
        const double pre = std::accumulate(pop.fitnesses.begin(), pop.fitnesses.end(), 0.0) / 6.0;
        std::vector<double> means;
        for (int rep = 0; rep < 2000; ++rep) {
            const auto sel = tournament_select(pop, 2, rng);
            double s = 0.0;
            for (double g : sel) {
                s += pop.fitnesses[static_cast<std::size_t>(g)];
            }
            means.push_back(s / 6.0);
        }
        const double m = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
        double var = 0.0;
        for (double v : means) {
            var += (v - m) * (v - m);
        }
        const double se = std::sqrt(var / static_cast<double>(means.size() - 1) / static_cast<double>(means.size()));
        CHECK(m >= pre - 3.0 * se);
        CHECK(m > pre);
    }
}

TEST_CASE("mutate")
{
    EvoParams p;
    Rng rng(17);
    const std::vector<double> genes{-1.0, 0.0, 2.5, 7.0};

    p.mutation_prob = 0.0;
    CHECK(mutate(genes, p, rng) == genes);

    p.mutation_prob = 1.0;
    p.mutation_sigma = 1e-300;
    const auto tiny = mutate(genes, p, rng);
    for (std::size_t i = 0; i < genes.size(); ++i) {
        CHECK(tiny[i] == doctest::Approx(genes[i]));
    }

    SUBCASE("Gaussian moments")
    {
        p.mutation_prob = 1.0;
        p.mutation_sigma = 0.1;
        const std::size_t n = 100000;
        const auto out = mutate(std::vector<double>(n, 0.0), p, rng);
        const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(n);
        double var = 0.0;
        for (double v : out) {
            var += (v - mean) * (v - mean);
        }
        const double sd = std::sqrt(var / static_cast<double>(n - 1));
        CHECK(std::abs(mean) <= 3.0 * 0.1 / std::sqrt(static_cast<double>(n)));
        CHECK(std::abs(sd - 0.1) <= 0.005);
    }
    SUBCASE("mutation probability")
    {
        p.mutation_prob = 0.5;
        const std::size_t n = 100000;
        const auto out = mutate(std::vector<double>(n, 0.0), p, rng);
        const auto changed = std::ranges::count_if(out, [](double v) { return v != 0.0; });
        CHECK(std::abs(static_cast<double>(changed) / static_cast<double>(n) - 0.5) <= 0.01);
    }
}

TEST_CASE("trajectory structure")
{
    EvoParams p;
    p.generations = 0;
    const auto t0 = run_trajectory(p, smooth, InteractionMode::competitive(), 4);
    REQUIRE(t0.size() == 1);
    CHECK(t0[0].pop1.evaluated());
    CHECK(t0[0].pop2.evaluated());
    CHECK(t0[0].pop1.samples.size() == 24);

    p.generations = 10;
    const auto a = run_trajectory(p, smooth, InteractionMode::competitive(), 4);
    const auto b = run_trajectory(p, smooth, InteractionMode::competitive(), 4);
    REQUIRE(a.size() == 11);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].generation == k);
        CHECK(a[k].pop1.size() == 24);
        CHECK(a[k].pop2.size() == 24);
        CHECK(a[k].pop1.genotypes == b[k].pop1.genotypes);
        CHECK(a[k].pop2.fitnesses == b[k].pop2.fitnesses);
        CHECK(a[k].pop1.samples == b[k].pop1.samples);
        CHECK(a[k].pop1.task == Task::Minimize);
        CHECK(a[k].pop2.task == Task::Maximize);
    }
    CHECK(run_trajectory(p, smooth, InteractionMode::competitive(), 5)[3].pop1.genotypes != a[3].pop1.genotypes);
}

TEST_CASE("evaluation causality: test-based fitness recomputes from logged samples")
{
    EvoParams p;
    const auto traj = run_trajectory(p, smooth, InteractionMode::cooperation(), 31);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        for (const auto* pair : {&traj[k].pop1, &traj[k].pop2}) {
            const auto& opponent_prev = pair == &traj[k].pop1 ? traj[k - 1].pop2 : traj[k - 1].pop1;
            for (std::size_t i = 0; i < pair->size(); ++i) {
                const auto& sample = pair->samples[i];
                CHECK(sample.size() == p.mu);
                CHECK(pair->fitnesses[i] == subjective_test(pair->genotypes[i], sample, smooth));
                for (double s : sample) {
                    CHECK(std::ranges::find(opponent_prev.genotypes, s) != opponent_prev.genotypes.end());
                }
            }
        }
    }
}

TEST_CASE("compositional step: fitness is the slice at the opponent's previous best")
{
    EvoParams p = EvoParams{};
    p.init_p1 = p.init_p2 = default_init_interval(ridge8);
    for (const auto& kind : {ridge8, sinusoid}) {
        const auto traj = run_trajectory(p, kind, InteractionMode::competitive(), 77);
        for (std::size_t k = 1; k < traj.size(); ++k) {
            const double b2 = best_of(traj[k - 1].pop2.genotypes, traj[k - 1].pop2.fitnesses, traj[k - 1].pop2.task);
            const double b1 = best_of(traj[k - 1].pop1.genotypes, traj[k - 1].pop1.fitnesses, traj[k - 1].pop1.task);
            CHECK(traj[k].pop1.partner_best == b2);
            CHECK(traj[k].pop2.partner_best == b1);
            for (std::size_t i = 0; i < traj[k].pop1.size(); ++i) {
                CHECK(traj[k].pop1.fitnesses[i] == eval_objective_shared(kind, traj[k].pop1.genotypes[i], b2));
                CHECK(traj[k].pop2.fitnesses[i] == eval_objective_shared(kind, traj[k].pop2.genotypes[i], b1));
            }
        }
    }
}

TEST_CASE("no clipping: genotypes drift outside the initialization interval")
{
    EvoParams p;
    p.mutation_prob = 1.0;
    p.mutation_sigma = 5.0;
    p.init_p1 = p.init_p2 = {0.0, 1.0};
    const auto traj = run_trajectory(p, crisp, InteractionMode::competitive(), 3);
    bool outside = false;
    for (const auto& s : traj) {
        for (double g : s.pop1.genotypes) {
            outside = outside || g < 0.0 || g > 1.0;
        }
    }
    CHECK(outside);
}

TEST_CASE("step_generation increments the counter and keeps sizes")
{
    EvoParams p;
    p.generations = 0;
    const auto t = run_trajectory(p, crisp, InteractionMode::competitive(), 2);
    Rng rng(1);
    const auto next = step_generation(t[0], p, crisp, rng);
    CHECK(next.generation == 1);
    CHECK(next.pop1.size() == 24);
    CHECK(next.pop2.evaluated());

    CoevoState bad = t[0];
    bad.pop2.fitnesses.clear();
    CHECK_THROWS_AS(step_generation(bad, p, crisp, rng), EvaluationError);
}
