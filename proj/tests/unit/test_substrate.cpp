#include "codyn/error.hpp"
#include "codyn/random.hpp"
#include "codyn/substrate.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace codyn;

namespace {

const auto crisp = ObjectiveKind::crisp_linear();
const auto smooth = ObjectiveKind::smooth_unimodal_pair();
const auto ridge8 = ObjectiveKind::ridge(8.0);
const auto sinusoid = ObjectiveKind::sinusoid();

} // namespace

TEST_CASE("crisp linear objective")
{
    CHECK(eval_objective_test(crisp, 1.0) == 1.0);
    CHECK(eval_objective_test(crisp, 0.0) == 0.0);
    CHECK(eval_objective_test(crisp, 0.25) == 0.25);
    CHECK(eval_objective_test(crisp, 2.0) == 0.5);
    CHECK(eval_objective_test(crisp, -0.001) == 0.5);
}

TEST_CASE("smooth unimodal pair objective")
{
    CHECK(eval_objective_test(smooth, -1.0) == 0.0);
    CHECK(eval_objective_test(smooth, 1.0) == 1.0);
    CHECK(eval_objective_test(smooth, 0.0) == 0.5);
    CHECK(eval_objective_test(smooth, 1e6) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("test-based evaluation rejects compositional kinds")
{
    CHECK_THROWS_AS(eval_objective_test(ridge8, 1.0), ContractError);
    CHECK_THROWS_AS(eval_objective_test(sinusoid, 1.0), ContractError);
    CHECK_THROWS_AS(eval_objective_shared(crisp, 1.0, 1.0), ContractError);
    CHECK_THROWS_AS(eval_objective_shared(smooth, 1.0, 1.0), ContractError);
    CHECK_THROWS_AS(ObjectiveKind::ridge(0.0), ContractError);
    CHECK_THROWS_AS(ObjectiveKind::ridge(-1.0), ContractError);
}

TEST_CASE("ridge objective")
{
    CHECK(eval_objective_shared(ridge8, 8, 8) == 16.0);
    CHECK(eval_objective_shared(ridge8, 0, 8) == 0.0);
    CHECK(eval_objective_shared(ridge8, 8, 0) == 0.0);
    CHECK(eval_objective_shared(ridge8, -1, 4) == 8.0);
    CHECK(eval_objective_shared(ridge8, 4, 2) == 8.0); // 8 + 2*2 - 4
    CHECK(eval_objective_shared(ridge8, 9, 4) == 8.0);

    SUBCASE("continuous at the (0,0) corner")
    {
        CHECK(eval_objective_shared(ridge8, 0, 0) == 8.0);
        CHECK(eval_objective_shared(ObjectiveKind::ridge(3.5), 0, 0) == 3.5);
    }
}

TEST_CASE("sinusoid objective")
{
    CHECK(std::abs(eval_objective_shared(sinusoid, 0.4925, 0.4925) - 0.5611) < 1e-3);
    CHECK(std::abs(eval_objective_shared(sinusoid, -0.4925, -0.4925) + 0.5611) < 1e-3);
    CHECK(eval_objective_shared(sinusoid, 0, 0) == 0.0);

    // the diagonal optimum is the global one: brute-force scan of the plane
    double best = -1.0;
    for (int i = -300; i <= 300; ++i) {
        for (int j = -300; j <= 300; ++j) {
            best = std::max(best, eval_objective_shared(sinusoid, i * 0.01, j * 0.01));
        }
    }
    CHECK(std::abs(best - 0.5611) < 1e-3);
}

TEST_CASE("score is strict")
{
    CHECK(score(0.9, 0.1, crisp) == 1);
    CHECK(score(0.5, 0.5, crisp) == 0);
    CHECK(score(2.0, 3.0, crisp) == 0); // both level off at 0.5
    CHECK(score(0.1, 0.9, crisp) == 0);
}

TEST_CASE("subjective_test on hand-enumerated samples")
{
    const std::vector<double> sample{0.1, 0.5, 0.9};
    // scores (1, 1, 0)
    CHECK(subjective_test(0.8, sample, crisp) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(subjective_test(0.0, sample, crisp) == 0.0);
    CHECK(subjective_test(1.0, sample, crisp) == 1.0);

    CHECK_THROWS_AS(subjective_test(0.5, std::vector<double>{}, crisp), EvaluationError);
    CHECK_THROWS_AS(subjective_test(0.5, sample, ridge8), ContractError);
}

TEST_CASE("subjective_test values lie on the 1/mu lattice and follow f_obj")
{
    Rng rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto& kind = trial % 2 == 0 ? crisp : smooth;
        std::vector<double> sample(12);
        for (auto& s : sample) {
            s = u(rng);
        }
        const double x1 = u(rng);
        const double x2 = u(rng);
        const double f1 = subjective_test(x1, sample, kind);
        const double f2 = subjective_test(x2, sample, kind);
        const double k1 = f1 * 12.0;
        CHECK(k1 == std::round(k1));
        CHECK(f1 == static_cast<double>(count_wins(x1, sample, kind)) / 12.0);
        if (eval_objective_test(kind, x1) >= eval_objective_test(kind, x2)) {
            CHECK(f1 >= f2);
        } else {
            CHECK(f1 <= f2);
        }
    }
}

TEST_CASE("subjective fitness converges to objective for a large uniform sample")
{
    Rng rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> sample(10000);
    for (auto& s : sample) {
        s = u(rng);
    }
    double worst = 0.0;
    for (int j = 0; j <= 100; ++j) {
        const double x = j / 100.0;
        worst = std::max(worst, std::abs(subjective_test(x, sample, crisp) - eval_objective_test(crisp, x)));
    }
    CHECK(worst <= 0.03);
}

TEST_CASE("compositional subjective fitness is a slice")
{
    CHECK(subjective_compositional(8, 8, ridge8) == 16.0);
    CHECK(subjective_compositional(4, 2, ridge8) == 8.0);
    CHECK(std::abs(subjective_compositional(0.4925, 0.4925, sinusoid) - 0.5611) < 1e-3);

    Rng rng(3);
    std::uniform_real_distribution<double> u(-4.0, 12.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        const double b = u(rng);
        for (const auto& kind : {ridge8, sinusoid}) {
            CHECK(subjective_compositional(x, b, kind) == eval_objective_shared(kind, x, b));
        }
    }
}

TEST_CASE("best_of")
{
    const std::vector<double> g{1, 2, 3};
    const std::vector<double> f{0.1, 0.9, 0.5};
    CHECK(best_of(g, f, Task::Maximize) == 2);
    CHECK(best_of(g, f, Task::Minimize) == 1);
    CHECK(best_of(std::vector<double>{1, 2}, std::vector<double>{0.7, 0.7}, Task::Maximize) == 1);
    CHECK(best_of(std::vector<double>{1, 2}, std::vector<double>{0.7, 0.7}, Task::Minimize) == 1);
    CHECK_THROWS_AS(best_of(std::vector<double>{}, std::vector<double>{}, Task::Maximize), EvaluationError);
    CHECK_THROWS_AS(best_of(g, std::vector<double>{1.0}, Task::Maximize), ContractError);

    SUBCASE("invariant under strictly increasing transforms")
    {
        Rng rng(11);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> fit(9);
            std::vector<double> warped(9);
            std::vector<double> geno(9);
            for (std::size_t i = 0; i < fit.size(); ++i) {
                fit[i] = std::round(u(rng) * 4.0) / 4.0; // coarse values force ties
                warped[i] = std::exp(3.0 * fit[i]) + 7.0;
                geno[i] = static_cast<double>(i);
            }
            for (auto task : {Task::Maximize, Task::Minimize}) {
                CHECK(best_of(geno, fit, task) == best_of(geno, warped, task));
            }
        }
    }
}

TEST_CASE("interaction mode derives cooperation from the tasks")
{
    CHECK_FALSE(InteractionMode::competitive().cooperative());
    CHECK(InteractionMode::competitive().task_p1 == Task::Minimize);
    CHECK(InteractionMode::competitive().task_p2 == Task::Maximize);
    CHECK(InteractionMode::cooperation().cooperative());
    CHECK(InteractionMode{Task::Minimize, Task::Minimize}.cooperative());
}

TEST_CASE("optimum partners and global minima")
{
    CHECK(ridge8.optimum_partner(Task::Maximize) == 8.0);
    CHECK(ridge8.optimum_partner(Task::Minimize) == 0.0);
    CHECK(sinusoid.optimum_partner(Task::Maximize) == 0.4925);
    CHECK(sinusoid.optimum_partner(Task::Minimize) == -0.4925);
    CHECK_THROWS_AS((void)smooth.optimum_partner(Task::Maximize), ContractError);
    CHECK(sinusoid.global_min() == -0.5611);
    CHECK(ridge8.global_min() == 0.0);
}

TEST_CASE("seed derivation is a pure 64-bit function")
{
    static_assert(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    // Reference values of SplitMix64 (first output for state 0 is 0xE220A8397B1DCDAF).
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
}
