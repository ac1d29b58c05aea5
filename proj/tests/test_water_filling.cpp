#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heatmatch/generators.hpp"
#include "heatmatch/water_filling.hpp"
#include "support/exact_oracle.hpp"
#include "support/instances.hpp"

#include <random>

using namespace heatmatch;

namespace {

SingleIntervalInstance loads_of(const MatchesInstance& inst)
{
    SingleIntervalInstance out;
    out.hot = inst.sigma().col(0);
    out.cold = inst.delta().col(0);
    return out;
}

}  // namespace

TEST_CASE("staircase family: both engines use k(k+1)/2 matches, optimum is k")
{
    for (int k = 2; k <= 5; ++k) {
        CAPTURE(k);
        const auto inst = generate_tightness_family(Family::wf, k);
        const auto greedy = water_fill(inst);
        const auto exact = water_fill(inst, {SingleIntervalEngine::exact});
        CHECK(verify_solution(inst, greedy.solution).feasible);
        CHECK(verify_solution(inst, exact.solution).feasible);
        CHECK(greedy.solution.match_count() == k * (k + 1) / 2);
        CHECK(exact.solution.match_count() == k * (k + 1) / 2);
        CHECK(exact.fallback_intervals.empty());
        CHECK(oracle::exact_min_matches(inst) == k);
    }
}

TEST_CASE("staircase family: hot i is matched with colds 1..k-i+1")
{
    const int k = 4;
    const auto sol = water_fill(generate_tightness_family(Family::wf, k)).solution;
    MatchSet expected;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k - i; ++j) expected.insert({i, j});
    CHECK(sol.matches == expected);
}

TEST_CASE("one interval: greedy engine is ig, exact engine is exact_bins")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        oracle::InstanceShape shape{5, 5, 1, 8, 9};
        auto inst = oracle::random_feasible(rng, shape).without_empty_streams();
        if (inst.n() == 0) continue;
        CAPTURE(trial);
        const auto loads = loads_of(inst);
        CHECK(water_fill(inst).solution.match_count() == ig(loads).match_count());
        CHECK(water_fill(inst, {SingleIntervalEngine::exact}).solution.match_count() ==
              exact_bins(loads).solution.match_count());
    }
}

TEST_CASE("fuzz: feasible output within the k(n+m) and 2k OPT bounds")
{
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        oracle::InstanceShape shape{4, 4, 4, 8, 6};
        const auto inst = oracle::random_feasible(rng, shape);
        CAPTURE(trial);
        for (auto engine : {SingleIntervalEngine::greedy, SingleIntervalEngine::exact}) {
            const auto result = water_fill(inst, {engine});
            const auto report = verify_solution(inst, result.solution);
            CHECK_MESSAGE(report.feasible, report.summary());
            const int v = result.solution.match_count();
            CHECK(v <= inst.k() * (inst.n() + inst.m()));
            if (inst.n() * inst.m() <= 12) {
                const int opt = oracle::exact_min_matches(inst);
                CHECK(v >= opt);
                CHECK(v <= 2 * inst.k() * opt);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("exact engine never uses more matches than greedy within one interval sweep step")
{
    // Cold demand in the top interval only: the sweep reduces to one no-conservation step.
    HeatMatrix sigma(4, 2);
    sigma << 3, 1, 2, 1, 2, 0, 5, 0;
    HeatMatrix delta(2, 2);
    delta << 4, 0, 3, 7;
    const MatchesInstance inst(sigma, delta);
    const auto greedy = water_fill(inst);
    const auto exact = water_fill(inst, {SingleIntervalEngine::exact});
    CHECK(verify_solution(inst, greedy.solution).feasible);
    CHECK(verify_solution(inst, exact.solution).feasible);
    CHECK(exact.solution.match_count() <= greedy.solution.match_count());
}

TEST_CASE("engine names")
{
    CHECK(to_string(SingleIntervalEngine::greedy) == "greedy");
    CHECK(to_string(SingleIntervalEngine::exact) == "exact");
}
