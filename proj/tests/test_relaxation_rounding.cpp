#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heatmatch/flow_engine.hpp"
#include "heatmatch/relaxation_rounding.hpp"
#include "support/exact_oracle.hpp"
#include "support/instances.hpp"
#include "support/lp_oracle.hpp"

#include <cmath>

using namespace heatmatch;

namespace {

MatchesInstance single(std::vector<Heat> h, std::vector<Heat> c)
{
    HeatMatrix sigma(static_cast<long>(h.size()), 1);
    HeatMatrix delta(static_cast<long>(c.size()), 1);
    for (std::size_t i = 0; i < h.size(); ++i) sigma(static_cast<long>(i), 0) = h[i];
    for (std::size_t j = 0; j < c.size(); ++j) delta(static_cast<long>(j), 0) = c[j];
    return MatchesInstance(sigma, delta);
}

// The relaxation written with explicit y variables.
long double frac_lp_oracle(const MatchesInstance& inst, const BigMTable& bigm)
{
    oracle::LinearProgram lp;
    const int n = inst.n();
    const int m = inst.m();
    const int k = inst.k();
    std::vector<int> y(n * m, -1);
    std::vector<std::vector<std::pair<int, oracle::Rational>>> hot_rows(n * k), cold_rows(m * k), pair_rows(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (bigm(i, j) == 0) continue;
            y[i * m + j] = lp.add_var(1);
            lp.add_row({{y[i * m + j], 1}}, oracle::Sense::le, 1);
            for (int s = 0; s < k; ++s)
                for (int t = s; t < k; ++t) {
                    if (inst.sigma(i, s) == 0 || inst.delta(j, t) == 0) continue;
                    const int v = lp.add_var(0);
                    hot_rows[i * k + s].push_back({v, 1});
                    cold_rows[j * k + t].push_back({v, 1});
                    pair_rows[i * m + j].push_back({v, 1});
                }
        }
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < k; ++s)
            if (inst.sigma(i, s) > 0) lp.add_row(hot_rows[i * k + s], oracle::Sense::eq, inst.sigma(i, s));
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < k; ++t)
            if (inst.delta(j, t) > 0) lp.add_row(cold_rows[j * k + t], oracle::Sense::eq, inst.delta(j, t));
    for (int p = 0; p < n * m; ++p) {
        if (y[p] < 0 || pair_rows[p].empty()) continue;
        auto terms = pair_rows[p];
        terms.push_back({y[p], -oracle::Rational(bigm(p / m, p % m))});
        lp.add_row(terms, oracle::Sense::le, 0);
    }
    const auto sol = oracle::solve_lp(lp);
    REQUIRE(sol.has_value());
    return static_cast<long double>(sol->value.convert_to<double>());
}

// The layered source / hot / hot-interval / cold-interval / cold / sink network.
long double six_layer_objective(const MatchesInstance& inst, const BigMTable& bigm)
{
    FlowNetwork<FixedPointCost> net;
    const int n = inst.n();
    const int m = inst.m();
    const int k = inst.k();
    const int source = net.add_node(inst.total_supply());
    const int sink = net.add_node(-inst.total_demand());
    std::vector<int> hs(n * k);
    std::vector<int> ct(m * k);
    for (int i = 0; i < n; ++i) {
        const int hot = net.add_node();
        net.add_arc(source, hot, inst.hot_total(i));
        for (int s = 0; s < k; ++s) {
            hs[i * k + s] = net.add_node();
            net.add_arc(hot, hs[i * k + s], inst.sigma(i, s));
        }
    }
    for (int j = 0; j < m; ++j) {
        const int cold = net.add_node();
        net.add_arc(cold, sink, inst.cold_total(j));
        for (int t = 0; t < k; ++t) {
            ct[j * k + t] = net.add_node();
            net.add_arc(ct[j * k + t], cold, inst.delta(j, t));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (bigm(i, j) > 0)
                for (int s = 0; s < k; ++s)
                    for (int t = s; t < k; ++t)
                        net.add_arc(hs[i * k + s], ct[j * k + t], kUnbounded, FixedPointCost::ratio(1, bigm(i, j)));
    return min_cost_flow(net).objective;
}

void check_solution(const MatchesInstance& inst, const Solution& sol)
{
    const auto report = verify_solution(inst, sol);
    CHECK_MESSAGE(report.feasible, report.summary());
}

}  // namespace

TEST_CASE("fractional_lp on one pair")
{
    const auto inst = single({7}, {7});
    const auto table = big_m_table(inst, BigMMethod::trivial);
    const auto frac = fractional_lp(inst, table);
    CHECK(frac.objective == doctest::Approx(1.0));
    const auto r = flpr(inst, table);
    CHECK(r.solution.match_count() == 1);
    CHECK(r.filling_ratio == 1);
}

TEST_CASE("fractional_lp on the uniform 3x3 interval")
{
    const auto inst = single({3, 3, 3}, {3, 3, 3});
    const auto table = big_m_table(inst, BigMMethod::trivial);
    CHECK(fractional_lp(inst, table).objective == doctest::Approx(3.0));
    const auto r = flpr(inst, table);
    CHECK(r.solution.match_count() >= 3);
    CHECK(r.solution.match_count() <= 9);
}

TEST_CASE("cost_lp examples")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 3, 7, 6}).without_empty_streams();
        const auto table = big_m_table(inst, BigMMethod::mhg);
        CHECK(cost_lp(inst, CostVector(inst.n(), inst.m(), {0, 1})).objective == 0);
        CostVector bounds(inst.n(), inst.m());
        for (int i = 0; i < inst.n(); ++i)
            for (int j = 0; j < inst.m(); ++j) bounds(i, j) = {1, inst.hot_total(i)};
        CHECK(cost_lp(inst, bounds).objective == doctest::Approx(inst.n()));
        CostVector recip(inst.n(), inst.m());
        for (int i = 0; i < inst.n(); ++i)
            for (int j = 0; j < inst.m(); ++j) recip(i, j) = table(i, j) ? Ratio{1, table(i, j)} : Ratio{0, 0};
        CHECK(cost_lp(inst, recip).objective == doctest::Approx(fractional_lp(inst, table).objective));
    }
    CHECK_THROWS_AS(cost_lp(single({2}, {2}), CostVector(2, 1)), std::invalid_argument);
}

TEST_CASE("fractional_lp agrees with the LP and the six-layer network")
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 120; ++trial) {
        const auto inst = oracle::random_feasible(rng, {3, 3, 3, 6, 6});
        for (auto method : {BigMMethod::trivial, BigMMethod::mhg}) {
            const auto table = big_m_table(inst, method);
            const auto frac = fractional_lp(inst, table);
            CHECK(static_cast<double>(frac.objective) ==
                  doctest::Approx(static_cast<double>(frac_lp_oracle(inst, table))).epsilon(1e-9));
            CHECK(static_cast<double>(frac.objective) ==
                  doctest::Approx(static_cast<double>(six_layer_objective(inst, table))).epsilon(1e-9));
            CHECK(frac.q.total() == inst.total_supply());
            for (const auto& f : frac.q.flows()) CHECK(f.hot_interval <= f.cold_interval);
        }
    }
}

TEST_CASE("relaxations bound the exact optimum")
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 150; ++trial) {
        const auto inst = oracle::random_feasible(rng, {3, 3, 3, 6, 6});
        const int opt = oracle::exact_min_matches(inst);
        const auto trivial = big_m_table(inst, BigMMethod::trivial);
        const auto tight = big_m_table(inst, BigMMethod::mhg);
        const long double lo = fractional_lp(inst, trivial).objective;
        const long double hi = fractional_lp(inst, tight).objective;
        CHECK(hi >= lo - 1e-9L);
        CHECK(hi <= opt + 1e-9L);
        CHECK(static_cast<int>(cover_milp(inst, tight).matches.size()) <= opt);
        const auto rounded = flpr(inst, tight);
        check_solution(inst, rounded.solution);
        CHECK(rounded.solution.match_count() >= opt);
        CHECK(rounded.solution.match_count() <= rounded.fractional.objective / rounded.filling_ratio + 1e-6L);
    }
}

TEST_CASE("lrr keeps the better solution")
{
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 4, 8, 6});
        const auto table = big_m_table(inst, BigMMethod::mhg);
        const auto seed = flpr(inst, table).solution;
        const auto improved = lrr(inst, table);
        check_solution(inst, improved);
        CHECK(improved.match_count() <= seed.match_count());
        const auto policy1 = lrr(inst, table, {CostPolicy::max_heat});
        CHECK(policy1.matches == seed.matches);
        check_solution(inst, lrr(inst, table, {CostPolicy::stream_bounds}));
    }
    const auto one = single({4}, {4});
    const auto table = big_m_table(one, BigMMethod::mhg);
    CHECK(lrr(one, table).match_count() == 1);
    CHECK(parse_cost_policy("existing") == CostPolicy::existing);
    CHECK_THROWS_AS(parse_cost_policy("alpha"), std::invalid_argument);
}

TEST_CASE("cover_milp examples")
{
    const auto one = single({5}, {5});
    CHECK(cover_milp(one, big_m_table(one, BigMMethod::trivial)).matches == MatchSet{{0, 0}});
    const auto two = single({4, 4}, {4, 4});
    const auto cover = cover_milp(two, big_m_table(two, BigMMethod::trivial));
    CHECK(cover.matches.size() == 2);
    CHECK(cover.optimal);
    BigMTable weak = big_m_table(two, BigMMethod::trivial);
    weak.bound(0, 0) = weak.bound(0, 1) = 1;
    CHECK_THROWS_WITH_AS(cover_milp(two, weak), doctest::Contains("H1"), InfeasibleError);
}

TEST_CASE("cover_milp matches exhaustive search")
{
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 3, 8, 6});
        const auto table = big_m_table(inst, rng() % 2 ? BigMMethod::mhg : BigMMethod::trivial);
        const int pairs = inst.n() * inst.m();
        int best = pairs + 1;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            const int count = __builtin_popcount(mask);
            if (count >= best) continue;
            bool ok = true;
            for (int i = 0; i < inst.n(); ++i) {
                Heat s = 0;
                for (int j = 0; j < inst.m(); ++j)
                    if (mask >> (i * inst.m() + j) & 1) s += table(i, j);
                ok = ok && s >= inst.hot_total(i);
            }
            for (int j = 0; j < inst.m(); ++j) {
                Heat s = 0;
                for (int i = 0; i < inst.n(); ++i)
                    if (mask >> (i * inst.m() + j) & 1) s += table(i, j);
                ok = ok && s >= inst.cold_total(j);
            }
            if (ok) best = count;
        }
        const auto cover = cover_milp(inst, table);
        CHECK(cover.optimal);
        CHECK(static_cast<int>(cover.matches.size()) == best);
    }
}

TEST_CASE("crr produces feasible solutions")
{
    const auto one = single({5}, {5});
    const auto r1 = crr(one, BigMMethod::mhg);
    CHECK(r1.iterations == 1);
    CHECK(r1.solution.match_count() == 1);
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_feasible(rng, {5, 5, 4, 10, 8});
        for (auto method : {BigMMethod::trivial, BigMMethod::mhg}) {
            const auto r = crr(inst, method);
            check_solution(inst, r.solution);
            CHECK(r.iterations <= inst.n() * inst.m());
            CHECK(r.solution.match_count() >= r.first_cover);
        }
    }
}
