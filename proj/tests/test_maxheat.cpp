#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heatmatch/maxheat.hpp"
#include "support/instances.hpp"
#include "support/lp_models.hpp"

#include <cstdlib>

using namespace heatmatch;

namespace {

MatchesInstance make(std::initializer_list<std::initializer_list<Heat>> sigma,
                     std::initializer_list<std::initializer_list<Heat>> delta)
{
    auto fill = [](auto rows) {
        const int r = static_cast<int>(rows.size());
        const int c = static_cast<int>(rows.begin()->size());
        HeatMatrix out(r, c);
        int i = 0;
        for (auto& row : rows) {
            int j = 0;
            for (Heat v : row) out(i, j++) = v;
            ++i;
        }
        return out;
    };
    return MatchesInstance(fill(sigma), fill(delta));
}

void check_tensor(const MatchesInstance& inst, const HeatTensor& q, const MatchSet& allowed)
{
    for (const auto& f : q.flows()) {
        CHECK(f.hot_interval <= f.cold_interval);
        CHECK(allowed.count({f.hot, f.cold}) == 1);
    }
    CHECK(inst.minus(q).is_feasible());
}

MatchesInstance non_monotonic()
{
    return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

MatchesInstance pinched()
{
    return make({{5, 0}, {0, 5}}, {{0, 5}, {5, 0}});
}

}  // namespace

TEST_CASE("mhg on a single interval is the smaller load")
{
    const auto inst = make({{10}}, {{10}});
    const auto u = mhg(inst, 0, 0);
    CHECK(u.value == 10);
    CHECK(u.q.at(0, 0, 0, 0) == 10);
}

TEST_CASE("mhg uses the same interval first, then descends")
{
    const auto inst = make({{10, 0}}, {{5, 5}});
    REQUIRE(inst.residuals().r[0] == 5);
    const auto u = mhg(inst, 0, 0);
    CHECK(u.value == 10);
    CHECK(u.q.at(0, 0, 0, 0) == 5);
    CHECK(u.q.at(0, 0, 0, 1) == 5);
}

TEST_CASE("a pinch blocks the pair")
{
    const auto inst = pinched();
    CHECK(mhg(inst, 0, 0).value == 0);
    const auto mhg_table = big_m_table(inst, BigMMethod::mhg);
    const auto trivial = big_m_table(inst, BigMMethod::trivial);
    CHECK(mhg_table(0, 0) == 0);
    CHECK(trivial(0, 0) == 5);
    CHECK(mhg_table.method_at(0, 0) == BigMMethod::mhg);
}

TEST_CASE("single interval tables coincide")
{
    const auto inst = make({{4}, {7}, {2}}, {{6}, {7}});
    CHECK(big_m_table(inst, BigMMethod::mhg).bound == big_m_table(inst, BigMMethod::trivial).bound);
}

TEST_CASE("big-M tables are reproducible with several workers")
{
    std::mt19937_64 rng(11);
    const auto inst = oracle::random_feasible(rng, {12, 12, 5, 60, 9});
    setenv("HEATMATCH_THREADS", "4", 1);
    const auto a = big_m_table(inst, BigMMethod::mhg);
    setenv("HEATMATCH_THREADS", "1", 1);
    const auto b = big_m_table(inst, BigMMethod::mhg);
    unsetenv("HEATMATCH_THREADS");
    CHECK(a.bound == b.bound);
}

TEST_CASE("big-M method names")
{
    CHECK(parse_big_m_method("mhg") == BigMMethod::mhg);
    CHECK(to_string(BigMMethod::trivial) == "trivial");
    CHECK_THROWS_AS(parse_big_m_method("gundersen"), std::invalid_argument);
}

TEST_CASE("mhs examples")
{
    HeatVector h(2);
    h << 4, 4;
    HeatVector c(2);
    c << 3, 5;
    CHECK(mhs(h, c, {}).value == 0);
    const auto two = mhs(h, c, {{0, 0}, {1, 1}});
    CHECK(two.value == 7);
    CHECK(two.pair_heat(0, 0) == 3);
    CHECK(two.pair_heat(1, 1) == 4);
    CHECK(mhs(h, c, all_pairs(2, 2)).value == 8);
    c << 1, 2;
    CHECK(mhs(h, c, all_pairs(2, 2)).value == 3);
}

TEST_CASE("mhlp on the non-monotonic unit instance")
{
    const auto inst = non_monotonic();
    const MatchSet two{{0, 1}, {1, 2}};
    const MatchSet three{{0, 0}, {0, 1}, {1, 2}};
    // Every residual is zero, so descending transfers cannot leave the rest feasible.
    CHECK(mhlp(inst, two).value == 0);
    CHECK(mhlp(inst, three).value == 1);
    CHECK(oracle::restricted_lp(inst, two) == 0);
    CHECK(oracle::restricted_lp(inst, three) == 1);
    // Without the residual restriction only supplies and demands bind.
    const MhlpOptions plain{false};
    CHECK(mhlp(inst, two, plain).value == 2);
    CHECK(mhlp(inst, three, plain).value == 2);
}

TEST_CASE("mhlp examples")
{
    const auto inst = pinched();
    CHECK(mhlp(inst, {}).value == 0);
    CHECK(mhlp(inst, all_pairs(2, 2)).value == 10);
    CHECK(mhlp(inst, {{0, 0}}).value == 0);
    CHECK(mhlp(inst, {{0, 1}, {1, 0}}).value == 10);
    CHECK_THROWS_AS(mhlp(inst, {{2, 0}}), std::out_of_range);
}

TEST_CASE("mhg leaves a feasible instance and agrees with the single-pair LP")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const auto inst = oracle::random_feasible(rng, {3, 3, 4, 6, 6});
        for (int i = 0; i < inst.n(); ++i)
            for (int j = 0; j < inst.m(); ++j) {
                const auto u = mhg(inst, i, j);
                CHECK(u.value == u.q.total());
                CHECK(u.value <= std::min(inst.hot_total(i), inst.cold_total(j)));
                check_tensor(inst, u.q, {{i, j}});
                CHECK(mhlp(inst, {{i, j}}).value == u.value);
                CHECK(oracle::restricted_lp(inst, {{i, j}}) == u.value);
            }
    }
}

TEST_CASE("mhlp matches the LP and stays feasible")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const auto inst = oracle::random_feasible(rng, {3, 3, 3, 6, 5});
        MatchSet allowed;
        for (const auto& p : all_pairs(inst.n(), inst.m()))
            if (rng() % 2) allowed.insert(p);
        const auto got = mhlp(inst, allowed);
        CHECK(got.value == got.q.total());
        CHECK(oracle::restricted_lp(inst, allowed) == got.value);
        check_tensor(inst, got.q, allowed);
        const auto plain = mhlp(inst, allowed, {false});
        CHECK(plain.value >= got.value);
    }
}

TEST_CASE("mhlp properties")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 4, 8, 7});
        CHECK(mhlp(inst, all_pairs(inst.n(), inst.m())).value == inst.total_supply());
        MatchSet grow;
        Heat last = 0;
        for (const auto& p : all_pairs(inst.n(), inst.m())) {
            if (rng() % 3 == 0) continue;
            grow.insert(p);
            const Heat v = mhlp(inst, grow).value;
            CHECK(v >= last);
            last = v;
        }
    }
}

TEST_CASE("mhlp and mhs agree on one interval")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 1, 8, 7});
        MatchSet allowed;
        for (const auto& p : all_pairs(inst.n(), inst.m()))
            if (rng() % 2) allowed.insert(p);
        CHECK(mhlp(inst, allowed).value == mhs(inst.hot_totals(), inst.cold_totals(), allowed).value);
    }
}
