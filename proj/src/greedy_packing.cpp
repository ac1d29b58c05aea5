#include "heatmatch/greedy_packing.hpp"

#include "heatmatch/flow_engine.hpp"
#include "restricted_network.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>

namespace heatmatch {

namespace {

void require_progress(const MatchesInstance& residual)
{
    if (!residual.is_feasible()) throw InvariantError("greedy packing left an infeasible residual instance");
}

}  // namespace

LhmLpResult lhm_lp(const MatchesInstance& inst, LhmLpOptions options)
{
    inst.require_feasible();
    if (options.epsilon < 1) throw std::invalid_argument("lhm_lp epsilon must be at least one heat unit");
    const int n = inst.n();
    const int m = inst.m();
    const Heat total = inst.total_supply();
    // A pair adds at most its own heat, which the two-stream bound already caps.
    const auto bound = big_m_table(inst, BigMMethod::mhg);

    LhmLpResult out;
    MatchSet chosen;
    RestrictedHeat current;
    while (total - current.value >= options.epsilon) {
        if (static_cast<int>(chosen.size()) >= n * m) throw InvariantError("lhm_lp exceeded n*m iterations");
        std::vector<Match> order;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                if (!chosen.count({i, j}) && bound(i, j) > 0) order.push_back({i, j});
        std::stable_sort(order.begin(), order.end(),
                         [&](Match a, Match b) { return bound(a.hot, a.cold) > bound(b.hot, b.cold); });
        Match best_pair{-1, -1};
        RestrictedHeat best;
        for (const auto& p : order) {
            const Heat cap = current.value + bound(p.hot, p.cold);
            if (best_pair.hot >= 0 && (cap < best.value || (cap == best.value && best_pair < p))) continue;
            MatchSet trial = chosen;
            trial.insert(p);
            auto got = mhlp(inst, trial);
            if (best_pair.hot < 0 || got.value > best.value || (got.value == best.value && p < best_pair)) {
                best = std::move(got);
                best_pair = p;
            }
        }
        if (best_pair.hot < 0 || best.value <= current.value)
            throw InvariantError("lhm_lp found no pair that increases the routed heat");
        chosen.insert(best_pair);
        current = std::move(best);
        out.trace.push_back(current.value);
    }
    out.remaining = total - current.value;
    out.solution = Solution::from_heat(current.q);
    return out;
}

namespace {

// Greedy packing loop shared by lhm and lfm: `better(a, b)` compares candidate scores.
template <class Score, class Better>
Solution pack(const MatchesInstance& inst, Score score, Better better)
{
    inst.require_feasible();
    const int n = inst.n();
    const int m = inst.m();
    MatchesInstance residual = inst;
    HeatTensor q;
    MatchSet chosen;
    while (residual.total_supply() > 0) {
        if (static_cast<int>(chosen.size()) >= n * m) throw InvariantError("greedy packing exceeded n*m matches");
        Match best_pair{-1, -1};
        PairHeat best;
        decltype(score(0, 0, Heat{0})) best_score{};
        for (int i = 0; i < n; ++i) {
            if (residual.hot_total(i) == 0) continue;
            for (int j = 0; j < m; ++j) {
                if (residual.cold_total(j) == 0 || chosen.count({i, j})) continue;
                auto got = mhg(residual, i, j);
                if (got.value == 0) continue;
                auto s = score(i, j, got.value);
                if (best_pair.hot < 0 || better(s, best_score)) {
                    best_pair = {i, j};
                    best = std::move(got);
                    best_score = std::move(s);
                }
            }
        }
        if (best_pair.hot < 0) throw InvariantError("greedy packing stalled with heat left");
        chosen.insert(best_pair);
        q.add(best.q);
        residual = residual.minus(best.q);
        require_progress(residual);
    }
    return Solution::from_heat(q);
}

using Big = boost::multiprecision::cpp_int;

// U(h + c) / (h c), kept exact for tie-breaking.
struct Fraction {
    Big num;
    Big den{1};
    bool operator>(const Fraction& o) const { return num * o.den > o.num * den; }
};

}  // namespace

Solution lhm(const MatchesInstance& inst)
{
    return pack(inst, [](int, int, Heat u) { return u; }, [](Heat a, Heat b) { return a > b; });
}

Solution lfm(const MatchesInstance& inst, LfmOptions options)
{
    if (!options.lp_scoring) {
        const HeatVector h = inst.hot_totals();
        const HeatVector c = inst.cold_totals();
        return pack(
            inst,
            [&](int i, int j, Heat u) { return Fraction{Big(u) * (h(i) + c(j)), Big(h(i)) * c(j)}; },
            [](const Fraction& a, const Fraction& b) { return a > b; });
    }

    inst.require_feasible();
    const long double target = inst.n() + inst.m();
    MatchSet chosen;
    FractionHeat current;
    while (current.q.total() < inst.total_supply()) {
        if (static_cast<int>(chosen.size()) >= inst.n() * inst.m())
            throw InvariantError("lfm exceeded n*m iterations");
        Match best_pair{-1, -1};
        FractionHeat best;
        for (int i = 0; i < inst.n(); ++i)
            for (int j = 0; j < inst.m(); ++j) {
                if (chosen.count({i, j}) || inst.hot_total(i) == 0 || inst.cold_total(j) == 0) continue;
                MatchSet trial = chosen;
                trial.insert({i, j});
                auto got = max_fraction_lp(inst, trial);
                if (best_pair.hot < 0 || got.value > best.value + 1e-12L * target) {
                    best = std::move(got);
                    best_pair = {i, j};
                }
            }
        if (best_pair.hot < 0 || best.value <= current.value + 1e-12L * target)
            throw InvariantError("lfm found no pair that increases the covered fraction");
        chosen.insert(best_pair);
        current = std::move(best);
    }
    return Solution::from_heat(current.q);
}

Solution ss(const MatchesInstance& inst)
{
    inst.require_feasible();
    std::vector<int> order(inst.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.hot_total(a) < inst.hot_total(b); });
    MatchesInstance residual = inst;
    HeatTensor q;
    for (int i : order) {
        while (residual.hot_total(i) > 0) {
            int best_j = -1;
            PairHeat best;
            for (int j = 0; j < inst.m(); ++j) {
                if (residual.cold_total(j) == 0) continue;
                auto got = mhg(residual, i, j);
                if (got.value > best.value) {
                    best = std::move(got);
                    best_j = j;
                }
            }
            if (best_j < 0) throw InvariantError("ss stalled: hot stream " + inst.hot_names()[i] + " has no partner");
            q.add(best.q);
            residual = residual.minus(best.q);
            require_progress(residual);
        }
    }
    if (residual.total_demand() != 0) throw InvariantError("ss left cold demand unserved");
    return Solution::from_heat(q);
}

FractionHeat max_fraction_lp(const MatchesInstance& inst, const MatchSet& allowed)
{
    inst.require_feasible();
    FractionHeat out;
    if (allowed.empty()) return out;
    const HeatVector h = inst.hot_totals();
    const HeatVector c = inst.cold_totals();
    auto price = [&](int i, int j) {
        if (h(i) == 0 || c(j) == 0) return FixedPointCost{};
        return -(FixedPointCost::ratio(1, h(i)) + FixedPointCost::ratio(1, c(j)));
    };
    auto rn = detail::build_restricted<FixedPointCost>(inst, allowed, price, FixedPointCost{});
    const auto flow = min_cost_flow(rn.net);
    out.q = detail::decompose_pairs(rn, flow.flow);
    for (const auto& f : out.q.flows())
        out.value += static_cast<long double>(f.heat) * (1.0L / h(f.hot) + 1.0L / c(f.cold));
    return out;
}

}  // namespace heatmatch
