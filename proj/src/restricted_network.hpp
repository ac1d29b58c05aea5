#pragma once

// Network behind MHLP and MaxFractionLP.
//
// Every unit of supply is routed. Heat exchanged through an allowed pair travels down a
// per-pair chain; all other heat travels down a shared pool chain. Both chains are capped by
// R_u at every boundary and omitted across pinches. Because the full instance is routed, the
// pool part is a feasible remainder, which is exactly what the residual-capacity constraints ask
// for. Pricing the pair entry arcs selects the objective.

#include "heatmatch/core_model.hpp"
#include "heatmatch/flow_engine.hpp"

#include <map>
#include <vector>

namespace heatmatch::detail {

struct PairArc {
    int hot;
    int cold;
    int interval;
    int arc;
};

template <class Cost>
struct RestrictedNetwork {
    FlowNetwork<Cost> net;
    std::vector<PairArc> entries;
    std::vector<PairArc> exits;
};

template <class Cost, class EntryCost>
RestrictedNetwork<Cost> build_restricted(const MatchesInstance& inst, const MatchSet& allowed, EntryCost entry_cost,
                                         Cost pool_cost)
{
    const int k = inst.k();
    const auto profile = inst.residuals();
    RestrictedNetwork<Cost> out;
    auto& net = out.net;

    std::vector<std::vector<int>> hot_node(inst.n(), std::vector<int>(k, -1));
    std::vector<std::vector<int>> cold_node(inst.m(), std::vector<int>(k, -1));
    for (int i = 0; i < inst.n(); ++i)
        for (int s = 0; s < k; ++s)
            if (inst.sigma(i, s) > 0) hot_node[i][s] = net.add_node(inst.sigma(i, s));
    for (int j = 0; j < inst.m(); ++j)
        for (int t = 0; t < k; ++t)
            if (inst.delta(j, t) > 0) cold_node[j][t] = net.add_node(-inst.delta(j, t));

    std::vector<int> pool(k);
    for (int u = 0; u < k; ++u) pool[u] = net.add_node();
    for (int i = 0; i < inst.n(); ++i)
        for (int s = 0; s < k; ++s)
            if (hot_node[i][s] >= 0) net.add_arc(hot_node[i][s], pool[s], kUnbounded, pool_cost);
    for (int u = 0; u + 1 < k; ++u)
        if (profile.r[u] > 0) net.add_arc(pool[u], pool[u + 1], profile.r[u], Cost{});
    for (int j = 0; j < inst.m(); ++j)
        for (int t = 0; t < k; ++t)
            if (cold_node[j][t] >= 0) net.add_arc(pool[t], cold_node[j][t], kUnbounded, Cost{});

    for (const auto& [i, j] : allowed) {
        int first = k;
        int last = -1;
        for (int s = 0; s < k; ++s)
            if (hot_node[i][s] >= 0) { first = s; break; }
        for (int t = k - 1; t >= 0; --t)
            if (cold_node[j][t] >= 0) { last = t; break; }
        if (first > last) continue;
        std::vector<int> chain(k, -1);
        for (int u = first; u <= last; ++u) chain[u] = net.add_node();
        const Cost price = entry_cost(i, j);
        for (int s = first; s <= last; ++s)
            if (hot_node[i][s] >= 0)
                out.entries.push_back({i, j, s, net.add_arc(hot_node[i][s], chain[s], kUnbounded, price)});
        for (int u = first; u < last; ++u)
            if (profile.r[u] > 0) net.add_arc(chain[u], chain[u + 1], profile.r[u], Cost{});
        for (int t = first; t <= last; ++t)
            if (cold_node[j][t] >= 0)
                out.exits.push_back({i, j, t, net.add_arc(chain[t], cold_node[j][t], kUnbounded, Cost{})});
    }
    return out;
}

// Splits per-pair chain flows into q_{i,s,j,t}: within a pair, earliest entries feed earliest exits.
template <class Cost>
HeatTensor decompose_pairs(const RestrictedNetwork<Cost>& rn, const std::vector<Flow>& flow)
{
    std::map<std::pair<int, int>, std::vector<std::pair<int, Flow>>> in;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Flow>>> out;
    for (const auto& e : rn.entries)
        if (flow[e.arc] > 0) in[{e.hot, e.cold}].push_back({e.interval, flow[e.arc]});
    for (const auto& e : rn.exits)
        if (flow[e.arc] > 0) out[{e.hot, e.cold}].push_back({e.interval, flow[e.arc]});
    HeatTensor q;
    for (auto& [pair, sources] : in) {
        auto& sinks = out[pair];
        std::size_t a = 0;
        std::size_t b = 0;
        while (a < sources.size() && b < sinks.size()) {
            const Flow x = std::min(sources[a].second, sinks[b].second);
            if (sources[a].first > sinks[b].first) throw InvariantError("pair chain flow ascends");
            q.add(pair.first, sources[a].first, pair.second, sinks[b].first, x);
            sources[a].second -= x;
            sinks[b].second -= x;
            if (sources[a].second == 0) ++a;
            if (sinks[b].second == 0) ++b;
        }
        if (a != sources.size() || b != sinks.size()) throw InvariantError("pair chain flow not conserved");
    }
    return q;
}

}  // namespace heatmatch::detail
