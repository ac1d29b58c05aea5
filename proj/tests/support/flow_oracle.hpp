#pragma once

// Exhaustive enumeration of integral flows on tiny networks.

#include "heatmatch/flow_engine.hpp"

#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

struct TinyArc {
    int tail;
    int head;
    long cap;
    long double cost;
};

struct TinyNetwork {
    int nodes = 0;
    std::vector<long> supply;
    std::vector<TinyArc> arcs;
};

// Minimum cost over all integral flows meeting supplies exactly; nullopt if none exists.
inline std::optional<long double> brute_min_cost(const TinyNetwork& net)
{
    const int a = static_cast<int>(net.arcs.size());
    std::vector<long> f(a, 0);
    std::optional<long double> best;
    while (true) {
        std::vector<long> excess(net.nodes, 0);
        long double cost = 0;
        for (int e = 0; e < a; ++e) {
            excess[net.arcs[e].tail] -= f[e];
            excess[net.arcs[e].head] += f[e];
            cost += f[e] * net.arcs[e].cost;
        }
        bool ok = true;
        for (int v = 0; v < net.nodes; ++v)
            if (excess[v] + net.supply[v] != 0) ok = false;
        if (ok && (!best || cost < *best)) best = cost;
        int e = 0;
        while (e < a && f[e] == net.arcs[e].cap) f[e++] = 0;
        if (e == a) break;
        ++f[e];
    }
    return best;
}

// Random network with at most six arcs, capacities <= 4 and balanced supplies.
// With negative costs allowed every arc points to a higher node index, so no cycle exists.
inline TinyNetwork random_tiny(std::mt19937_64& rng, bool allow_negative)
{
    TinyNetwork net;
    net.nodes = 2 + static_cast<int>(rng() % 3);
    const int arcs = 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < arcs; ++e) {
        int u = static_cast<int>(rng() % net.nodes);
        int v = static_cast<int>(rng() % (net.nodes - 1));
        if (v >= u) ++v;
        if (allow_negative && u > v) std::swap(u, v);
        long double cost = static_cast<long double>(rng() % 6);
        if (allow_negative && rng() % 3 == 0) cost = -cost;
        net.arcs.push_back({u, v, static_cast<long>(rng() % 5), cost});
    }
    net.supply.assign(net.nodes, 0);
    const int moves = static_cast<int>(rng() % 4);
    for (int r = 0; r < moves; ++r) {
        const int u = static_cast<int>(rng() % net.nodes);
        const int v = static_cast<int>(rng() % net.nodes);
        const long amount = 1 + static_cast<long>(rng() % 3);
        net.supply[u] += amount;
        net.supply[v] -= amount;
    }
    return net;
}

inline heatmatch::FlowNetwork<std::int64_t> to_engine(const TinyNetwork& tiny)
{
    heatmatch::FlowNetwork<std::int64_t> net;
    for (int v = 0; v < tiny.nodes; ++v) net.add_node(tiny.supply[v]);
    for (const auto& a : tiny.arcs) net.add_arc(a.tail, a.head, a.cap, static_cast<std::int64_t>(a.cost));
    return net;
}

}  // namespace oracle
