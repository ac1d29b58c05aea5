#include "heatmatch/flow_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <queue>
#include <sstream>

namespace heatmatch {

FixedPointCost FixedPointCost::ratio(std::int64_t num, std::int64_t den)
{
    if (den <= 0) throw std::invalid_argument("FixedPointCost::ratio: denominator must be positive");
    if (num >= (std::int64_t{1} << 46) || num <= -(std::int64_t{1} << 46))
        throw std::invalid_argument("FixedPointCost::ratio: numerator too large");
    const __int128 scaled = static_cast<__int128>(num) << kFractionBits;
    __int128 q = scaled / den;
    const __int128 r = scaled % den;
    if (2 * (r < 0 ? -r : r) >= den) q += (scaled < 0) ? -1 : 1;
    return FixedPointCost(q);
}

FixedPointCost FixedPointCost::integer(std::int64_t value)
{
    return ratio(value, 1);
}

long double FixedPointCost::value() const
{
    return std::ldexp(static_cast<long double>(raw_), -kFractionBits);
}

template <class Cost>
int FlowNetwork<Cost>::add_node(Flow supply, std::string label)
{
    supply_.push_back(supply);
    labels_.push_back(std::move(label));
    return node_count() - 1;
}

template <class Cost>
int FlowNetwork<Cost>::add_arc(int tail, int head, Flow capacity, Cost cost)
{
    if (tail < 0 || tail >= node_count() || head < 0 || head >= node_count())
        throw std::out_of_range("FlowNetwork::add_arc: node index out of range");
    if (capacity < 0) throw std::invalid_argument("FlowNetwork::add_arc: negative capacity");
    arcs_.push_back({tail, head, capacity, cost});
    return arc_count() - 1;
}

template <class Cost>
void FlowNetwork<Cost>::set_supply(int node, Flow supply)
{
    supply_.at(node) = supply;
}

namespace {

long double as_long_double(std::int64_t c) { return static_cast<long double>(c); }
long double as_long_double(FixedPointCost c) { return c.value(); }

std::string cost_text(std::int64_t c) { return std::to_string(c); }
std::string cost_text(FixedPointCost c)
{
    std::ostringstream out;
    out.precision(12);
    out << static_cast<double>(c.value());
    return out.str();
}

std::mutex dot_mutex;
std::string dot_directory;
std::atomic<int> dot_counter{0};

template <class Cost>
void maybe_dump(const FlowNetwork<Cost>& net, const char* kind)
{
    std::string dir;
    {
        std::lock_guard<std::mutex> lock(dot_mutex);
        dir = dot_directory;
    }
    if (dir.empty()) return;
    const int id = dot_counter.fetch_add(1);
    std::ofstream out(dir + "/" + kind + "_" + std::to_string(id) + ".dot");
    out << net.to_dot();
}

// Paired residual arcs: edge e and e^1 are reverses of each other.
template <class Cost>
struct Residual {
    std::vector<int> to;
    std::vector<Flow> cap;
    std::vector<Cost> cost;
    std::vector<int> start;  // CSR offsets
    std::vector<int> order;  // edge ids grouped by tail, insertion order preserved

    int add(int u, int v, Flow c, Cost w)
    {
        to.push_back(v);
        cap.push_back(c);
        cost.push_back(w);
        to.push_back(u);
        cap.push_back(0);
        cost.push_back(-w);
        return static_cast<int>(to.size()) - 2;
    }

    int tail(int e) const { return to[e ^ 1]; }

    void index(int nodes)
    {
        start.assign(nodes + 1, 0);
        for (std::size_t e = 0; e < to.size(); ++e) ++start[tail(static_cast<int>(e)) + 1];
        for (int v = 0; v < nodes; ++v) start[v + 1] += start[v];
        order.assign(to.size(), 0);
        std::vector<int> fill(start.begin(), start.end() - 1);
        for (std::size_t e = 0; e < to.size(); ++e) order[fill[tail(static_cast<int>(e))]++] = static_cast<int>(e);
    }
};

template <class Cost>
std::vector<char> residual_reach(const Residual<Cost>& g, int nodes, int from)
{
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int p = g.start[u]; p < g.start[u + 1]; ++p) {
            const int e = g.order[p];
            if (g.cap[e] > 0 && !seen[g.to[e]]) {
                seen[g.to[e]] = 1;
                stack.push_back(g.to[e]);
            }
        }
    }
    return seen;
}

// Blocking flows restricted to arcs accepted by `usable`; returns shipped amount.
template <class Cost, class Usable>
Flow dinic_phase(Residual<Cost>& g, int nodes, int s, int t, Flow limit, Usable usable)
{
    Flow shipped = 0;
    std::vector<int> level(nodes), it(nodes);
    while (shipped < limit) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> bfs;
        level[s] = 0;
        bfs.push(s);
        while (!bfs.empty()) {
            const int u = bfs.front();
            bfs.pop();
            for (int p = g.start[u]; p < g.start[u + 1]; ++p) {
                const int e = g.order[p];
                const int v = g.to[e];
                if (g.cap[e] > 0 && level[v] < 0 && usable(e)) {
                    level[v] = level[u] + 1;
                    bfs.push(v);
                }
            }
        }
        if (level[t] < 0) break;
        for (int v = 0; v < nodes; ++v) it[v] = g.start[v];

        std::function<Flow(int, Flow)> push = [&](int u, Flow amount) -> Flow {
            if (u == t) return amount;
            for (; it[u] < g.start[u + 1]; ++it[u]) {
                const int e = g.order[it[u]];
                const int v = g.to[e];
                if (g.cap[e] <= 0 || level[v] != level[u] + 1 || !usable(e)) continue;
                const Flow got = push(v, std::min(amount, g.cap[e]));
                if (got > 0) {
                    g.cap[e] -= got;
                    g.cap[e ^ 1] += got;
                    return got;
                }
            }
            return 0;
        };
        while (shipped < limit) {
            const Flow got = push(s, limit - shipped);
            if (got == 0) break;
            shipped += got;
        }
    }
    return shipped;
}

template <class Cost>
std::string describe_cut(const FlowNetwork<Cost>& net, const std::vector<char>& side)
{
    std::ostringstream out;
    int listed = 0;
    Flow supply_inside = 0;
    Flow capacity_out = 0;
    for (int v = 0; v < net.node_count(); ++v) {
        if (!side[v]) continue;
        supply_inside += net.supply(v);
        if (listed < 8) {
            out << (listed ? ", " : "") << (net.label(v).empty() ? "n" + std::to_string(v) : net.label(v));
        }
        ++listed;
    }
    for (int a = 0; a < net.arc_count(); ++a) {
        const auto& arc = net.arc(a);
        if (side[arc.tail] && !side[arc.head]) capacity_out = std::min(kUnbounded, capacity_out + arc.capacity);
    }
    std::ostringstream msg;
    msg << "cut {" << out.str() << (listed > 8 ? ", ..." : "") << "} holds net supply " << supply_inside
        << " but only " << capacity_out << " can leave it";
    return msg.str();
}

}  // namespace

void set_dot_dump_directory(std::string directory)
{
    std::lock_guard<std::mutex> lock(dot_mutex);
    dot_directory = std::move(directory);
}

template <class Cost>
std::string FlowNetwork<Cost>::to_dot() const
{
    std::ostringstream out;
    out << "digraph flow {\n";
    for (int v = 0; v < node_count(); ++v) {
        out << "  n" << v << " [label=\"" << (labels_[v].empty() ? "n" + std::to_string(v) : labels_[v]);
        if (supply_[v] != 0) out << "\\nb=" << supply_[v];
        out << "\"];\n";
    }
    for (const auto& a : arcs_) {
        out << "  n" << a.tail << " -> n" << a.head << " [label=\"";
        if (a.capacity >= kUnbounded) out << "inf"; else out << a.capacity;
        out << " / " << cost_text(a.cost) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

template <class Cost>
FlowResult<Cost> min_cost_flow(const FlowNetwork<Cost>& net)
{
    maybe_dump(net, "mcf");
    const int n = net.node_count();
    const int S = n;
    const int T = n + 1;
    const int N = n + 2;

    Flow total_supply = 0;
    Flow balance = 0;
    for (int v = 0; v < n; ++v) {
        balance += net.supply(v);
        if (net.supply(v) > 0) total_supply += net.supply(v);
    }
    if (balance != 0) throw std::invalid_argument("min_cost_flow: supplies and demands do not balance");

    Residual<Cost> g;
    bool negative = false;
    for (int a = 0; a < net.arc_count(); ++a) {
        const auto& arc = net.arc(a);
        g.add(arc.tail, arc.head, arc.capacity, arc.cost);
        if (arc.cost < Cost{}) negative = true;
    }
    for (int v = 0; v < n; ++v) {
        if (net.supply(v) > 0) g.add(S, v, net.supply(v), Cost{});
        if (net.supply(v) < 0) g.add(v, T, -net.supply(v), Cost{});
    }
    g.index(N);

    std::vector<Cost> pi(N, Cost{});
    if (negative) {
        // Bellman-Ford from a virtual root attached to every node.
        std::vector<int> passes(N, 0);
        std::vector<char> queued(N, 1);
        std::deque<int> work;
        for (int v = 0; v < N; ++v) work.push_back(v);
        while (!work.empty()) {
            const int u = work.front();
            work.pop_front();
            queued[u] = 0;
            for (int p = g.start[u]; p < g.start[u + 1]; ++p) {
                const int e = g.order[p];
                if (g.cap[e] <= 0) continue;
                const int v = g.to[e];
                const Cost cand = pi[u] + g.cost[e];
                if (cand < pi[v]) {
                    pi[v] = cand;
                    if (!queued[v]) {
                        if (++passes[v] > N) throw std::invalid_argument("min_cost_flow: negative-cost cycle");
                        queued[v] = 1;
                        work.push_back(v);
                    }
                }
            }
        }
    }

    auto reduced = [&](int e) { return g.cost[e] + pi[g.tail(e)] - pi[g.to[e]]; };

    Flow shipped = 0;
    std::vector<Cost> dist(N);
    std::vector<char> done(N);
    while (shipped < total_supply) {
        std::fill(done.begin(), done.end(), 0);
        std::vector<char> seen(N, 0);
        using Entry = std::pair<Cost, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
        dist[S] = Cost{};
        seen[S] = 1;
        pq.push({Cost{}, S});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (done[u] || d != dist[u]) continue;
            done[u] = 1;
            for (int p = g.start[u]; p < g.start[u + 1]; ++p) {
                const int e = g.order[p];
                if (g.cap[e] <= 0) continue;
                const int v = g.to[e];
                if (done[v]) continue;
                const Cost cand = d + reduced(e);
                if (!seen[v] || cand < dist[v]) {
                    seen[v] = 1;
                    dist[v] = cand;
                    pq.push({cand, v});
                }
            }
        }
        if (!done[T]) break;
        const Cost cap_dist = dist[T];
        for (int v = 0; v < N; ++v) pi[v] += (done[v] && dist[v] < cap_dist) ? dist[v] : cap_dist;

        const Flow got = dinic_phase(g, N, S, T, total_supply - shipped,
                                     [&](int e) { return reduced(e) == Cost{}; });
        if (got == 0) throw InvariantError("min_cost_flow: shortest path phase shipped nothing");
        shipped += got;
    }

    FlowResult<Cost> result;
    result.flow.resize(net.arc_count());
    for (int a = 0; a < net.arc_count(); ++a) {
        result.flow[a] = g.cap[2 * a + 1];
        result.objective += static_cast<long double>(result.flow[a]) * as_long_double(net.arc(a).cost);
    }
    result.value = shipped;
    result.source_side = residual_reach(g, N, S);
    result.source_side.resize(n);

    if (shipped < total_supply) {
        throw InfeasibleError("min_cost_flow: supplies cannot be routed (shipped " + std::to_string(shipped) +
                              " of " + std::to_string(total_supply) + "); " +
                              describe_cut(net, result.source_side));
    }

    result.potential.assign(pi.begin(), pi.begin() + n);
    if (!certifies_optimality(net, result)) throw InvariantError("min_cost_flow: dual certificate failed");
    return result;
}

template <class Cost>
FlowResult<Cost> max_flow(const FlowNetwork<Cost>& net, int source, int sink)
{
    maybe_dump(net, "maxflow");
    const int n = net.node_count();
    if (source < 0 || source >= n || sink < 0 || sink >= n || source == sink)
        throw std::invalid_argument("max_flow: bad terminals");
    Residual<Cost> g;
    for (int a = 0; a < net.arc_count(); ++a) {
        const auto& arc = net.arc(a);
        g.add(arc.tail, arc.head, arc.capacity, arc.cost);
    }
    g.index(n);
    FlowResult<Cost> result;
    result.value = dinic_phase(g, n, source, sink, kUnbounded, [](int) { return true; });
    result.flow.resize(net.arc_count());
    for (int a = 0; a < net.arc_count(); ++a) {
        result.flow[a] = g.cap[2 * a + 1];
        result.objective += static_cast<long double>(result.flow[a]) * as_long_double(net.arc(a).cost);
    }
    result.source_side = residual_reach(g, n, source);
    return result;
}

template <class Cost>
bool certifies_optimality(const FlowNetwork<Cost>& net, const FlowResult<Cost>& result)
{
    if (static_cast<int>(result.potential.size()) != net.node_count()) return false;
    if (static_cast<int>(result.flow.size()) != net.arc_count()) return false;
    std::vector<Flow> excess(net.node_count(), 0);
    for (int a = 0; a < net.arc_count(); ++a) {
        const auto& arc = net.arc(a);
        const Flow f = result.flow[a];
        if (f < 0 || f > arc.capacity) return false;
        excess[arc.tail] -= f;
        excess[arc.head] += f;
        const Cost rc = arc.cost + result.potential[arc.tail] - result.potential[arc.head];
        if (f < arc.capacity && rc < Cost{}) return false;
        if (f > 0 && Cost{} < rc) return false;
    }
    for (int v = 0; v < net.node_count(); ++v)
        if (excess[v] + net.supply(v) != 0) return false;
    return true;
}

template class FlowNetwork<std::int64_t>;
template class FlowNetwork<FixedPointCost>;
template FlowResult<std::int64_t> min_cost_flow(const FlowNetwork<std::int64_t>&);
template FlowResult<FixedPointCost> min_cost_flow(const FlowNetwork<FixedPointCost>&);
template FlowResult<std::int64_t> max_flow(const FlowNetwork<std::int64_t>&, int, int);
template FlowResult<FixedPointCost> max_flow(const FlowNetwork<FixedPointCost>&, int, int);
template bool certifies_optimality(const FlowNetwork<std::int64_t>&, const FlowResult<std::int64_t>&);
template bool certifies_optimality(const FlowNetwork<FixedPointCost>&, const FlowResult<FixedPointCost>&);

}  // namespace heatmatch
