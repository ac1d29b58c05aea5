#include "heatmatch/maxheat.hpp"

#include "heatmatch/flow_engine.hpp"
#include "restricted_network.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>

namespace heatmatch {

PairHeat mhg(const MatchesInstance& inst, int hot, int cold)
{
    if (hot < 0 || hot >= inst.n() || cold < 0 || cold >= inst.m()) throw std::out_of_range("mhg: stream index");
    const int k = inst.k();
    std::vector<Heat> r = inst.residuals().r;
    std::vector<Heat> sigma(k);
    std::vector<Heat> delta(k);
    for (int u = 0; u < k; ++u) {
        sigma[u] = inst.sigma(hot, u);
        delta[u] = inst.delta(cold, u);
    }

    PairHeat out;
    for (int u = 0; u < k; ++u) {
        const Heat x = std::min(sigma[u], delta[u]);
        out.q.add(hot, u, cold, u, x);
        sigma[u] -= x;
        delta[u] -= x;
        out.value += x;
    }
    for (int s = 0; s + 1 < k; ++s) {
        Heat bottleneck = r[s];
        for (int t = s + 1; t < k && sigma[s] > 0; ++t) {
            if (t > s + 1) bottleneck = std::min(bottleneck, r[t - 1]);
            if (bottleneck <= 0) break;
            const Heat x = std::min({sigma[s], delta[t], bottleneck});
            if (x <= 0) continue;
            out.q.add(hot, s, cold, t, x);
            sigma[s] -= x;
            delta[t] -= x;
            for (int u = s; u < t; ++u) r[u] -= x;
            bottleneck -= x;
            out.value += x;
        }
    }
    return out;
}

std::string to_string(BigMMethod method)
{
    return method == BigMMethod::trivial ? "trivial" : "mhg";
}

BigMMethod parse_big_m_method(const std::string& text)
{
    if (text == "trivial") return BigMMethod::trivial;
    if (text == "mhg") return BigMMethod::mhg;
    throw std::invalid_argument("unknown big-M method '" + text + "' (expected trivial or mhg)");
}

int worker_count()
{
    if (const char* env = std::getenv("HEATMATCH_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

BigMTable big_m_table(const MatchesInstance& inst, BigMMethod method)
{
    const int n = inst.n();
    const int m = inst.m();
    BigMTable table;
    table.bound = HeatMatrix::Zero(n, m);
    table.method.assign(static_cast<std::size_t>(n) * m, method);
    const HeatVector h = inst.hot_totals();
    const HeatVector c = inst.cold_totals();
    if (method == BigMMethod::trivial) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) table.bound(i, j) = std::min(h(i), c(j));
        return table;
    }

    const int total = n * m;
    const int workers = std::min(worker_count(), std::max(1, total / 64));
    auto run = [&](int begin, int end) {
        for (int p = begin; p < end; ++p) table.bound(p / m, p % m) = mhg(inst, p / m, p % m).value;
    };
    if (workers <= 1) {
        run(0, total);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run(total * w / workers, total * (w + 1) / workers);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (table.bound(i, j) > std::min(h(i), c(j))) throw InvariantError("mhg bound exceeds the trivial bound");
    return table;
}

SingleIntervalHeat mhs(const HeatVector& hot_loads, const HeatVector& cold_loads, const MatchSet& allowed)
{
    const int n = static_cast<int>(hot_loads.size());
    const int m = static_cast<int>(cold_loads.size());
    SingleIntervalHeat out;
    out.pair_heat = HeatMatrix::Zero(n, m);
    if (allowed.empty()) return out;

    FlowNetwork<std::int64_t> net;
    const int source = net.add_node();
    const int sink = net.add_node();
    std::vector<int> hot_node(n);
    std::vector<int> cold_node(m);
    for (int i = 0; i < n; ++i) {
        hot_node[i] = net.add_node();
        net.add_arc(source, hot_node[i], hot_loads(i));
    }
    for (int j = 0; j < m; ++j) {
        cold_node[j] = net.add_node();
        net.add_arc(cold_node[j], sink, cold_loads(j));
    }
    std::vector<std::pair<Match, int>> pair_arcs;
    for (const auto& p : allowed) {
        if (p.hot < 0 || p.hot >= n || p.cold < 0 || p.cold >= m) throw std::out_of_range("mhs: match index");
        pair_arcs.push_back({p, net.add_arc(hot_node[p.hot], cold_node[p.cold], kUnbounded)});
    }
    const auto flow = max_flow(net, source, sink);
    out.value = flow.value;
    for (const auto& [p, a] : pair_arcs) out.pair_heat(p.hot, p.cold) = flow.flow[a];
    return out;
}

namespace {

RestrictedHeat transportation_bound(const MatchesInstance& inst, const MatchSet& allowed)
{
    const int k = inst.k();
    FlowNetwork<std::int64_t> net;
    const int source = net.add_node();
    const int sink = net.add_node();
    std::vector<std::vector<int>> hot_node(inst.n(), std::vector<int>(k, -1));
    std::vector<std::vector<int>> cold_node(inst.m(), std::vector<int>(k, -1));
    for (int i = 0; i < inst.n(); ++i)
        for (int s = 0; s < k; ++s)
            if (inst.sigma(i, s) > 0) {
                hot_node[i][s] = net.add_node();
                net.add_arc(source, hot_node[i][s], inst.sigma(i, s));
            }
    for (int j = 0; j < inst.m(); ++j)
        for (int t = 0; t < k; ++t)
            if (inst.delta(j, t) > 0) {
                cold_node[j][t] = net.add_node();
                net.add_arc(cold_node[j][t], sink, inst.delta(j, t));
            }
    detail::RestrictedNetwork<std::int64_t> rn;
    for (const auto& [i, j] : allowed) {
        std::vector<int> chain(k);
        for (int u = 0; u < k; ++u) chain[u] = net.add_node();
        for (int u = 0; u + 1 < k; ++u) net.add_arc(chain[u], chain[u + 1], kUnbounded);
        for (int s = 0; s < k; ++s)
            if (hot_node[i][s] >= 0) rn.entries.push_back({i, j, s, net.add_arc(hot_node[i][s], chain[s], kUnbounded)});
        for (int t = 0; t < k; ++t)
            if (cold_node[j][t] >= 0) rn.exits.push_back({i, j, t, net.add_arc(chain[t], cold_node[j][t], kUnbounded)});
    }
    const auto flow = max_flow(net, source, sink);
    RestrictedHeat out;
    out.value = flow.value;
    out.q = detail::decompose_pairs(rn, flow.flow);
    return out;
}

}  // namespace

RestrictedHeat mhlp(const MatchesInstance& inst, const MatchSet& allowed, MhlpOptions options)
{
    for (const auto& p : allowed)
        if (p.hot < 0 || p.hot >= inst.n() || p.cold < 0 || p.cold >= inst.m())
            throw std::out_of_range("mhlp: match index");
    if (!options.residual_capacities) return transportation_bound(inst, allowed);

    RestrictedHeat out;
    if (allowed.empty()) return out;
    auto rn = detail::build_restricted<std::int64_t>(inst, allowed, [](int, int) { return std::int64_t{0}; },
                                                     std::int64_t{1});
    const auto flow = min_cost_flow(rn.net);
    out.q = detail::decompose_pairs(rn, flow.flow);
    out.value = out.q.total();
    return out;
}

MatchSet all_pairs(int n, int m)
{
    MatchSet out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) out.insert({i, j});
    return out;
}

}  // namespace heatmatch
