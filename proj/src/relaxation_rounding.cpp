#include "heatmatch/relaxation_rounding.hpp"

#include "heatmatch/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace heatmatch {

namespace {

long double as_real(Ratio r)
{
    return static_cast<long double>(r.num) / static_cast<long double>(r.den);
}

}  // namespace

FractionalSolution cost_lp(const MatchesInstance& inst, const CostVector& costs)
{
    const int n = inst.n();
    const int m = inst.m();
    const int k = inst.k();
    if (costs.n != n || costs.m != m) throw std::invalid_argument("cost vector shape does not match the instance");
    for (const auto& r : costs.lambda)
        if (r.den < 0 || (r.den > 0 && r.num < 0)) throw std::invalid_argument("costs must be non-negative");
    inst.require_feasible();

    FlowNetwork<FixedPointCost> net;
    std::vector<std::vector<int>> hot(n, std::vector<int>(k));
    for (int i = 0; i < n; ++i)
        for (int u = 0; u < k; ++u) hot[i][u] = net.add_node(inst.sigma(i, u));
    for (int i = 0; i < n; ++i)
        for (int u = 0; u + 1 < k; ++u) net.add_arc(hot[i][u], hot[i][u + 1], kUnbounded);
    struct Exit {
        int hot, cold, interval, arc;
    };
    std::vector<Exit> exits;
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < k; ++t) {
            if (inst.delta(j, t) == 0) continue;
            const int node = net.add_node(-inst.delta(j, t));
            for (int i = 0; i < n; ++i) {
                const Ratio r = costs(i, j);
                if (r.den == 0) continue;
                exits.push_back({i, j, t, net.add_arc(hot[i][t], node, kUnbounded, FixedPointCost::ratio(r.num, r.den))});
            }
        }
    const auto flow = min_cost_flow(net);

    // Per hot stream, heat leaves in interval order and is drawn from the earliest supply.
    FractionalSolution out;
    out.pair_heat = HeatMatrix::Zero(n, m);
    std::vector<std::deque<std::pair<int, Heat>>> origin(n);
    for (int i = 0; i < n; ++i)
        for (int u = 0; u < k; ++u)
            if (inst.sigma(i, u) > 0) origin[i].push_back({u, inst.sigma(i, u)});
    std::stable_sort(exits.begin(), exits.end(), [](const Exit& a, const Exit& b) { return a.interval < b.interval; });
    for (const auto& e : exits) {
        Heat x = flow.flow[e.arc];
        out.pair_heat(e.hot, e.cold) += x;
        auto& queue = origin[e.hot];
        while (x > 0) {
            if (queue.empty() || queue.front().first > e.interval) throw InvariantError("cost_lp flow ascends");
            const Heat take = std::min(x, queue.front().second);
            out.q.add(e.hot, queue.front().first, e.cold, e.interval, take);
            x -= take;
            if ((queue.front().second -= take) == 0) queue.pop_front();
        }
    }
    out.y = RealMatrix::Zero(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (out.pair_heat(i, j) == 0) continue;
            out.y(i, j) = as_real(costs(i, j)) * static_cast<long double>(out.pair_heat(i, j));
            out.objective += out.y(i, j);
        }
    return out;
}

namespace {

CostVector reciprocal_bounds(const BigMTable& bigm)
{
    CostVector costs(static_cast<int>(bigm.bound.rows()), static_cast<int>(bigm.bound.cols()));
    for (int i = 0; i < costs.n; ++i)
        for (int j = 0; j < costs.m; ++j) costs(i, j) = bigm(i, j) > 0 ? Ratio{1, bigm(i, j)} : Ratio{0, 0};
    return costs;
}

}  // namespace

FractionalSolution fractional_lp(const MatchesInstance& inst, const BigMTable& bigm)
{
    return cost_lp(inst, reciprocal_bounds(bigm));
}

RoundedSolution flpr(const MatchesInstance& inst, const BigMTable& bigm)
{
    RoundedSolution out;
    out.fractional = fractional_lp(inst, bigm);
    out.solution = Solution::from_heat(out.fractional.q);
    for (const auto& [i, j] : out.solution.matches)
        out.filling_ratio = std::min(out.filling_ratio, static_cast<long double>(out.fractional.pair_heat(i, j)) /
                                                            static_cast<long double>(bigm(i, j)));
    const long double v = out.solution.match_count();
    const long double obj = out.fractional.objective;
    const long double slack = 1e-9L * std::max<long double>(1, v);
    if (v > obj / out.filling_ratio + slack) throw InvariantError("flpr exceeds the filling-ratio bound");
    if (v > static_cast<long double>(bigm.max_entry()) * obj + slack) throw InvariantError("flpr exceeds U_max times the relaxation");
    return out;
}

std::string to_string(CostPolicy policy)
{
    switch (policy) {
    case CostPolicy::max_heat: return "max-heat";
    case CostPolicy::stream_bounds: return "stream-bounds";
    case CostPolicy::existing: return "existing";
    }
    return "?";
}

CostPolicy parse_cost_policy(const std::string& text)
{
    for (auto p : {CostPolicy::max_heat, CostPolicy::stream_bounds, CostPolicy::existing})
        if (to_string(p) == text) return p;
    throw std::invalid_argument("unknown cost policy '" + text + "' (expected max-heat, stream-bounds or existing)");
}

Solution lrr(const MatchesInstance& inst, const BigMTable& bigm, LrrOptions options)
{
    Solution fallback;
    if (!options.seed) fallback = flpr(inst, bigm).solution;
    const Solution& seed = options.seed ? *options.seed : fallback;

    CostVector costs = reciprocal_bounds(bigm);
    if (options.policy == CostPolicy::stream_bounds) {
        for (int i = 0; i < inst.n(); ++i)
            for (int j = 0; j < inst.m(); ++j)
                if (costs(i, j).den != 0) costs(i, j) = Ratio{1, inst.hot_total(i)};
    } else if (options.policy == CostPolicy::existing) {
        const HeatMatrix used = seed.q.pair_totals(inst.n(), inst.m());
        for (const auto& [i, j] : seed.matches)
            if (used(i, j) > 0) costs(i, j) = Ratio{1, used(i, j)};
    }
    Solution rounded = Solution::from_heat(cost_lp(inst, costs).q);
    return rounded.match_count() < seed.match_count() ? rounded : seed;
}

namespace {

class CoverSearch {
public:
    CoverSearch(const HeatVector& h, const HeatVector& c, const HeatMatrix& u, std::int64_t limit)
        : h_(h), c_(c), u_(u), state_(u.size(), 0), limit_(limit)
    {
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < m(); ++j)
                if (u_(i, j) <= 0) state_[id(i, j)] = 2;
    }

    void run()
    {
        greedy();
        search(0);
    }

    const std::vector<int>& best() const { return best_; }
    bool optimal() const { return nodes_ <= limit_; }
    std::int64_t nodes() const { return nodes_; }

private:
    int n() const { return static_cast<int>(h_.size()); }
    int m() const { return static_cast<int>(c_.size()); }
    std::size_t id(int i, int j) const { return static_cast<std::size_t>(i) * m() + j; }

    Heat row_deficit(int i) const
    {
        Heat d = h_(i);
        for (int j = 0; j < m(); ++j)
            if (state_[id(i, j)] == 1) d -= u_(i, j);
        return d;
    }
    Heat col_deficit(int j) const
    {
        Heat d = c_(j);
        for (int i = 0; i < n(); ++i)
            if (state_[id(i, j)] == 1) d -= u_(i, j);
        return d;
    }

    // Fewest free entries that cover the deficit; -1 when they cannot.
    static int need(std::vector<Heat>& free, Heat deficit)
    {
        if (deficit <= 0) return 0;
        std::sort(free.begin(), free.end(), std::greater<>());
        int count = 0;
        for (Heat x : free) {
            deficit -= x;
            ++count;
            if (deficit <= 0) return count;
        }
        return -1;
    }

    void greedy()
    {
        std::vector<Heat> dr(n());
        std::vector<Heat> dc(m());
        for (int i = 0; i < n(); ++i) dr[i] = h_(i);
        for (int j = 0; j < m(); ++j) dc[j] = c_(j);
        std::vector<int> chosen;
        while (true) {
            Heat best_gain = 0;
            int bi = -1;
            int bj = -1;
            for (int i = 0; i < n(); ++i)
                for (int j = 0; j < m(); ++j) {
                    if (state_[id(i, j)] != 0 || std::find(chosen.begin(), chosen.end(), int(id(i, j))) != chosen.end())
                        continue;
                    const Heat gain = std::min(u_(i, j), std::max<Heat>(dr[i], 0)) + std::min(u_(i, j), std::max<Heat>(dc[j], 0));
                    if (gain > best_gain) {
                        best_gain = gain;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) break;
            chosen.push_back(static_cast<int>(id(bi, bj)));
            dr[bi] -= u_(bi, bj);
            dc[bj] -= u_(bi, bj);
        }
        best_ = chosen;
    }

    void search(int included)
    {
        if (++nodes_ > limit_) return;
        int lb_rows = 0;
        int lb_cols = 0;
        bool covered = true;
        std::vector<Heat> free;
        std::vector<Heat> dr(n());
        std::vector<Heat> dc(m());
        for (int i = 0; i < n(); ++i) {
            dr[i] = row_deficit(i);
            free.clear();
            for (int j = 0; j < m(); ++j)
                if (state_[id(i, j)] == 0) free.push_back(u_(i, j));
            const int k = need(free, dr[i]);
            if (k < 0) return;
            lb_rows += k;
            covered = covered && dr[i] <= 0;
        }
        for (int j = 0; j < m(); ++j) {
            dc[j] = col_deficit(j);
            free.clear();
            for (int i = 0; i < n(); ++i)
                if (state_[id(i, j)] == 0) free.push_back(u_(i, j));
            const int k = need(free, dc[j]);
            if (k < 0) return;
            lb_cols += k;
            covered = covered && dc[j] <= 0;
        }
        if (included + std::max(lb_rows, lb_cols) >= static_cast<int>(best_.size())) return;
        if (covered) {
            best_.clear();
            for (std::size_t p = 0; p < state_.size(); ++p)
                if (state_[p] == 1) best_.push_back(static_cast<int>(p));
            return;
        }
        int bi = -1;
        int bj = -1;
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < m(); ++j)
                if (state_[id(i, j)] == 0 && (dr[i] > 0 || dc[j] > 0) && (bi < 0 || u_(i, j) > u_(bi, bj))) {
                    bi = i;
                    bj = j;
                }
        const std::size_t p = id(bi, bj);
        state_[p] = 1;
        search(included + 1);
        state_[p] = 2;
        search(included);
        state_[p] = 0;
    }

    const HeatVector& h_;
    const HeatVector& c_;
    const HeatMatrix& u_;
    std::vector<char> state_;  // 0 free, 1 included, 2 excluded
    std::vector<int> best_;
    std::int64_t limit_;
    std::int64_t nodes_ = 0;
};

}  // namespace

CoverResult cover_milp(const MatchesInstance& inst, const BigMTable& bigm, CoverOptions options)
{
    const HeatVector h = inst.hot_totals();
    const HeatVector c = inst.cold_totals();
    HeatMatrix u = bigm.bound.cwiseMax(0);
    for (int i = 0; i < inst.n(); ++i)
        if (u.row(i).sum() < h(i))
            throw InfeasibleError("hot stream " + inst.hot_names()[i] + " cannot be covered by its big-M bounds");
    for (int j = 0; j < inst.m(); ++j)
        if (u.col(j).sum() < c(j))
            throw InfeasibleError("cold stream " + inst.cold_names()[j] + " cannot be covered by its big-M bounds");
    CoverSearch search(h, c, u, options.node_limit);
    search.run();
    CoverResult out;
    for (int p : search.best()) out.matches.insert({p / inst.m(), p % inst.m()});
    out.optimal = search.optimal();
    out.nodes = search.nodes();
    return out;
}

CrrResult crr(const MatchesInstance& inst, BigMMethod method, CoverOptions options)
{
    inst.require_feasible();
    CrrResult out;
    HeatTensor q;
    MatchSet matches;
    MatchesInstance residual = inst;
    const int cap = std::max(1, inst.n() * inst.m());
    while (residual.total_supply() > 0 || residual.total_demand() > 0) {
        if (++out.iterations > cap) throw InvariantError("crr did not finish within n*m iterations");
        BigMTable table = big_m_table(residual, method);
        for (const auto& [i, j] : matches) table.bound(i, j) = 0;
        const auto cover = cover_milp(residual, table, options);
        if (out.iterations == 1) out.first_cover = static_cast<int>(cover.matches.size());
        out.covers_optimal = out.covers_optimal && cover.optimal;
        matches.insert(cover.matches.begin(), cover.matches.end());
        const auto step = mhlp(residual, matches);
        if (step.value == 0) throw InvariantError("crr stalled: the new cover moved no heat");
        q.add(step.q);
        residual = residual.minus(step.q);
        if (!residual.is_feasible()) throw InvariantError("crr left an infeasible residual");
    }
    out.solution = Solution::from_heat(q);
    return out;
}

}  // namespace heatmatch
