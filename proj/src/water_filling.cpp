#include "heatmatch/water_filling.hpp"

#include "heatmatch/maxheat.hpp"

#include <algorithm>
#include <deque>

namespace heatmatch {

std::string to_string(SingleIntervalEngine engine)
{
    return engine == SingleIntervalEngine::greedy ? "greedy" : "exact";
}

namespace {

// Heat carried by one hot stream, tagged with the interval it entered. Oldest heat leaves first.
class Carry {
public:
    void push(int interval, Heat heat)
    {
        if (heat > 0) parts_.push_back({interval, heat});
        total_ += heat;
    }
    Heat total() const { return total_; }

    void draw(int hot, int cold, int interval, Heat heat, HeatTensor& q)
    {
        total_ -= heat;
        while (heat > 0) {
            if (parts_.empty()) throw InvariantError("water filling drew more heat than a stream carries");
            auto& [origin, left] = parts_.front();
            const Heat x = std::min(heat, left);
            q.add(hot, origin, cold, interval, x);
            heat -= x;
            if ((left -= x) == 0) parts_.pop_front();
        }
    }

private:
    std::deque<std::pair<int, Heat>> parts_;
    Heat total_ = 0;
};

}  // namespace

WaterFillResult water_fill(const MatchesInstance& inst, WaterFillOptions options)
{
    inst.require_feasible();
    const int n = inst.n();
    const int m = inst.m();
    WaterFillResult out;
    HeatTensor q;
    MatchSet matches;
    std::vector<Carry> carry(n);
    std::vector<Heat> later(n);  // supply in intervals below the current one
    for (int i = 0; i < n; ++i) later[i] = inst.hot_total(i);

    for (int t = 0; t < inst.k(); ++t) {
        for (int i = 0; i < n; ++i) {
            carry[i].push(t, inst.sigma(i, t));
            later[i] -= inst.sigma(i, t);
        }
        HeatVector supply(n);
        HeatVector demand(m);
        for (int i = 0; i < n; ++i) supply(i) = carry[i].total();
        for (int j = 0; j < m; ++j) demand(j) = inst.delta(j, t);

        if (t > 0 && !matches.empty()) {
            const auto reuse = mhs(supply, demand, matches);
            for (const auto& [i, j] : matches) {
                const Heat x = reuse.pair_heat(i, j);
                if (x == 0) continue;
                carry[i].draw(i, j, t, x, q);
                supply(i) -= x;
                demand(j) -= x;
            }
        }

        SingleIntervalInstance sub;
        sub.conservation = false;
        std::vector<int> hot_ids;
        std::vector<int> cold_ids;
        for (int i = 0; i < n; ++i)
            if (supply(i) > 0) hot_ids.push_back(i);
        for (int j = 0; j < m; ++j)
            if (demand(j) > 0) cold_ids.push_back(j);
        if (cold_ids.empty()) continue;
        // Equal loads are tied in both engines; streams with the least supply still to come go first.
        std::stable_sort(hot_ids.begin(), hot_ids.end(), [&](int a, int b) { return later[a] < later[b]; });
        sub.hot.resize(static_cast<long>(hot_ids.size()));
        sub.cold.resize(static_cast<long>(cold_ids.size()));
        for (std::size_t a = 0; a < hot_ids.size(); ++a) sub.hot(static_cast<long>(a)) = supply(hot_ids[a]);
        for (std::size_t b = 0; b < cold_ids.size(); ++b) sub.cold(static_cast<long>(b)) = demand(cold_ids[b]);

        SingleIntervalSolution local;
        if (options.engine == SingleIntervalEngine::exact) {
            try {
                local = exact_bins(sub, options.exact).solution;
            } catch (const SizeLimitError&) {
                out.fallback_intervals.push_back(t);
                local = ig(sub);
            }
        } else {
            local = ig(sub);
        }
        for (const auto& [a, b] : local.matches) {
            const int i = hot_ids[a];
            const int j = cold_ids[b];
            carry[i].draw(i, j, t, local.heat(a, b), q);
            matches.insert({i, j});
        }
    }
    for (int i = 0; i < n; ++i)
        if (carry[i].total() != 0) throw InvariantError("water filling ended with undelivered hot heat");
    out.solution = Solution::from_heat(q);
    return out;
}

}  // namespace heatmatch
