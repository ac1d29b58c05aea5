#include "heatmatch/single_interval.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace heatmatch {

void SingleIntervalInstance::validate() const
{
    for (int i = 0; i < n(); ++i)
        if (hot(i) <= 0) throw std::invalid_argument("hot load " + std::to_string(i) + " must be positive");
    for (int j = 0; j < m(); ++j)
        if (cold(j) <= 0) throw std::invalid_argument("cold load " + std::to_string(j) + " must be positive");
    const Heat h = hot.sum();
    const Heat c = cold.sum();
    if (conservation && h != c)
        throw InfeasibleError("hot loads sum to " + std::to_string(h) + " but cold loads sum to " + std::to_string(c));
    if (!conservation && h < c)
        throw InfeasibleError("hot loads sum to " + std::to_string(h) + ", less than the cold demand " +
                              std::to_string(c));
}

void SingleIntervalSolution::add(int i, int j, Heat x)
{
    if (x <= 0) return;
    heat(i, j) += x;
    matches.insert({i, j});
}

namespace {

std::vector<int> sorted_desc(const HeatVector& loads, const std::vector<int>& subset)
{
    std::vector<int> out = subset;
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) { return loads(a) > loads(b); });
    return out;
}

std::vector<int> iota_vec(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

SingleIntervalSolution empty_solution(const SingleIntervalInstance& inst)
{
    SingleIntervalSolution sol;
    sol.heat = HeatMatrix::Zero(inst.n(), inst.m());
    return sol;
}

// Two-pointer greedy over the given streams; stops once the cold side is served.
void greedy_fill(const SingleIntervalInstance& inst, const std::vector<int>& hots, const std::vector<int>& colds,
                 SingleIntervalSolution& sol)
{
    const auto h = sorted_desc(inst.hot, hots);
    const auto c = sorted_desc(inst.cold, colds);
    std::size_t a = 0;
    std::size_t b = 0;
    Heat left_h = h.empty() ? 0 : inst.hot(h[0]);
    Heat left_c = c.empty() ? 0 : inst.cold(c[0]);
    while (a < h.size() && b < c.size()) {
        const Heat x = std::min(left_h, left_c);
        sol.add(h[a], c[b], x);
        left_h -= x;
        left_c -= x;
        if (left_h == 0 && ++a < h.size()) left_h = inst.hot(h[a]);
        if (left_c == 0 && ++b < c.size()) left_c = inst.cold(c[b]);
    }
    if (b < c.size()) throw InvariantError("greedy ran out of hot heat");
}

}  // namespace

SingleIntervalSolution sg(const SingleIntervalInstance& inst)
{
    inst.validate();
    auto sol = empty_solution(inst);
    greedy_fill(inst, iota_vec(inst.n()), iota_vec(inst.m()), sol);
    return sol;
}

SingleIntervalSolution ig(const SingleIntervalInstance& inst)
{
    inst.validate();
    auto sol = empty_solution(inst);
    const auto h = sorted_desc(inst.hot, iota_vec(inst.n()));
    const auto c = sorted_desc(inst.cold, iota_vec(inst.m()));
    std::vector<int> rest_h;
    std::vector<int> rest_c;
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < h.size() && b < c.size()) {
        if (inst.hot(h[a]) == inst.cold(c[b])) {
            sol.add(h[a], c[b], inst.hot(h[a]));
            ++a;
            ++b;
        } else if (inst.hot(h[a]) > inst.cold(c[b])) {
            rest_h.push_back(h[a++]);
        } else {
            rest_c.push_back(c[b++]);
        }
    }
    rest_h.insert(rest_h.end(), h.begin() + static_cast<long>(a), h.end());
    rest_c.insert(rest_c.end(), c.begin() + static_cast<long>(b), c.end());
    greedy_fill(inst, rest_h, rest_c, sol);
    return sol;
}

ForestCheck forest_check(int n, int m, const MatchSet& matches)
{
    std::vector<int> parent(n + m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    ForestCheck out;
    out.trees = n + m;
    for (const auto& [i, j] : matches) {
        const int a = find(i);
        const int b = find(n + j);
        if (a == b) {
            out.is_forest = false;
        } else {
            parent[a] = b;
            --out.trees;
        }
    }
    out.count_identity = static_cast<int>(matches.size()) == n + m - out.trees;
    return out;
}

namespace {

struct Item {
    bool hot;
    int index;
    Heat load;
};

class NodeBudget {
public:
    explicit NodeBudget(std::int64_t limit) : limit_(limit) {}
    void tick()
    {
        if (++count_ > limit_)
            throw SizeLimitError("exact bin search exceeded " + std::to_string(limit_) +
                                 " nodes; use the ig heuristic for this interval");
    }
    std::int64_t count() const { return count_; }

private:
    std::int64_t limit_;
    std::int64_t count_ = 0;
};

// Maximum number of zero-balance bins. Bins are built one at a time around the first free hot stream.
class ConservingSearch {
public:
    ConservingSearch(std::vector<Item> items, NodeBudget& budget)
        : items_(std::move(items)), used_(items_.size(), false), bin_of_(items_.size(), -1), budget_(budget)
    {
    }

    void run(int incumbent, std::vector<int> incumbent_bins)
    {
        best_ = incumbent;
        best_bin_of_ = std::move(incumbent_bins);
        next_bin(0);
    }

    int best() const { return best_; }
    const std::vector<int>& best_bin_of() const { return best_bin_of_; }

private:
    void next_bin(int bins)
    {
        budget_.tick();
        int first = -1;
        int rem_hot = 0;
        int rem_cold = 0;
        for (std::size_t p = 0; p < items_.size(); ++p) {
            if (used_[p]) continue;
            if (items_[p].hot) {
                ++rem_hot;
                if (first < 0) first = static_cast<int>(p);
            } else {
                ++rem_cold;
            }
        }
        if (first < 0) {
            if (rem_cold == 0 && bins > best_) {
                best_ = bins;
                best_bin_of_ = bin_of_;
            }
            return;
        }
        if (bins + std::min(rem_hot, rem_cold) <= best_) return;

        std::vector<int> free;
        for (std::size_t p = first + 1; p < items_.size(); ++p)
            if (!used_[p]) free.push_back(static_cast<int>(p));
        std::vector<Heat> hot_suffix(free.size() + 1, 0);
        std::vector<Heat> cold_suffix(free.size() + 1, 0);
        for (int q = static_cast<int>(free.size()) - 1; q >= 0; --q) {
            const auto& it = items_[free[q]];
            hot_suffix[q] = hot_suffix[q + 1] + (it.hot ? it.load : 0);
            cold_suffix[q] = cold_suffix[q + 1] + (it.hot ? 0 : it.load);
        }
        used_[first] = true;
        bin_of_[first] = bins;
        std::vector<int> chosen;
        grow(bins, free, hot_suffix, cold_suffix, 0, items_[first].load, false, chosen);
        used_[first] = false;
        bin_of_[first] = -1;
    }

    void grow(int bins, const std::vector<int>& free, const std::vector<Heat>& hot_suffix,
              const std::vector<Heat>& cold_suffix, std::size_t q, Heat balance, bool prev_skipped_twin,
              std::vector<int>& chosen)
    {
        budget_.tick();
        if (balance == 0) {
            for (int p : chosen) {
                used_[p] = true;
                bin_of_[p] = bins;
            }
            next_bin(bins + 1);
            for (int p : chosen) {
                used_[p] = false;
                bin_of_[p] = -1;
            }
            return;
        }
        if (q == free.size()) return;
        if (balance > 0 && cold_suffix[q] < balance) return;
        if (balance < 0 && hot_suffix[q] < -balance) return;
        const auto& it = items_[free[q]];
        const bool twin = q > 0 && items_[free[q - 1]].hot == it.hot && items_[free[q - 1]].load == it.load;
        grow(bins, free, hot_suffix, cold_suffix, q + 1, balance, true, chosen);
        if (twin && prev_skipped_twin) return;
        chosen.push_back(free[q]);
        grow(bins, free, hot_suffix, cold_suffix, q + 1, balance + (it.hot ? it.load : -it.load), false, chosen);
        chosen.pop_back();
    }

    std::vector<Item> items_;
    std::vector<bool> used_;
    std::vector<int> bin_of_;
    NodeBudget& budget_;
    int best_ = 0;
    std::vector<int> best_bin_of_;
};

// Minimum of (hot streams used) + m - (bins). Colds are partitioned first, then hots cover the bins.
class DemandSearch {
public:
    DemandSearch(const SingleIntervalInstance& inst, NodeBudget& budget)
        : inst_(inst), budget_(budget),
          hots_(sorted_desc(inst.hot, iota_vec(inst.n()))), colds_(sorted_desc(inst.cold, iota_vec(inst.m()))),
          cold_bin_(inst.m(), -1), hot_bin_(inst.n(), -1)
    {
        Heat demand = inst.cold.sum();
        for (int p = 0; p < inst.n() && demand > 0; ++p) {
            demand -= inst.hot(hots_[p]);
            ++min_hots_;
        }
        hot_suffix_.assign(inst.n() + 1, 0);
        for (int p = inst.n() - 1; p >= 0; --p) hot_suffix_[p] = hot_suffix_[p + 1] + inst.hot(hots_[p]);
    }

    // Fewest hot streams from position p on that cover `deficit`; n + 1 when impossible.
    int need(int p, Heat deficit) const
    {
        if (deficit <= 0) return 0;
        const Heat target = hot_suffix_[p] - deficit;
        if (target < 0) return inst_.n() + 1;
        // Largest end e with hot_suffix_[e] >= target; suffix sums are non-increasing.
        int lo = p;
        int hi = inst_.n();
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (hot_suffix_[mid] >= target) lo = mid; else hi = mid - 1;
        }
        return lo - p;
    }

    // Matches first, then fewer hot streams used.
    int score(int matches, int used) const { return matches * (inst_.n() + 1) + used; }

    void run(int incumbent, std::vector<int> hot_bin, std::vector<int> cold_bin)
    {
        best_ = score(incumbent, 0);
        best_hot_bin_ = std::move(hot_bin);
        best_cold_bin_ = std::move(cold_bin);
        place_cold(0);
    }

    int best() const { return best_ / (inst_.n() + 1); }
    const std::vector<int>& best_hot_bin() const { return best_hot_bin_; }
    const std::vector<int>& best_cold_bin() const { return best_cold_bin_; }

private:
    void place_cold(int q)
    {
        budget_.tick();
        const int m = inst_.m();
        const int bins = static_cast<int>(deficit_.size());
        const int max_bins = std::min(inst_.n(), bins + (m - q));
        int extra = 0;
        for (Heat d : deficit_) extra += need(0, d) - 1;
        const int cost = std::max({m, min_hots_ + m - max_bins, m + extra});
        if (score(cost, std::max(min_hots_, bins)) >= best_) return;
        if (q == m) {
            place_hot(0, 0, bins);
            return;
        }
        const int j = colds_[q];
        if (bins < inst_.n()) {
            deficit_.push_back(inst_.cold(j));
            cold_bin_[j] = bins;
            place_cold(q + 1);
            deficit_.pop_back();
        }
        const bool twin = q > 0 && inst_.cold(colds_[q - 1]) == inst_.cold(j);
        const int lowest = twin ? cold_bin_[colds_[q - 1]] : 0;
        for (int b = std::max(lowest, 0); b < bins; ++b) {
            deficit_[b] += inst_.cold(j);
            cold_bin_[j] = b;
            place_cold(q + 1);
            deficit_[b] -= inst_.cold(j);
        }
        cold_bin_[j] = -1;
    }

    void place_hot(int p, int used, int unsatisfied)
    {
        budget_.tick();
        const int bins = static_cast<int>(deficit_.size());
        const int m = inst_.m();
        int needed = 0;
        for (Heat d : deficit_) needed += need(p, d);
        const int will_use = used + std::max(unsatisfied, needed);
        if (score(will_use + m - bins, will_use) >= best_) return;
        if (unsatisfied == 0) {
            best_ = score(used + m - bins, used);
            best_hot_bin_ = hot_bin_;
            best_cold_bin_ = cold_bin_;
            return;
        }
        if (p == inst_.n()) return;
        Heat total_deficit = 0;
        for (Heat d : deficit_) total_deficit += std::max<Heat>(d, 0);
        if (hot_suffix_[p] < total_deficit) return;
        const int i = hots_[p];
        const Heat load = inst_.hot(i);
        std::vector<Heat> tried;
        for (int b = 0; b < bins; ++b) {
            if (deficit_[b] <= 0) continue;
            if (std::find(tried.begin(), tried.end(), deficit_[b]) != tried.end()) continue;
            tried.push_back(deficit_[b]);
            deficit_[b] -= load;
            hot_bin_[i] = b;
            place_hot(p + 1, used + 1, unsatisfied - (deficit_[b] <= 0 ? 1 : 0));
            hot_bin_[i] = -1;
            deficit_[b] += load;
        }
        place_hot(p + 1, used, unsatisfied);
    }

    const SingleIntervalInstance& inst_;
    NodeBudget& budget_;
    std::vector<int> hots_;
    std::vector<int> colds_;
    std::vector<Heat> deficit_;
    std::vector<int> cold_bin_;
    std::vector<int> hot_bin_;
    std::vector<Heat> hot_suffix_;
    int min_hots_ = 0;
    int best_ = 0;
    std::vector<int> best_hot_bin_;
    std::vector<int> best_cold_bin_;
};

// Bins from the connected components of a solution's match graph; unmatched hot streams get -1.
BinAssignment components(const SingleIntervalInstance& inst, const SingleIntervalSolution& sol)
{
    const int n = inst.n();
    std::vector<int> parent(n + inst.m());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [i, j] : sol.matches) parent[find(i)] = find(n + j);
    BinAssignment out;
    out.hot_bin.assign(n, -1);
    out.cold_bin.assign(inst.m(), -1);
    std::vector<int> label(n + inst.m(), -1);
    for (int j = 0; j < inst.m(); ++j) {
        int& l = label[find(n + j)];
        if (l < 0) l = out.bins++;
        out.cold_bin[j] = l;
    }
    for (int i = 0; i < n; ++i) {
        out.hot_bin[i] = label[find(i)];
    }
    return out;
}

}  // namespace

ExactBinsResult exact_bins(const SingleIntervalInstance& inst, ExactBinsOptions options)
{
    inst.validate();
    const int n = inst.n();
    const int m = inst.m();
    if (n + m > options.max_streams)
        throw SizeLimitError(std::to_string(n + m) + " streams exceed the exact bin cap of " +
                             std::to_string(options.max_streams) + "; use the ig heuristic");
    ExactBinsResult out;
    NodeBudget budget(options.node_limit);
    const auto start = components(inst, ig(inst));

    if (inst.conservation) {
        std::vector<Item> items;
        for (int i : sorted_desc(inst.hot, iota_vec(n))) items.push_back({true, i, inst.hot(i)});
        for (int j : sorted_desc(inst.cold, iota_vec(m))) items.push_back({false, j, inst.cold(j)});
        std::vector<int> start_bins;
        for (const auto& it : items) start_bins.push_back(it.hot ? start.hot_bin[it.index] : start.cold_bin[it.index]);
        ConservingSearch search(items, budget);
        search.run(start.bins, start_bins);
        out.assignment.hot_bin.assign(n, -1);
        out.assignment.cold_bin.assign(m, -1);
        out.assignment.bins = search.best();
        for (std::size_t p = 0; p < items.size(); ++p) {
            auto& slot = items[p].hot ? out.assignment.hot_bin : out.assignment.cold_bin;
            slot[items[p].index] = search.best_bin_of()[p];
        }
    } else {
        int start_cost = 0;
        for (int i = 0; i < n; ++i) start_cost += start.hot_bin[i] >= 0 ? 1 : 0;
        start_cost += m - start.bins;
        DemandSearch search(inst, budget);
        search.run(start_cost + 1, start.hot_bin, start.cold_bin);
        out.assignment.hot_bin = search.best_hot_bin();
        out.assignment.cold_bin = search.best_cold_bin();
        if (search.best() > start_cost) {
            out.assignment = start;
        } else {
            out.assignment.bins = 0;
            for (int b : out.assignment.cold_bin) out.assignment.bins = std::max(out.assignment.bins, b + 1);
        }
    }
    out.nodes = budget.count();

    out.solution = empty_solution(inst);
    for (int b = 0; b < out.assignment.bins; ++b) {
        std::vector<int> hs;
        std::vector<int> cs;
        for (int i = 0; i < n; ++i)
            if (out.assignment.hot_bin[i] == b) hs.push_back(i);
        for (int j = 0; j < m; ++j)
            if (out.assignment.cold_bin[j] == b) cs.push_back(j);
        greedy_fill(inst, hs, cs, out.solution);
    }
    int used_hot = 0;
    for (int b : out.assignment.hot_bin) used_hot += b >= 0 ? 1 : 0;
    if (out.solution.match_count() != used_hot + m - out.assignment.bins)
        throw InvariantError("optimal bins do not realize as spanning trees");
    return out;
}

}  // namespace heatmatch
