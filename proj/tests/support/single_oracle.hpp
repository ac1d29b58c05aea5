#pragma once

// Independent single-interval optima: subset DP over zero-sum parts, and enumeration of match sets
// checked with a small augmenting-path max flow.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

// Max number of zero-sum blocks when hot loads count positive and cold loads negative.
// A permutation has as many zero-sum prefixes as the best partition has blocks.
inline int max_zero_sum_parts(const std::vector<long>& hot, const std::vector<long>& cold)
{
    std::vector<long> v = hot;
    for (long c : cold) v.push_back(-c);
    const int n = static_cast<int>(v.size());
    std::vector<int> best(std::size_t{1} << n, 0);
    std::vector<long> sum(std::size_t{1} << n, 0);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        const int low = __builtin_ctz(s);
        sum[s] = sum[s & (s - 1)] + v[low];
        int b = 0;
        for (int x = 0; x < n; ++x)
            if (s >> x & 1) b = std::max(b, best[s ^ (1u << x)]);
        best[s] = b + (sum[s] == 0 ? 1 : 0);
    }
    return best.back();
}

inline long tiny_max_flow(std::vector<std::vector<long>> cap, int s, int t)
{
    const int n = static_cast<int>(cap.size());
    long total = 0;
    while (true) {
        std::vector<int> prev(n, -1);
        prev[s] = s;
        std::vector<int> queue{s};
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (int v = 0; v < n; ++v)
                if (prev[v] < 0 && cap[queue[q]][v] > 0) {
                    prev[v] = queue[q];
                    queue.push_back(v);
                }
        if (prev[t] < 0) return total;
        long push = -1;
        for (int v = t; v != s; v = prev[v]) push = push < 0 ? cap[prev[v]][v] : std::min(push, cap[prev[v]][v]);
        for (int v = t; v != s; v = prev[v]) {
            cap[prev[v]][v] -= push;
            cap[v][prev[v]] += push;
        }
        total += push;
    }
}

// Fewest pairs that can serve every cold load; hot loads are capacities.
inline int min_matches_enumerated(const std::vector<long>& hot, const std::vector<long>& cold)
{
    const int n = static_cast<int>(hot.size());
    const int m = static_cast<int>(cold.size());
    long demand = 0;
    for (long c : cold) demand += c;
    int best = n * m + 1;
    for (std::uint32_t mask = 0; mask < (1u << (n * m)); ++mask) {
        const int count = __builtin_popcount(mask);
        if (count >= best) continue;
        std::vector<std::vector<long>> cap(n + m + 2, std::vector<long>(n + m + 2, 0));
        for (int i = 0; i < n; ++i) cap[0][2 + i] = hot[i];
        for (int j = 0; j < m; ++j) cap[2 + n + j][1] = cold[j];
        for (int e = 0; e < n * m; ++e)
            if (mask >> e & 1) cap[2 + e / m][2 + n + e % m] = demand;
        if (tiny_max_flow(cap, 0, 1) == demand) best = count;
    }
    return best;
}

}  // namespace oracle
