#include "heatmatch/generators.hpp"

#include <numeric>
#include <random>

namespace heatmatch {

namespace {

double cents(std::uint64_t v)
{
    return static_cast<double>(v) / 100.0;
}

}  // namespace

NetworkDesignInstance generate_large_scale(std::uint64_t seed, int hot_count, int cold_count)
{
    if (hot_count < 1 || cold_count < 1) throw std::invalid_argument("generate_large_scale: stream counts must be positive");
    std::mt19937_64 engine(seed);
    NetworkDesignInstance inst;
    inst.dt_min = 10;
    inst.name = "large_scale_" + std::to_string(seed);
    inst.provenance = {
        {"generator", "large_scale"},
        {"seed", std::to_string(seed)},
        {"hot_streams", std::to_string(hot_count)},
        {"cold_streams", std::to_string(cold_count)},
        {"prng", "mt19937_64"},
    };
    // Hot: T_in in (30, 400], T_out in [30, T_in). Cold: T_out in (20, 400], T_in in [20, T_out).
    for (int i = 0; i < hot_count; ++i) {
        ProcessStream s;
        s.kind = StreamKind::hot;
        s.name = "H" + std::to_string(i + 1);
        const std::uint64_t tin = 3001 + engine() % 37000;
        const std::uint64_t tout = 3000 + engine() % (tin - 3000);
        s.t_in = cents(tin);
        s.t_out = cents(tout);
        s.fcp = cents(1 + engine() % 1500);
        inst.hot_streams.push_back(s);
    }
    for (int j = 0; j < cold_count; ++j) {
        ProcessStream s;
        s.kind = StreamKind::cold;
        s.name = "C" + std::to_string(j + 1);
        const std::uint64_t tout = 2001 + engine() % 38000;
        const std::uint64_t tin = 2000 + engine() % (tout - 2000);
        s.t_in = cents(tin);
        s.t_out = cents(tout);
        s.fcp = cents(1 + engine() % 1500);
        inst.cold_streams.push_back(s);
    }
    inst.hot_utilities.push_back({StreamKind::hot, 500, 499, 80, "HU"});
    inst.cold_utilities.push_back({StreamKind::cold, 20, 21, 20, "CU"});
    inst.validate();
    return inst;
}

std::string to_string(Family family)
{
    switch (family) {
    case Family::sg: return "sg";
    case Family::ig: return "ig";
    case Family::wf: return "wf";
    case Family::flpr: return "flpr";
    }
    return "?";
}

Family parse_family(const std::string& text)
{
    for (Family f : {Family::sg, Family::ig, Family::wf, Family::flpr})
        if (to_string(f) == text) return f;
    throw std::invalid_argument("unknown family '" + text + "' (expected sg, ig, wf or flpr)");
}

MatchesInstance generate_tightness_family(Family family, int size)
{
    if (size < 1 || size > 200) throw std::invalid_argument("tightness family size must be in 1..200");
    const int n = size;
    auto single = [](const std::vector<Heat>& hot, const std::vector<Heat>& cold) {
        HeatMatrix sigma(static_cast<long>(hot.size()), 1);
        HeatMatrix delta(static_cast<long>(cold.size()), 1);
        for (std::size_t i = 0; i < hot.size(); ++i) sigma(static_cast<long>(i), 0) = hot[i];
        for (std::size_t j = 0; j < cold.size(); ++j) delta(static_cast<long>(j), 0) = cold[j];
        return MatchesInstance(sigma, delta);
    };
    MatchesInstance out;
    switch (family) {
    case Family::sg: {
        // h_i = 2n+1-i and c_j = 2n-j fall one unit short of conservation; the smallest cold absorbs it.
        std::vector<Heat> hot;
        std::vector<Heat> cold;
        for (int i = 1; i <= n; ++i) hot.push_back(2 * n + 1 - i);
        for (int j = 1; j <= n + 1; ++j) cold.push_back(2 * n - j);
        cold.back() += 1;
        out = single(hot, cold);
        break;
    }
    case Family::ig: {
        std::vector<Heat> hot;
        std::vector<Heat> cold;
        for (int i = 1; i <= n; ++i) hot.push_back(4 * n - 2 * i);
        for (int j = 1; j <= n; ++j) cold.push_back(4 * n - 2 * j - 1);
        for (int j = 1; j <= n; ++j) cold.push_back(1);
        out = single(hot, cold);
        break;
    }
    case Family::wf: {
        const int k = size;
        HeatMatrix sigma = HeatMatrix::Zero(k, k);
        HeatMatrix delta = HeatMatrix::Zero(k, k);
        for (int i = 0; i < k; ++i)
            for (int u = 0; u < k - i; ++u) sigma(i, u) = 1;
        for (int j = 0; j < k; ++j)
            for (int u = j; u < k; ++u) delta(j, u) = 1;
        out = MatchesInstance(sigma, delta);
        break;
    }
    case Family::flpr:
        out = single(std::vector<Heat>(n, n), std::vector<Heat>(n, n));
        break;
    }
    out.name = to_string(family) + "_" + std::to_string(size);
    out.provenance = {{"generator", "tightness_family"}, {"family", to_string(family)}, {"size", std::to_string(size)}};
    out.require_feasible();
    return out;
}

MatchesInstance generate_random_matches(std::uint64_t seed, RandomShape shape)
{
    if (shape.hot < 1 || shape.cold < 1 || shape.intervals < 1 || shape.max_heat < 1)
        throw std::invalid_argument("generate_random_matches: shape must be positive");
    std::mt19937_64 engine(seed);
    const int n = shape.hot;
    const int m = shape.cold;
    const int k = shape.intervals;
    HeatMatrix sigma = HeatMatrix::Zero(n, k);
    HeatMatrix delta = HeatMatrix::Zero(m, k);
    const int transfers = std::max({shape.transfers, n, m});
    for (int e = 0; e < transfers; ++e) {
        const int i = e < n ? e : static_cast<int>(engine() % n);
        const int j = e < m ? e : static_cast<int>(engine() % m);
        int s = static_cast<int>(engine() % k);
        int t = static_cast<int>(engine() % k);
        if (s > t) std::swap(s, t);
        const Heat x = 1 + static_cast<Heat>(engine() % static_cast<std::uint64_t>(shape.max_heat));
        sigma(i, s) += x;
        delta(j, t) += x;
    }
    MatchesInstance out(sigma, delta);
    out.name = "random_" + std::to_string(seed);
    out.provenance = {{"generator", "random_matches"},
                      {"seed", std::to_string(seed)},
                      {"shape", std::to_string(n) + "x" + std::to_string(m) + "x" + std::to_string(k)},
                      {"prng", "mt19937_64"}};
    return out;
}

BinPackingReduction reduce_bin_packing(const std::vector<Heat>& sizes, int bin_count, Heat capacity)
{
    if (sizes.empty() || bin_count < 1 || capacity < 1) throw std::invalid_argument("reduce_bin_packing: empty input");
    Heat total = 0;
    for (Heat s : sizes) {
        if (s < 1) throw std::invalid_argument("reduce_bin_packing: item sizes must be positive");
        if (s > capacity) throw std::invalid_argument("reduce_bin_packing: item larger than the bin capacity");
        total += s;
    }
    const Heat room = static_cast<Heat>(bin_count) * capacity;
    if (total > room) throw std::invalid_argument("reduce_bin_packing: items exceed the total bin capacity");
    BinPackingReduction out;
    out.items = static_cast<int>(sizes.size());
    out.fillers = static_cast<int>(room - total);
    const int n = out.items + out.fillers;
    HeatMatrix sigma(n, 1);
    HeatMatrix delta(bin_count, 1);
    for (int i = 0; i < n; ++i) sigma(i, 0) = i < out.items ? sizes[static_cast<std::size_t>(i)] : 1;
    for (int j = 0; j < bin_count; ++j) delta(j, 0) = capacity;
    out.instance = MatchesInstance(sigma, delta);
    out.instance.provenance = {{"generator", "bin_packing"},
                               {"bins", std::to_string(bin_count)},
                               {"capacity", std::to_string(capacity)},
                               {"fillers", std::to_string(out.fillers)}};
    return out;
}

}  // namespace heatmatch
