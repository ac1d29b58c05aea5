#pragma once

#include "heatmatch/core_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace heatmatch {

// Random network in the style of the 160-stream benchmark. The PRNG is std::mt19937_64,
// whose output sequence the C++ standard fixes, so a seed reproduces on every platform.
// Temperatures and FCp are whole cents: each draw is `lo + engine() % span`.
NetworkDesignInstance generate_large_scale(std::uint64_t seed, int hot_count = 80, int cold_count = 80);

enum class Family { sg, ig, wf, flpr };

std::string to_string(Family family);
Family parse_family(const std::string& text);

// Adversarial instances for SG, IG, the water-filling heuristics and FLPR. `size` is n, except
// for wf where it is the interval count k.
MatchesInstance generate_tightness_family(Family family, int size);

struct RandomShape {
    int hot = 4;
    int cold = 4;
    int intervals = 3;
    int transfers = 10;  // raised to max(hot, cold) so every stream carries heat
    Heat max_heat = 9;
};

// Feasible by construction: heat is laid down as transfers from an interval to the same or a lower one.
MatchesInstance generate_random_matches(std::uint64_t seed, RandomShape shape = {});

struct BinPackingReduction {
    MatchesInstance instance;  // single interval
    int items = 0;
    int fillers = 0;  // unit hot streams absorbing unused capacity
    // The exact optimum equals this value iff the items fit into the bins.
    int packing_optimum() const { return items + fillers; }
};

// Items become hot streams and bins become cold streams of load `capacity`.
BinPackingReduction reduce_bin_packing(const std::vector<Heat>& sizes, int bin_count, Heat capacity);

}  // namespace heatmatch
