#pragma once

#include "heatmatch/types.hpp"

#include <cstdint>
#include <vector>

namespace heatmatch {

struct SingleIntervalInstance {
    HeatVector hot;
    HeatVector cold;
    // Without conservation the hot side may exceed the cold side; leftover hot heat is unused.
    bool conservation = true;

    int n() const { return static_cast<int>(hot.size()); }
    int m() const { return static_cast<int>(cold.size()); }
    void validate() const;
};

struct SingleIntervalSolution {
    HeatMatrix heat;  // n x m
    MatchSet matches;

    int match_count() const { return static_cast<int>(matches.size()); }
    void add(int i, int j, Heat x);
};

// Sorted greedy: both sides in non-increasing order, each transfer exhausts one of the two streams.
SingleIntervalSolution sg(const SingleIntervalInstance& inst);

// Pairs equal hot and cold loads first, then runs sg on the rest.
SingleIntervalSolution ig(const SingleIntervalInstance& inst);

struct BinAssignment {
    std::vector<int> hot_bin;   // -1 for a hot stream left out (no-conservation only)
    std::vector<int> cold_bin;
    int bins = 0;
};

struct ExactBinsOptions {
    int max_streams = 24;
    std::int64_t node_limit = 50'000'000;
};

struct ExactBinsResult {
    BinAssignment assignment;
    SingleIntervalSolution solution;
    std::int64_t nodes = 0;
};

// Optimal bin decomposition by branch-and-bound. Throws SizeLimitError past the stream cap or node limit.
ExactBinsResult exact_bins(const SingleIntervalInstance& inst, ExactBinsOptions options = {});

struct ForestCheck {
    bool is_forest = true;
    int trees = 0;          // connected components of the match graph, isolated streams included
    bool count_identity = true;  // matches == n + m - trees
};

ForestCheck forest_check(int n, int m, const MatchSet& matches);

}  // namespace heatmatch
