#pragma once

#include "heatmatch/core_model.hpp"
#include "heatmatch/single_interval.hpp"

#include <string>
#include <vector>

namespace heatmatch {

enum class SingleIntervalEngine { greedy, exact };

std::string to_string(SingleIntervalEngine engine);

struct WaterFillOptions {
    SingleIntervalEngine engine = SingleIntervalEngine::greedy;
    // Smaller node limit than a standalone exact_bins call; an interval that exceeds it is solved greedily.
    ExactBinsOptions exact{24, 2'000'000};
};

struct WaterFillResult {
    Solution solution;
    std::vector<int> fallback_intervals;  // exact engine gave up here and greedy was used
};

// Top-down sweep: reuse existing matches, solve the interval, pass unused hot heat down.
WaterFillResult water_fill(const MatchesInstance& inst, WaterFillOptions options = {});

}  // namespace heatmatch
