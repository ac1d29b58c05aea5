#pragma once

#include "heatmatch/core_model.hpp"
#include "heatmatch/maxheat.hpp"

#include <vector>

namespace heatmatch {

struct LhmLpOptions {
    // Stop once the unrouted heat is below epsilon (scaled heat units). One unit means route everything.
    Heat epsilon = 1;
};

struct LhmLpResult {
    Solution solution;
    std::vector<Heat> trace;  // mhlp(M) after each added match
    Heat remaining = 0;
};

// Adds the pair that maximizes mhlp(M + pair) until the heat is routed. Ties go to the smallest (i, j).
LhmLpResult lhm_lp(const MatchesInstance& inst, LhmLpOptions options = {});

// Commits the pair with the largest mhg on the residual instance, one at a time.
Solution lhm(const MatchesInstance& inst);

struct LfmOptions {
    // Score candidates by the maximum-fraction LP over M + pair instead of the mhg shortcut.
    bool lp_scoring = false;
};

// Like lhm, scoring pairs by U'/h_i + U'/c_j with the original stream totals.
Solution lfm(const MatchesInstance& inst, LfmOptions options = {});

// Hot streams in non-decreasing total heat, each exhausted by its best mhg partner.
Solution ss(const MatchesInstance& inst);

struct FractionHeat {
    long double value = 0;  // sum of q (1/h_i + 1/c_j)
    HeatTensor q;
};

// Most stream fraction coverable by the pairs in `allowed` while leaving the rest feasible.
FractionHeat max_fraction_lp(const MatchesInstance& inst, const MatchSet& allowed);

}  // namespace heatmatch
