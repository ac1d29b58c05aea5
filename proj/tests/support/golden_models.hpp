#pragma once

// Instances behind the LP golden files in tests/data/golden.

#include "heatmatch/milp_export.hpp"

#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline heatmatch::MatchesInstance golden_multi()
{
    heatmatch::HeatMatrix sigma(2, 2);
    sigma << 150, 50, 0, 125;
    heatmatch::HeatMatrix delta(2, 2);
    delta << 100, 75, 0, 150;
    heatmatch::MatchesInstance inst(sigma, delta, 1);
    inst.name = "golden";
    return inst;
}

inline heatmatch::MatchesInstance golden_single()
{
    heatmatch::HeatMatrix sigma(3, 1);
    sigma << 3, 2, 5;
    heatmatch::HeatMatrix delta(2, 1);
    delta << 4, 6;
    heatmatch::MatchesInstance inst(sigma, delta);
    inst.name = "golden-single";
    return inst;
}

// (file name, LP text) for every golden model.
inline std::vector<std::pair<std::string, std::string>> golden_exports()
{
    using heatmatch::ModelKind;
    const auto multi = golden_multi();
    const auto single = golden_single();
    const auto bigm = heatmatch::big_m_table(multi, heatmatch::BigMMethod::mhg);
    const std::vector<std::pair<ModelKind, const heatmatch::MatchesInstance*>> cases{
        {ModelKind::transportation_full, &multi},   {ModelKind::transportation_reduced, &multi},
        {ModelKind::transshipment, &multi},         {ModelKind::covering, &multi},
        {ModelKind::single_interval_bins, &single}, {ModelKind::single_interval_bins_nocons, &single},
    };
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [kind, inst] : cases)
        out.emplace_back(to_string(kind) + ".lp",
                         heatmatch::export_model(*inst, kind, heatmatch::needs_big_m(kind) ? &bigm : nullptr));
    return out;
}

}  // namespace oracle
