#include "heatmatch/types.hpp"

#include <cmath>
#include <cstdlib>

namespace heatmatch {

void HeatTensor::add(int hot, int s, int cold, int t, Heat heat)
{
    if (heat == 0) return;
    auto& slot = entries_[{hot, s, cold, t}];
    slot += heat;
    if (slot < 0) throw InvariantError("negative heat in tensor");
    if (slot == 0) entries_.erase({hot, s, cold, t});
}

void HeatTensor::add(const HeatTensor& other)
{
    for (const auto& [key, heat] : other.entries_) add(key[0], key[1], key[2], key[3], heat);
}

Heat HeatTensor::at(int hot, int s, int cold, int t) const
{
    auto it = entries_.find({hot, s, cold, t});
    return it == entries_.end() ? 0 : it->second;
}

Heat HeatTensor::total() const
{
    Heat sum = 0;
    for (const auto& entry : entries_) sum += entry.second;
    return sum;
}

std::vector<HeatFlow> HeatTensor::flows() const
{
    std::vector<HeatFlow> out;
    out.reserve(entries_.size());
    for (const auto& [key, heat] : entries_) out.push_back({key[0], key[1], key[2], key[3], heat});
    return out;
}

HeatMatrix HeatTensor::pair_totals(int n, int m) const
{
    HeatMatrix totals = HeatMatrix::Zero(n, m);
    for (const auto& [key, heat] : entries_) totals(key[0], key[2]) += heat;
    return totals;
}

MatchSet HeatTensor::support() const
{
    MatchSet out;
    for (const auto& entry : entries_) out.insert({entry.first[0], entry.first[2]});
    return out;
}

Solution Solution::from_heat(HeatTensor q)
{
    Solution sol;
    sol.matches = q.support();
    sol.q = std::move(q);
    return sol;
}

Heat pow10(int exponent)
{
    Heat v = 1;
    for (int e = 0; e < exponent; ++e) v *= 10;
    return v;
}

std::string format_scaled(Heat units, int scale)
{
    const bool negative = units < 0;
    std::string digits = std::to_string(negative ? -units : units);
    if (scale > 0) {
        if (static_cast<int>(digits.size()) <= scale) digits.insert(0, scale + 1 - digits.size(), '0');
        digits.insert(digits.size() - scale, ".");
        while (digits.back() == '0') digits.pop_back();
        if (digits.back() == '.') digits.pop_back();
    }
    return negative ? "-" + digits : digits;
}

int decimal_places(double x, int cap)
{
    double scaled = x;
    for (int d = 0; d < cap; ++d) {
        if (std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, std::abs(scaled))) return d;
        scaled *= 10.0;
    }
    return cap;
}

}  // namespace heatmatch
