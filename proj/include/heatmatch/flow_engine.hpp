#pragma once

#include "heatmatch/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace heatmatch {

using Flow = std::int64_t;

// Capacity treated as infinite. Large enough for any heat total, small enough to add safely.
inline constexpr Flow kUnbounded = Flow{1} << 60;

// Signed fixed-point cost with 80 fractional bits, used for reciprocal costs such as 1/U.
// Equal rationals map to equal values, so cost ties stay exact ties.
class FixedPointCost {
public:
    static constexpr int kFractionBits = 80;

    constexpr FixedPointCost() = default;
    constexpr explicit FixedPointCost(__int128 raw) : raw_(raw) {}

    // num/den rounded to the nearest representable value. Requires den > 0 and |num| < 2^46.
    static FixedPointCost ratio(std::int64_t num, std::int64_t den);
    static FixedPointCost integer(std::int64_t value);

    __int128 raw() const { return raw_; }
    long double value() const;

    FixedPointCost operator+(FixedPointCost o) const { return FixedPointCost(raw_ + o.raw_); }
    FixedPointCost operator-(FixedPointCost o) const { return FixedPointCost(raw_ - o.raw_); }
    FixedPointCost operator-() const { return FixedPointCost(-raw_); }
    FixedPointCost& operator+=(FixedPointCost o) { raw_ += o.raw_; return *this; }
    FixedPointCost& operator-=(FixedPointCost o) { raw_ -= o.raw_; return *this; }
    auto operator<=>(const FixedPointCost&) const = default;

private:
    __int128 raw_ = 0;
};

template <class Cost>
struct Arc {
    int tail = 0;
    int head = 0;
    Flow capacity = 0;
    Cost cost{};
};

// Nodes carry a supply (positive) or demand (negative). Arc order is significant for tie-breaking.
template <class Cost>
class FlowNetwork {
public:
    int add_node(Flow supply = 0, std::string label = {});
    int add_arc(int tail, int head, Flow capacity, Cost cost = Cost{});
    void set_supply(int node, Flow supply);

    int node_count() const { return static_cast<int>(supply_.size()); }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const Arc<Cost>& arc(int index) const { return arcs_[index]; }
    Flow supply(int node) const { return supply_[node]; }
    const std::string& label(int node) const { return labels_[node]; }

    std::string to_dot() const;

private:
    std::vector<Arc<Cost>> arcs_;
    std::vector<Flow> supply_;
    std::vector<std::string> labels_;
};

template <class Cost>
struct FlowResult {
    std::vector<Flow> flow;       // per arc
    Flow value = 0;               // total flow shipped
    long double objective = 0;    // sum of flow * cost
    std::vector<Cost> potential;  // per node; empty for max_flow
    std::vector<char> source_side;  // min-cut side for max_flow, residual reachability otherwise
};

// Successive shortest paths with potentials; augments along all shortest paths per phase.
// Throws InfeasibleError naming a saturated cut if the supplies cannot be routed.
template <class Cost>
FlowResult<Cost> min_cost_flow(const FlowNetwork<Cost>& net);

// Dinic. Supplies and costs are ignored.
template <class Cost>
FlowResult<Cost> max_flow(const FlowNetwork<Cost>& net, int source, int sink);

// Reduced costs of every residual arc are non-negative under result.potential.
template <class Cost>
bool certifies_optimality(const FlowNetwork<Cost>& net, const FlowResult<Cost>& result);

// When non-empty, every solve writes its network as DOT into this directory.
void set_dot_dump_directory(std::string directory);

}  // namespace heatmatch
