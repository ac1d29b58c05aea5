#pragma once

#include "heatmatch/core_model.hpp"
#include "heatmatch/maxheat.hpp"

#include <cstdint>

namespace heatmatch {

using RealMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct FractionalSolution {
    HeatTensor q;
    HeatMatrix pair_heat;  // L_{i,j}
    RealMatrix y;          // fractional match variables
    long double objective = 0;
};

// Cost per heat unit of a pair. den == 0 forbids the pair.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct CostVector {
    int n = 0;
    int m = 0;
    std::vector<Ratio> lambda;  // row-major

    CostVector() = default;
    CostVector(int rows, int cols, Ratio fill = {}) : n(rows), m(cols), lambda(static_cast<std::size_t>(rows) * cols, fill) {}
    Ratio& operator()(int i, int j) { return lambda[static_cast<std::size_t>(i) * m + j]; }
    const Ratio& operator()(int i, int j) const { return lambda[static_cast<std::size_t>(i) * m + j]; }
};

// Minimum sum of lambda * q over all heat-conserving, descending q. y_{i,j} = lambda_{i,j} L_{i,j}.
FractionalSolution cost_lp(const MatchesInstance& inst, const CostVector& costs);

// Fractional relaxation of the transportation model: cost_lp with lambda = 1/U; pairs with U = 0 are closed.
FractionalSolution fractional_lp(const MatchesInstance& inst, const BigMTable& bigm);

struct RoundedSolution {
    Solution solution;
    FractionalSolution fractional;
    long double filling_ratio = 1;  // min over used pairs of L/U
};

// Every pair that carries heat in the fractional optimum becomes a match.
RoundedSolution flpr(const MatchesInstance& inst, const BigMTable& bigm);

enum class CostPolicy {
    max_heat,       // 1/U, the same as flpr
    stream_bounds,  // 1/h_i; every feasible q has the same cost
    existing,       // 1/L on the seed's matches, 1/U elsewhere
};

std::string to_string(CostPolicy policy);
CostPolicy parse_cost_policy(const std::string& text);

struct LrrOptions {
    CostPolicy policy = CostPolicy::existing;
    const Solution* seed = nullptr;  // defaults to the flpr solution
};

// Rounds the cost_lp optimum for the policy's costs and keeps the better of it and the seed.
Solution lrr(const MatchesInstance& inst, const BigMTable& bigm, LrrOptions options = {});

struct CoverResult {
    MatchSet matches;
    bool optimal = true;
    std::int64_t nodes = 0;
};

struct CoverOptions {
    std::int64_t node_limit = 2'000'000;
};

// Fewest pairs whose bounds cover every stream's total heat. Throws InfeasibleError naming an uncoverable stream.
CoverResult cover_milp(const MatchesInstance& inst, const BigMTable& bigm, CoverOptions options = {});

struct CrrResult {
    Solution solution;
    int iterations = 0;
    int first_cover = 0;
    bool covers_optimal = true;
};

// Repeats: cover the residual, add the cover to M, route the most heat through M.
CrrResult crr(const MatchesInstance& inst, BigMMethod method, CoverOptions options = {});

}  // namespace heatmatch
