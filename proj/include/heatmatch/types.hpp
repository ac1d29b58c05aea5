#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heatmatch {

// Heats are stored as integers in units of 10^-scale (see MatchesInstance::scale).
using Heat = std::int64_t;
using HeatMatrix = Eigen::Matrix<Heat, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using HeatVector = Eigen::Matrix<Heat, Eigen::Dynamic, 1>;

// Instance has no feasible solution (conservation or residual conditions fail).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal guarantee was violated. Always a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Exact search refused because the input is beyond its configured size.
class SizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Match {
    int hot = 0;
    int cold = 0;
    auto operator<=>(const Match&) const = default;
};

using MatchSet = std::set<Match>;

struct HeatFlow {
    int hot = 0;
    int hot_interval = 0;
    int cold = 0;
    int cold_interval = 0;
    Heat heat = 0;
};

// Sparse q_{i,s,j,t}. Entries are kept strictly positive.
class HeatTensor {
public:
    void add(int hot, int s, int cold, int t, Heat heat);
    void add(const HeatTensor& other);

    Heat at(int hot, int s, int cold, int t) const;
    Heat total() const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    std::vector<HeatFlow> flows() const;
    HeatMatrix pair_totals(int n, int m) const;
    MatchSet support() const;

    bool operator==(const HeatTensor&) const = default;

private:
    std::map<std::array<int, 4>, Heat> entries_;
};

struct Solution {
    MatchSet matches;
    HeatTensor q;

    // Matches are exactly the pairs carrying positive heat.
    static Solution from_heat(HeatTensor q);
    int match_count() const { return static_cast<int>(matches.size()); }
};

// Exact decimal rendering of a scaled integer, e.g. (12345, 2) -> "123.45".
std::string format_scaled(Heat units, int scale);

// Smallest number of decimal places (<= cap) that represents x exactly.
int decimal_places(double x, int cap = 6);

Heat pow10(int exponent);

}  // namespace heatmatch
