#pragma once

#include "heatmatch/core_model.hpp"

#include <string>
#include <vector>

namespace heatmatch {

struct PairHeat {
    Heat value = 0;
    HeatTensor q;
};

// Greedy maximum heat between hot i and cold j that leaves the rest of the instance feasible.
PairHeat mhg(const MatchesInstance& inst, int hot, int cold);

enum class BigMMethod { trivial, mhg };

std::string to_string(BigMMethod method);
BigMMethod parse_big_m_method(const std::string& text);

struct BigMTable {
    HeatMatrix bound;  // U_{i,j}, n x m
    std::vector<BigMMethod> method;  // per entry, row-major

    Heat operator()(int i, int j) const { return bound(i, j); }
    BigMMethod method_at(int i, int j) const { return method[static_cast<std::size_t>(i * bound.cols() + j)]; }
    Heat max_entry() const { return bound.size() ? bound.maxCoeff() : 0; }
};

// Pairs are evaluated in parallel when HEATMATCH_THREADS allows.
BigMTable big_m_table(const MatchesInstance& inst, BigMMethod method);

struct SingleIntervalHeat {
    Heat value = 0;
    HeatMatrix pair_heat;  // n x m
};

// Single-interval maximum heat using only pairs in `allowed`; supply may exceed demand.
SingleIntervalHeat mhs(const HeatVector& hot_loads, const HeatVector& cold_loads, const MatchSet& allowed);

struct RestrictedHeat {
    Heat value = 0;
    HeatTensor q;
};

struct MhlpOptions {
    // With residual capacities the remaining instance is guaranteed feasible.
    // Without them the value is the plain transportation bound.
    bool residual_capacities = true;
};

// Multi-interval maximum heat using only pairs in `allowed`.
RestrictedHeat mhlp(const MatchesInstance& inst, const MatchSet& allowed, MhlpOptions options = {});

MatchSet all_pairs(int n, int m);

// Worker count from HEATMATCH_THREADS, defaulting to the hardware concurrency.
int worker_count();

}  // namespace heatmatch
