#pragma once

#include "heatmatch/core_model.hpp"
#include "heatmatch/maxheat.hpp"

#include <map>
#include <string>
#include <vector>

namespace heatmatch {

enum class ModelKind {
    transportation_full,
    transportation_reduced,
    transshipment,
    single_interval_bins,
    single_interval_bins_nocons,
    covering,
};

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);
bool needs_big_m(ModelKind kind);

// Exact decimal units * 10^-scale.
struct Decimal {
    Heat units = 0;
    int scale = 0;
    bool operator==(const Decimal&) const = default;
};

enum class VarType { continuous, binary };
enum class RowSense { le, ge, eq };

struct Term {
    int var = 0;
    Decimal coef{1, 0};
};

struct Variable {
    std::string name;
    VarType type = VarType::continuous;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    RowSense sense = RowSense::eq;
    Decimal rhs;
};

// Variables are indexed from 1 in names: y_i_j, q_i_s_j_t, q_i_j_t, r_i_s, x_b, w_i_b, z_j_b.
struct LinearModel {
    std::string title;
    std::vector<std::string> notes;  // written as LP comments
    bool minimize = true;
    std::vector<Term> objective;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;

    int add_variable(std::string name, VarType type);
    int find(const std::string& name) const;  // -1 when absent
    int binary_count() const;
    int continuous_count() const;
    int constraint_count() const { return static_cast<int>(constraints.size()); }

    // CPLEX LP text. Output depends only on the model, so equal inputs give equal bytes.
    std::string to_lp() const;
};

struct ModelCounts {
    long binaries = 0;
    long continuous = 0;
    long constraints = 0;
    bool operator==(const ModelCounts&) const = default;
};

// Closed-form sizes of the multi-interval models and the covering model.
ModelCounts analytic_counts(ModelKind kind, long n, long m, long k);

// Single-interval kinds need k == 1. `bigm` is required when needs_big_m(kind).
LinearModel build_model(const MatchesInstance& inst, ModelKind kind, const BigMTable* bigm = nullptr);
std::string export_model(const MatchesInstance& inst, ModelKind kind, const BigMTable* bigm = nullptr);

using Assignment = std::map<std::string, Decimal>;  // absent variables are 0

// Names of constraints (and "bounds:<var>", "binary:<var>") that the assignment violates, checked exactly.
std::vector<std::string> violated(const LinearModel& model, const Assignment& values);

// A heuristic solution written in the variables of each model.
Assignment transportation_assignment(const MatchesInstance& inst, const Solution& sol);
Assignment transshipment_assignment(const MatchesInstance& inst, const Solution& sol);

}  // namespace heatmatch
