#pragma once

#include "heatmatch/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace heatmatch {

enum class StreamKind { hot, cold };

using Provenance = std::map<std::string, std::string>;

struct ProcessStream {
    StreamKind kind = StreamKind::hot;
    double t_in = 0;
    double t_out = 0;
    double fcp = 0;
    std::string name;

    void validate() const;
    bool operator==(const ProcessStream&) const = default;
};

struct Utility {
    StreamKind kind = StreamKind::hot;
    double t_in = 0;
    double t_out = 0;
    double unit_cost = 0;
    std::string name;

    void validate() const;
    bool operator==(const Utility&) const = default;
};

struct NetworkDesignInstance {
    std::vector<ProcessStream> hot_streams;
    std::vector<ProcessStream> cold_streams;
    std::vector<Utility> hot_utilities;
    std::vector<Utility> cold_utilities;
    double dt_min = 0;
    std::string name;
    Provenance provenance;

    void validate() const;
    bool operator==(const NetworkDesignInstance&) const = default;
};

// R_u for u = 1..k (0-based here): heat that must descend below interval u.
struct ResidualProfile {
    std::vector<Heat> r;

    static ResidualProfile of(const HeatMatrix& sigma, const HeatMatrix& delta);
    // R_u >= 0 for u < k and R_k == 0.
    bool feasible() const;
    Heat min_before(int s, int t) const;  // min R_u over s <= u < t
};

class MatchesInstance {
public:
    MatchesInstance() = default;
    // Heats are integers in units of 10^-scale. Entries must be non-negative.
    MatchesInstance(HeatMatrix sigma, HeatMatrix delta, int scale = 0);

    // Chooses the scale from the decimals present (at most 6).
    static MatchesInstance from_decimal(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& delta);

    int n() const { return static_cast<int>(sigma_.rows()); }
    int m() const { return static_cast<int>(delta_.rows()); }
    int k() const { return static_cast<int>(sigma_.cols()); }
    int scale() const { return scale_; }

    const HeatMatrix& sigma() const { return sigma_; }
    const HeatMatrix& delta() const { return delta_; }
    Heat sigma(int i, int s) const { return sigma_(i, s); }
    Heat delta(int j, int t) const { return delta_(j, t); }

    Heat hot_total(int i) const { return sigma_.row(i).sum(); }
    Heat cold_total(int j) const { return delta_.row(j).sum(); }
    HeatVector hot_totals() const { return sigma_.rowwise().sum(); }
    HeatVector cold_totals() const { return delta_.rowwise().sum(); }
    Heat total_supply() const { return sigma_.sum(); }
    Heat total_demand() const { return delta_.sum(); }

    double to_double(Heat units) const;
    Eigen::MatrixXd sigma_values() const;
    Eigen::MatrixXd delta_values() const;

    ResidualProfile residuals() const { return ResidualProfile::of(sigma_, delta_); }
    bool is_feasible() const { return residuals().feasible(); }
    // Throws InfeasibleError describing the first violated condition.
    void require_feasible() const;

    // Same names and scale, different heats.
    MatchesInstance with_heats(HeatMatrix sigma, HeatMatrix delta) const;
    // Instance left after removing the heat carried by q.
    MatchesInstance minus(const HeatTensor& q) const;
    // Drops streams with zero total heat; kept indices are reported when requested.
    MatchesInstance without_empty_streams(std::vector<int>* kept_hot = nullptr,
                                          std::vector<int>* kept_cold = nullptr) const;

    const std::vector<std::string>& hot_names() const { return hot_names_; }
    const std::vector<std::string>& cold_names() const { return cold_names_; }
    void set_names(std::vector<std::string> hot, std::vector<std::string> cold);

    std::string name;
    Provenance provenance;

    bool operator==(const MatchesInstance& o) const;

private:
    HeatMatrix sigma_;
    HeatMatrix delta_;
    int scale_ = 0;
    std::vector<std::string> hot_names_;
    std::vector<std::string> cold_names_;
};

struct PartitionOptions {
    // Also cut at every outlet temperature (a finer, problem-table style partition).
    bool include_outlets = false;
};

struct TemperaturePartition {
    std::vector<double> boundaries;  // hot-side temperatures, strictly decreasing, size k+1
    int scale = 0;                   // heats in units of 10^-scale
    HeatMatrix hot;                  // process hot streams, n x k
    HeatMatrix cold;                 // process cold streams, m x k
    std::vector<std::vector<int>> hot_utility_intervals;
    std::vector<std::vector<int>> cold_utility_intervals;

    int k() const { return static_cast<int>(boundaries.size()) - 1; }
};

TemperaturePartition partition_temperature_intervals(const NetworkDesignInstance& inst,
                                                     PartitionOptions options = {});

struct UtilitySolution {
    TemperaturePartition partition;
    HeatMatrix hot_utility_load;   // per hot utility, per interval
    HeatMatrix cold_utility_load;  // per cold utility, per interval
    std::vector<Heat> residual;    // size k+1: heat entering interval t from above; first and last are 0
    long double total_cost = 0;
};

UtilitySolution solve_min_utility_cost(const NetworkDesignInstance& inst, PartitionOptions options = {});

MatchesInstance to_matches_instance(const NetworkDesignInstance& inst, const UtilitySolution& utilities);

// Partition, minimum utility cost and conversion in one call.
MatchesInstance derive_matches_instance(const NetworkDesignInstance& inst, PartitionOptions options = {});

struct Violation {
    std::string kind;  // shape, thermodynamic, hot_balance, cold_balance, match_without_heat, heat_without_match
    int count = 0;
    double worst = 0;  // heat units
    std::string where;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;

    double worst() const;
    std::string summary() const;
};

FeasibilityReport verify_solution(const MatchesInstance& inst, const Solution& sol);

}  // namespace heatmatch
