#pragma once

#include "heatmatch/core_model.hpp"
#include "heatmatch/maxheat.hpp"
#include "heatmatch/relaxation_rounding.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heatmatch {

enum class Heuristic { flpr, lrr, crr, wfg, wfm, lhm, lfm, lhm_lp, ss };

const std::vector<Heuristic>& all_heuristics();
std::string to_string(Heuristic heuristic);
Heuristic parse_heuristic(const std::string& text);  // case-insensitive
// Comma-separated names, or "all".
std::vector<Heuristic> parse_heuristic_list(const std::string& text);

struct RunConfig {
    BigMMethod bigm = BigMMethod::mhg;
    Heat epsilon = 1;  // lhm_lp stopping precision in scaled heat units
    CostPolicy lrr_policy = CostPolicy::existing;
    bool lfm_lp = false;
    int exact_small = 0;  // compute the exact optimum when n*m is at most this; 0 disables
};

struct HeuristicRun {
    Heuristic heuristic = Heuristic::flpr;
    Solution solution;
    double millis = 0;
    std::optional<double> filling_ratio;  // flpr
    std::optional<int> iterations;        // crr rounds, lhm_lp additions
    std::vector<int> fallback_intervals;  // wfm
};

// Runs one heuristic and verifies its output; an infeasible output throws InvariantError.
HeuristicRun run_heuristic(const MatchesInstance& inst, Heuristic heuristic, const RunConfig& config);

// Fewest matches by enumerating pair subsets of increasing size, or exact_bins on one interval.
// nullopt when n*m exceeds `max_pairs` (single intervals are limited by the exact_bins stream cap).
std::optional<int> exact_small(const MatchesInstance& inst, int max_pairs);

struct SolveReport {
    std::string instance;
    int n = 0;
    int m = 0;
    int k = 0;
    RunConfig config;
    std::vector<HeuristicRun> runs;
    std::optional<int> exact;
    std::optional<std::uint64_t> seed;  // echoed into the report
};

SolveReport solve(const MatchesInstance& inst, const std::vector<Heuristic>& heuristics, const RunConfig& config);

enum class Format { table, json, csv };
Format parse_format(const std::string& text);

std::string render(const SolveReport& report, const MatchesInstance& inst, Format format);

struct BenchRow {
    std::string instance;
    std::string heuristic;
    std::string status = "ok";  // or the error that stopped this instance
    int matches = 0;
    double millis = 0;
    std::optional<int> best_known;
    std::optional<double> ratio;  // matches / best_known
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string csv() const;
    std::string json() const;
    std::string table() const;
    // Per heuristic: count, min, q1, median, q3, max of the ratio column.
    std::string boxplot_csv() const;
};

// Instance name -> known optimum, from "instance,value" lines.
std::map<std::string, int> load_reference(const std::filesystem::path& path);

// Every *.json file in `dir`, in path order. Jobs run on HEATMATCH_THREADS workers.
BenchReport bench(const std::filesystem::path& dir, const std::vector<Heuristic>& heuristics,
                  const RunConfig& config, const std::map<std::string, int>& reference = {});

}  // namespace heatmatch
