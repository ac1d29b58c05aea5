#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heatmatch/generators.hpp"
#include "heatmatch/greedy_packing.hpp"
#include "heatmatch/milp_export.hpp"
#include "heatmatch/single_interval.hpp"
#include "heatmatch/water_filling.hpp"
#include "support/golden_models.hpp"
#include "support/instances.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace heatmatch;

namespace {

const ModelKind kMulti[] = {ModelKind::transportation_full, ModelKind::transportation_reduced,
                            ModelKind::transshipment, ModelKind::covering};

struct ParsedCounts {
    std::set<std::string> continuous;
    std::set<std::string> binaries;
    std::set<std::string> used;  // every variable named in the objective or a constraint
    long rows = 0;
};

// Reads back the section structure of an LP file.
ParsedCounts parse_lp(const std::string& text)
{
    ParsedCounts out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line[0] != ' ') {
            section = line;
            continue;
        }
        std::istringstream words(line);
        std::string w;
        bool first = true;
        while (words >> w) {
            const bool is_name = std::isalpha(static_cast<unsigned char>(w[0])) && w.back() != ':';
            if (section == "Subject To" && first && w.back() == ':') ++out.rows;
            if (section == "Bounds" && first) out.continuous.insert(w);
            if (section == "Binaries") out.binaries.insert(w);
            if ((section == "Subject To" || section == "Minimize" || section == "Maximize") && is_name) out.used.insert(w);
            first = false;
        }
    }
    return out;
}

Assignment bins_assignment(const ExactBinsResult& result)
{
    Assignment out;
    const auto& a = result.assignment;
    for (int b = 0; b < a.bins; ++b) out["x_" + std::to_string(b + 1)] = {1, 0};
    for (std::size_t i = 0; i < a.hot_bin.size(); ++i)
        if (a.hot_bin[i] >= 0) out["w_" + std::to_string(i + 1) + "_" + std::to_string(a.hot_bin[i] + 1)] = {1, 0};
    for (std::size_t j = 0; j < a.cold_bin.size(); ++j)
        out["z_" + std::to_string(j + 1) + "_" + std::to_string(a.cold_bin[j] + 1)] = {1, 0};
    return out;
}

long objective_value(const LinearModel& model, const Assignment& values)
{
    long out = 0;
    for (const auto& t : model.objective) {
        const auto it = values.find(model.variables[t.var].name);
        if (it != values.end()) out += t.coef.units * it->second.units;
    }
    return out;
}

}  // namespace

TEST_CASE("one by one transshipment")
{
    HeatMatrix one(1, 1);
    one << 7;
    const MatchesInstance inst(one, one);
    const auto bigm = big_m_table(inst, BigMMethod::mhg);
    const auto model = build_model(inst, ModelKind::transshipment, &bigm);
    CHECK(model.binary_count() == 1);
    CHECK(model.continuous_count() == 2);
    CHECK(model.find("q_1_1_1") >= 0);
    const auto text = model.to_lp();
    CHECK(text.find(" rend_1: r_1_1 = 0\n") != std::string::npos);
    CHECK(text.find(" bigm_1_1: q_1_1_1 - 7 y_1_1 <= 0\n") != std::string::npos);
}

TEST_CASE("sizes follow the closed forms and survive a text round trip")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 4, 10, 7});
        const auto bigm = big_m_table(inst, BigMMethod::trivial);
        for (auto kind : kMulti) {
            CAPTURE(to_string(kind));
            const auto model = build_model(inst, kind, &bigm);
            const auto expected = analytic_counts(kind, inst.n(), inst.m(), inst.k());
            CHECK(ModelCounts{model.binary_count(), model.continuous_count(), model.constraint_count()} == expected);
            const auto parsed = parse_lp(model.to_lp());
            CHECK(static_cast<long>(parsed.binaries.size()) == expected.binaries);
            CHECK(static_cast<long>(parsed.continuous.size()) == expected.continuous);
            CHECK(parsed.rows == expected.constraints);
            CHECK(parsed.used.size() == parsed.binaries.size() + parsed.continuous.size());
        }
    }
    const auto single = oracle::golden_single();
    for (auto kind : {ModelKind::single_interval_bins, ModelKind::single_interval_bins_nocons}) {
        const auto model = build_model(single, kind);
        CHECK(ModelCounts{model.binary_count(), model.continuous_count(), model.constraint_count()} ==
              analytic_counts(kind, 3, 2, 1));
        const auto parsed = parse_lp(model.to_lp());
        CHECK(parsed.rows == model.constraint_count());
    }
}

TEST_CASE("transshipment binaries equal n*m at the 5x6x9 shape")
{
    const auto inst = generate_random_matches(1, {5, 6, 9, 30, 50});
    const auto bigm = big_m_table(inst, BigMMethod::mhg);
    const auto model = build_model(inst, ModelKind::transshipment, &bigm);
    CHECK(model.binary_count() == 30);
    CHECK(model.continuous_count() == 5 * 6 * 9 + 5 * 9);
    CHECK(model.constraint_count() == 5 * 9 + 5 + 6 * 9 + 30);
}

TEST_CASE("reduced transportation is smaller than full")
{
    const auto inst = oracle::golden_multi();
    const auto bigm = big_m_table(inst, BigMMethod::trivial);
    const auto full = build_model(inst, ModelKind::transportation_full, &bigm);
    const auto reduced = build_model(inst, ModelKind::transportation_reduced, &bigm);
    CHECK(reduced.continuous_count() < full.continuous_count());
    CHECK(reduced.constraint_count() < full.constraint_count());
    CHECK(full.find("q_1_2_1_1") >= 0);
    CHECK(reduced.find("q_1_2_1_1") < 0);
}

TEST_CASE("heuristic solutions satisfy the exported models")
{
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = oracle::random_feasible(rng, {4, 4, 4, 10, 7});
        CAPTURE(trial);
        for (auto method : {BigMMethod::trivial, BigMMethod::mhg}) {
            const auto bigm = big_m_table(inst, method);
            for (const auto& sol : {lhm(inst), water_fill(inst).solution, lhm_lp(inst).solution}) {
                const auto t = transportation_assignment(inst, sol);
                CHECK(violated(build_model(inst, ModelKind::transportation_full, &bigm), t).empty());
                CHECK(violated(build_model(inst, ModelKind::transportation_reduced, &bigm), t).empty());
                const auto model = build_model(inst, ModelKind::transshipment, &bigm);
                const auto s = transshipment_assignment(inst, sol);
                CHECK(violated(model, s).empty());
                CHECK(objective_value(model, s) == sol.match_count());
            }
        }
    }
}

TEST_CASE("the checker catches broken assignments")
{
    const auto inst = oracle::golden_multi();
    const auto bigm = big_m_table(inst, BigMMethod::mhg);
    const auto sol = lhm(inst);
    const auto model = build_model(inst, ModelKind::transportation_reduced, &bigm);
    auto values = transportation_assignment(inst, sol);
    values.erase(values.find("y_" + std::to_string(sol.matches.begin()->hot + 1) + "_" +
                             std::to_string(sol.matches.begin()->cold + 1)));
    CHECK(!violated(model, values).empty());
    values = transportation_assignment(inst, sol);
    values["y_1_1"] = {5, 1};
    const auto broken = violated(model, values);
    CHECK(std::find(broken.begin(), broken.end(), "binary:y_1_1") != broken.end());
    CHECK_THROWS_AS(violated(model, {{"nope", {1, 0}}}), std::invalid_argument);
}

TEST_CASE("bin models accept the exact decomposition")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = oracle::random_feasible(rng, {5, 5, 1, 8, 9}).without_empty_streams();
        CAPTURE(trial);
        SingleIntervalInstance loads{inst.sigma().col(0), inst.delta().col(0)};
        const auto model = build_model(inst, ModelKind::single_interval_bins);
        const auto exact = exact_bins(loads);
        const auto values = bins_assignment(exact);
        CHECK(violated(model, values).empty());
        CHECK(inst.n() + inst.m() - objective_value(model, values) == exact.solution.match_count());

        // The same partition satisfies the no-conservation model, whose objective counts matches minus m.
        const auto nocons = build_model(inst, ModelKind::single_interval_bins_nocons);
        CHECK(violated(nocons, values).empty());
        CHECK(objective_value(nocons, values) + inst.m() == exact.solution.match_count());
    }
}

TEST_CASE("argument checks")
{
    const auto inst = oracle::golden_multi();
    CHECK_THROWS_AS(build_model(inst, ModelKind::transshipment), std::invalid_argument);
    CHECK_THROWS_AS(build_model(inst, ModelKind::single_interval_bins), std::invalid_argument);
    for (auto kind : {ModelKind::transportation_full, ModelKind::transportation_reduced, ModelKind::transshipment,
                      ModelKind::single_interval_bins, ModelKind::single_interval_bins_nocons, ModelKind::covering})
        CHECK(parse_model_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_model_kind("mps"), std::invalid_argument);
}

TEST_CASE("golden files are byte stable")
{
    const std::filesystem::path dir = HEATMATCH_GOLDEN_DIR;
    const bool update = std::getenv("HEATMATCH_UPDATE_GOLDEN") != nullptr;
    const auto first = oracle::golden_exports();
    CHECK(first == oracle::golden_exports());
    for (const auto& [name, text] : first) {
        CAPTURE(name);
        const auto path = dir / name;
        if (update) std::ofstream(path, std::ios::binary) << text;
        std::ifstream in(path, std::ios::binary);
        REQUIRE(in);
        std::stringstream golden;
        golden << in.rdbuf();
        CHECK(golden.str() == text);
    }
}
