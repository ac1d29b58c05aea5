// heatmatch: run the minimum-matches heuristics, benchmark them, generate instances, export MILPs.

#include "heatmatch/bench.hpp"
#include "heatmatch/generators.hpp"
#include "heatmatch/instance_io.hpp"
#include "heatmatch/milp_export.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace heatmatch;

namespace {

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

MatchesInstance read_matches(const std::string& path, bool outlets)
{
    auto inst = load_instance(path).to_matches({outlets});
    if (inst.name.empty()) inst.name = std::filesystem::path(path).stem().string();
    return inst;
}

// Decimal heat to scaled units, at least one unit.
Heat epsilon_units(double epsilon, int scale)
{
    if (!(epsilon >= 0)) throw std::invalid_argument("--epsilon must be non-negative");
    const long double units = std::round(static_cast<long double>(epsilon) * static_cast<long double>(pow10(scale)));
    if (units > 4e18L) throw std::invalid_argument("--epsilon is too large");
    return std::max<Heat>(1, static_cast<Heat>(units));
}

std::vector<Heat> parse_sizes(const std::string& text)
{
    std::vector<Heat> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size() || v <= 0) throw std::invalid_argument("bad item size '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("--sizes is empty");
    return out;
}

std::string big_m_dump(const MatchesInstance& inst, const std::string& method, Format format)
{
    std::vector<BigMMethod> methods;
    if (method == "both") methods = {BigMMethod::trivial, BigMMethod::mhg};
    else methods = {parse_big_m_method(method)};
    std::vector<BigMTable> tables;
    for (auto m : methods) tables.push_back(big_m_table(inst, m));
    std::ostringstream out;
    if (format == Format::csv) {
        out << "hot,cold";
        for (auto m : methods) out << ',' << to_string(m);
        out << '\n';
    } else if (format == Format::table) {
        out << "hot\tcold";
        for (auto m : methods) out << '\t' << to_string(m);
        out << '\n';
    }
    auto json = nlohmann::ordered_json::array();
    for (int i = 0; i < inst.n(); ++i)
        for (int j = 0; j < inst.m(); ++j) {
            if (format == Format::json) {
                nlohmann::ordered_json row;
                row["hot"] = inst.hot_names()[i];
                row["cold"] = inst.cold_names()[j];
                for (std::size_t a = 0; a < methods.size(); ++a)
                    row[to_string(methods[a])] = nlohmann::ordered_json::parse(format_scaled(tables[a](i, j), inst.scale()));
                json.push_back(row);
                continue;
            }
            const char sep = format == Format::csv ? ',' : '\t';
            out << inst.hot_names()[i] << sep << inst.cold_names()[j];
            for (const auto& t : tables) out << sep << format_scaled(t(i, j), inst.scale());
            out << '\n';
        }
    if (format == Format::json) return json.dump(2) + "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimum number of matches heuristics for heat exchanger network synthesis"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string output;
    std::string heuristics = "all";
    std::string bigm = "mhg";
    std::string format = "table";
    double epsilon = 0;
    int exact_cap = 0;
    std::optional<std::uint64_t> seed;
    std::string lrr_policy = "existing";
    bool lfm_lp = false;
    bool outlets = false;

    auto* solve_cmd = app.add_subcommand("solve", "Run heuristics on one instance");
    solve_cmd->add_option("instance", instance_path, "Instance JSON file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--heuristics", heuristics, "Comma-separated names or 'all'");
    solve_cmd->add_option("--bigm", bigm, "Big-M method")->check(CLI::IsMember({"trivial", "mhg"}));
    solve_cmd->add_option("--epsilon", epsilon, "LHM-LP stopping precision, in heat (default one scaled unit)");
    solve_cmd->add_option("--exact-small", exact_cap, "Also compute the exact optimum when n*m is at most this");
    solve_cmd->add_option("--seed", seed, "Recorded in the report");
    solve_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}));
    solve_cmd->add_option("--lrr-policy", lrr_policy)->check(CLI::IsMember({"max-heat", "stream-bounds", "existing"}));
    solve_cmd->add_flag("--lfm-lp", lfm_lp, "Score LFM candidates with the max-fraction LP");
    solve_cmd->add_flag("--outlets", outlets, "Partition network instances at outlets too");
    solve_cmd->add_option("-o,--output", output);

    std::string bench_dir;
    std::string reference;
    std::string boxplot;
    auto* bench_cmd = app.add_subcommand("bench", "Run heuristics on every *.json instance in a directory");
    bench_cmd->add_option("directory", bench_dir)->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--heuristics", heuristics);
    bench_cmd->add_option("--bigm", bigm)->check(CLI::IsMember({"trivial", "mhg"}));
    bench_cmd->add_option("--reference", reference, "CSV of instance,best known value")->check(CLI::ExistingFile);
    bench_cmd->add_option("--boxplot", boxplot, "Write ratio quartiles per heuristic here");
    bench_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}));
    bench_cmd->add_option("--lrr-policy", lrr_policy)->check(CLI::IsMember({"max-heat", "stream-bounds", "existing"}));
    bench_cmd->add_flag("--lfm-lp", lfm_lp);
    bench_cmd->add_option("-o,--output", output);

    std::string kind;
    std::string family = "wf";
    int size = 4;
    std::uint64_t gen_seed = 1;
    RandomShape shape;
    int hot = 80;
    int cold = 80;
    auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance");
    gen_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"large-scale", "family", "random"}));
    gen_cmd->add_option("--seed", gen_seed);
    gen_cmd->add_option("--hot", hot, "Hot streams (large-scale, random)");
    gen_cmd->add_option("--cold", cold, "Cold streams (large-scale, random)");
    gen_cmd->add_option("--family", family)->check(CLI::IsMember({"sg", "ig", "wf", "flpr"}));
    gen_cmd->add_option("--size", size, "n, or k for wf");
    gen_cmd->add_option("--intervals", shape.intervals);
    gen_cmd->add_option("--transfers", shape.transfers);
    gen_cmd->add_option("--max-heat", shape.max_heat);
    gen_cmd->add_option("-o,--output", output);

    std::string sizes;
    int bins = 0;
    Heat capacity = 0;
    auto* reduce_cmd = app.add_subcommand("reduce-binpack", "Encode a bin packing instance as a single interval");
    reduce_cmd->add_option("--sizes", sizes, "Comma-separated item sizes")->required();
    reduce_cmd->add_option("--bins", bins)->required();
    reduce_cmd->add_option("--capacity", capacity)->required();
    reduce_cmd->add_option("-o,--output", output);

    std::string model = "transshipment";
    auto* export_cmd = app.add_subcommand("export-milp", "Write a MILP in CPLEX LP format");
    export_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    export_cmd->add_option("--model", model);
    export_cmd->add_option("--bigm", bigm)->check(CLI::IsMember({"trivial", "mhg"}));
    export_cmd->add_flag("--outlets", outlets);
    export_cmd->add_option("-o,--output", output);

    std::string method = "both";
    auto* bigm_cmd = app.add_subcommand("bigm", "Print the big-M table");
    bigm_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    bigm_cmd->add_option("--method", method)->check(CLI::IsMember({"trivial", "mhg", "both"}));
    bigm_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}));
    bigm_cmd->add_flag("--outlets", outlets);
    bigm_cmd->add_option("-o,--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        RunConfig config;
        config.bigm = parse_big_m_method(bigm);
        config.lrr_policy = parse_cost_policy(lrr_policy);
        config.lfm_lp = lfm_lp;

        if (*solve_cmd) {
            const auto inst = read_matches(instance_path, outlets);
            config.exact_small = exact_cap;
            if (epsilon > 0) config.epsilon = epsilon_units(epsilon, inst.scale());
            auto report = solve(inst, parse_heuristic_list(heuristics), config);
            report.seed = seed;
            emit(render(report, inst, parse_format(format)), output);
        } else if (*bench_cmd) {
            const auto ref = reference.empty() ? std::map<std::string, int>{} : load_reference(reference);
            const auto report = bench(bench_dir, parse_heuristic_list(heuristics), config, ref);
            for (const auto& row : report.rows)
                if (row.status != "ok") std::cerr << "warning: " << row.instance << (row.heuristic.empty() ? "" : " " + row.heuristic) << ": " << row.status << "\n";
            const auto f = parse_format(format);
            emit(f == Format::csv ? report.csv() : f == Format::json ? report.json() : report.table(), output);
            if (!boxplot.empty()) emit(report.boxplot_csv(), boxplot);
        } else if (*gen_cmd) {
            if (kind == "large-scale") {
                emit(to_json(generate_large_scale(gen_seed, hot, cold)), output);
            } else if (kind == "family") {
                emit(to_json(generate_tightness_family(parse_family(family), size)), output);
            } else {
                shape.hot = gen_cmd->count("--hot") ? hot : shape.hot;
                shape.cold = gen_cmd->count("--cold") ? cold : shape.cold;
                emit(to_json(generate_random_matches(gen_seed, shape)), output);
            }
        } else if (*reduce_cmd) {
            const auto reduction = reduce_bin_packing(parse_sizes(sizes), bins, capacity);
            emit(to_json(reduction.instance), output);
            std::cerr << "items fit iff the optimum is " << reduction.packing_optimum() << " matches ("
                      << reduction.items << " items, " << reduction.fillers << " fillers)\n";
        } else if (*export_cmd) {
            const auto inst = read_matches(instance_path, outlets);
            const auto kind_value = parse_model_kind(model);
            std::optional<BigMTable> table;
            if (needs_big_m(kind_value)) table = big_m_table(inst, config.bigm);
            emit(export_model(inst, kind_value, table ? &*table : nullptr), output);
        } else if (*bigm_cmd) {
            const auto inst = read_matches(instance_path, outlets);
            emit(big_m_dump(inst, method, parse_format(format)), output);
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
