#include "heatmatch/bench.hpp"

#include "heatmatch/greedy_packing.hpp"
#include "heatmatch/instance_io.hpp"
#include "heatmatch/single_interval.hpp"
#include "heatmatch/water_filling.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace heatmatch {

const std::vector<Heuristic>& all_heuristics()
{
    static const std::vector<Heuristic> all{Heuristic::flpr, Heuristic::lrr, Heuristic::crr,
                                            Heuristic::wfg,  Heuristic::wfm, Heuristic::lhm,
                                            Heuristic::lfm,  Heuristic::lhm_lp, Heuristic::ss};
    return all;
}

std::string to_string(Heuristic heuristic)
{
    switch (heuristic) {
    case Heuristic::flpr: return "FLPR";
    case Heuristic::lrr: return "LRR";
    case Heuristic::crr: return "CRR";
    case Heuristic::wfg: return "WFG";
    case Heuristic::wfm: return "WFM";
    case Heuristic::lhm: return "LHM";
    case Heuristic::lfm: return "LFM";
    case Heuristic::lhm_lp: return "LHM-LP";
    case Heuristic::ss: return "SS";
    }
    return "?";
}

Heuristic parse_heuristic(const std::string& text)
{
    std::string key;
    for (char ch : text) key += ch == '_' ? '-' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (auto h : all_heuristics())
        if (to_string(h) == key) return h;
    throw std::invalid_argument("unknown heuristic '" + text + "' (expected FLPR, LRR, CRR, WFG, WFM, LHM, LFM, LHM-LP or SS)");
}

std::vector<Heuristic> parse_heuristic_list(const std::string& text)
{
    if (text == "all") return all_heuristics();
    std::vector<Heuristic> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto h = parse_heuristic(item);
        if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
    }
    if (out.empty()) throw std::invalid_argument("no heuristics selected");
    return out;
}

namespace {

Solution merge(const Solution& a, const Solution& b)
{
    HeatTensor q = a.q;
    q.add(b.q);
    return Solution::from_heat(q);
}

}  // namespace

HeuristicRun run_heuristic(const MatchesInstance& inst, Heuristic heuristic, const RunConfig& config)
{
    inst.require_feasible();
    HeuristicRun run;
    run.heuristic = heuristic;
    const auto start = std::chrono::steady_clock::now();
    switch (heuristic) {
    case Heuristic::flpr: {
        auto rounded = flpr(inst, big_m_table(inst, config.bigm));
        run.solution = std::move(rounded.solution);
        run.filling_ratio = static_cast<double>(rounded.filling_ratio);
        break;
    }
    case Heuristic::lrr:
        run.solution = lrr(inst, big_m_table(inst, config.bigm), {config.lrr_policy, nullptr});
        break;
    case Heuristic::crr: {
        auto result = crr(inst, config.bigm);
        run.solution = std::move(result.solution);
        run.iterations = result.iterations;
        break;
    }
    case Heuristic::wfg:
    case Heuristic::wfm: {
        WaterFillOptions options;
        options.engine = heuristic == Heuristic::wfg ? SingleIntervalEngine::greedy : SingleIntervalEngine::exact;
        auto result = water_fill(inst, options);
        run.solution = std::move(result.solution);
        run.fallback_intervals = std::move(result.fallback_intervals);
        break;
    }
    case Heuristic::lhm: run.solution = lhm(inst); break;
    case Heuristic::lfm: run.solution = lfm(inst, {config.lfm_lp}); break;
    case Heuristic::lhm_lp: {
        auto result = lhm_lp(inst, {config.epsilon});
        run.iterations = static_cast<int>(result.trace.size());
        run.solution = std::move(result.solution);
        // A coarse epsilon leaves heat unrouted; LHM packs the rest.
        if (result.remaining > 0) run.solution = merge(run.solution, lhm(inst.minus(run.solution.q)));
        break;
    }
    case Heuristic::ss: run.solution = ss(inst); break;
    }
    run.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const auto report = verify_solution(inst, run.solution);
    if (!report.feasible)
        throw InvariantError(to_string(heuristic) + " produced an infeasible solution: " + report.summary());
    return run;
}

std::optional<int> exact_small(const MatchesInstance& original, int max_pairs)
{
    original.require_feasible();
    const auto inst = original.without_empty_streams();
    const int n = inst.n();
    const int m = inst.m();
    if (n == 0) return 0;
    if (inst.k() == 1) {
        SingleIntervalInstance loads{inst.sigma().col(0), inst.delta().col(0)};
        try {
            return exact_bins(loads).solution.match_count();
        } catch (const SizeLimitError&) {
            return std::nullopt;
        }
    }
    const int pairs = n * m;
    if (pairs > max_pairs || pairs > 62) return std::nullopt;
    const Heat total = inst.total_supply();
    std::vector<std::uint64_t> hot_mask(n, 0);
    std::vector<std::uint64_t> cold_mask(m, 0);
    for (int p = 0; p < pairs; ++p) {
        hot_mask[p / m] |= std::uint64_t{1} << p;
        cold_mask[p % m] |= std::uint64_t{1} << p;
    }
    for (int size = std::max(n, m); size <= pairs; ++size) {
        std::uint64_t mask = (std::uint64_t{1} << size) - 1;
        const std::uint64_t end = pairs == 64 ? 0 : std::uint64_t{1} << pairs;
        while (mask < end) {
            bool covers = true;
            for (int i = 0; i < n && covers; ++i) covers = (mask & hot_mask[i]) != 0;
            for (int j = 0; j < m && covers; ++j) covers = (mask & cold_mask[j]) != 0;
            if (covers) {
                MatchSet allowed;
                for (int p = 0; p < pairs; ++p)
                    if (mask >> p & 1) allowed.insert({p / m, p % m});
                if (mhlp(inst, allowed, {false}).value == total) return size;
            }
            const std::uint64_t low = mask & -mask;
            const std::uint64_t ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    throw InvariantError("exact search found no feasible match set");
}

SolveReport solve(const MatchesInstance& inst, const std::vector<Heuristic>& heuristics, const RunConfig& config)
{
    inst.require_feasible();
    SolveReport report;
    report.instance = inst.name.empty() ? "unnamed" : inst.name;
    report.n = inst.n();
    report.m = inst.m();
    report.k = inst.k();
    report.config = config;
    for (auto h : heuristics) report.runs.push_back(run_heuristic(inst, h, config));
    if (config.exact_small > 0) report.exact = exact_small(inst, config.exact_small);
    return report;
}

Format parse_format(const std::string& text)
{
    if (text == "table") return Format::table;
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    throw std::invalid_argument("unknown format '" + text + "' (expected table, json or csv)");
}

namespace {

std::string fixed(double x, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string pad(const std::string& s, std::size_t width, bool right = false)
{
    if (s.size() >= width) return s;
    return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

std::string join(const std::vector<int>& v, const char* sep)
{
    std::string out;
    for (std::size_t a = 0; a < v.size(); ++a) out += (a ? sep : "") + std::to_string(v[a]);
    return out;
}

std::vector<std::string> match_labels(const MatchesInstance& inst, const Solution& sol)
{
    std::vector<std::string> out;
    for (const auto& [i, j] : sol.matches) out.push_back(inst.hot_names()[i] + ":" + inst.cold_names()[j]);
    return out;
}

std::string notes(const HeuristicRun& run)
{
    std::vector<std::string> parts;
    if (run.filling_ratio) parts.push_back("filling ratio " + fixed(*run.filling_ratio, 4));
    if (run.iterations) parts.push_back(std::to_string(*run.iterations) + " iterations");
    if (!run.fallback_intervals.empty()) parts.push_back("greedy fallback in intervals " + join(run.fallback_intervals, ","));
    std::string out;
    for (std::size_t a = 0; a < parts.size(); ++a) out += (a ? "; " : "") + parts[a];
    return out;
}

}  // namespace

std::string render(const SolveReport& report, const MatchesInstance& inst, Format format)
{
    std::ostringstream out;
    if (format == Format::json) {
        nlohmann::ordered_json doc;
        doc["instance"] = report.instance;
        doc["hot_streams"] = report.n;
        doc["cold_streams"] = report.m;
        doc["intervals"] = report.k;
        doc["bigm"] = to_string(report.config.bigm);
        doc["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nullptr;
        doc["results"] = nlohmann::ordered_json::array();
        for (const auto& run : report.runs) {
            nlohmann::ordered_json r;
            r["heuristic"] = to_string(run.heuristic);
            r["matches"] = run.solution.match_count();
            r["time_ms"] = std::round(run.millis * 1000) / 1000;
            r["feasible"] = true;
            r["filling_ratio"] = run.filling_ratio ? nlohmann::ordered_json(*run.filling_ratio) : nullptr;
            r["iterations"] = run.iterations ? nlohmann::ordered_json(*run.iterations) : nullptr;
            r["fallback_intervals"] = run.fallback_intervals;
            r["match_list"] = match_labels(inst, run.solution);
            doc["results"].push_back(r);
        }
        doc["exact_optimum"] = report.exact ? nlohmann::ordered_json(*report.exact) : nullptr;
        out << doc.dump(2) << "\n";
    } else if (format == Format::csv) {
        out << "instance,heuristic,matches,time_ms,feasible,filling_ratio,iterations,fallback_intervals\n";
        for (const auto& run : report.runs)
            out << report.instance << ',' << to_string(run.heuristic) << ',' << run.solution.match_count() << ','
                << fixed(run.millis, 3) << ",true," << (run.filling_ratio ? fixed(*run.filling_ratio, 6) : "") << ','
                << (run.iterations ? std::to_string(*run.iterations) : "") << ',' << join(run.fallback_intervals, ";")
                << '\n';
        if (report.exact) out << report.instance << ",EXACT," << *report.exact << ",,,,,\n";
    } else {
        out << "instance " << report.instance << ": " << report.n << " hot, " << report.m << " cold, " << report.k
            << " intervals, big-M " << to_string(report.config.bigm) << "\n";
        out << pad("heuristic", 10) << pad("matches", 9, true) << pad("time_ms", 12, true) << "  feasible  notes\n";
        for (const auto& run : report.runs)
            out << pad(to_string(run.heuristic), 10) << pad(std::to_string(run.solution.match_count()), 9, true)
                << pad(fixed(run.millis, 3), 12, true) << (run.filling_ratio || run.iterations || !run.fallback_intervals.empty() ? "  yes       " + notes(run) : std::string("  yes")) << "\n";
        if (report.exact) out << "exact optimum: " << *report.exact << "\n";
    }
    return out.str();
}

std::map<std::string, int> load_reference(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read reference file " + path.string());
    std::map<std::string, int> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": expected instance,value");
        const std::string name = line.substr(0, comma);
        const std::string value = line.substr(comma + 1);
        try {
            std::size_t used = 0;
            const int v = std::stoi(value, &used);
            if (used != value.size() && value.find_first_not_of(" \r", used) != std::string::npos) throw std::invalid_argument(value);
            out[name] = v;
        } catch (const std::exception&) {
            if (number == 1) continue;  // header
            throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": bad value '" + value + "'");
        }
    }
    return out;
}

BenchReport bench(const std::filesystem::path& dir, const std::vector<Heuristic>& heuristics, const RunConfig& config,
                  const std::map<std::string, int>& reference)
{
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Loaded {
        std::string name;
        std::optional<MatchesInstance> inst;
        std::string error;
    };
    std::vector<Loaded> loaded;
    for (const auto& path : files) {
        Loaded l;
        l.name = path.stem().string();
        try {
            auto inst = load_instance(path).to_matches();
            inst.require_feasible();
            l.inst = std::move(inst);
        } catch (const std::exception& e) {
            l.error = e.what();
        }
        loaded.push_back(std::move(l));
    }

    struct Job {
        std::size_t instance;
        Heuristic heuristic;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < loaded.size(); ++a)
        if (loaded[a].inst)
            for (auto h : heuristics) jobs.push_back({a, h});
    std::vector<BenchRow> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            BenchRow row;
            row.instance = loaded[jobs[j].instance].name;
            row.heuristic = to_string(jobs[j].heuristic);
            try {
                const auto run = run_heuristic(*loaded[jobs[j].instance].inst, jobs[j].heuristic, config);
                row.matches = run.solution.match_count();
                row.millis = run.millis;
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
            results[j] = std::move(row);
        }
    };
    const int workers = std::max(1, std::min<int>(worker_count(), static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    BenchReport report;
    std::size_t j = 0;
    for (std::size_t a = 0; a < loaded.size(); ++a) {
        if (!loaded[a].inst) {
            BenchRow row;
            row.instance = loaded[a].name;
            row.status = "unreadable: " + loaded[a].error;
            report.rows.push_back(std::move(row));
            continue;
        }
        std::optional<int> best;
        if (auto it = reference.find(loaded[a].name); it != reference.end()) best = it->second;
        const std::size_t first = j;
        for (; j < jobs.size() && jobs[j].instance == a; ++j)
            if (!best && results[j].status == "ok") best = results[j].matches;
            else if (results[j].status == "ok" && !reference.count(loaded[a].name)) best = std::min(*best, results[j].matches);
        for (std::size_t r = first; r < j; ++r) {
            auto row = results[r];
            if (row.status == "ok" && best) {
                row.best_known = best;
                row.ratio = *best > 0 ? static_cast<double>(row.matches) / *best : 1.0;
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

double quantile(std::vector<double> v, double p)
{
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

std::string BenchReport::csv() const
{
    std::ostringstream out;
    out << "instance,heuristic,status,matches,time_ms,best_known,ratio\n";
    for (const auto& r : rows) {
        const bool ok = r.status == "ok";
        out << csv_field(r.instance) << ',' << r.heuristic << ',' << csv_field(r.status) << ','
            << (ok ? std::to_string(r.matches) : "") << ',' << (ok ? fixed(r.millis, 3) : "") << ','
            << (r.best_known ? std::to_string(*r.best_known) : "") << ',' << (r.ratio ? fixed(*r.ratio, 6) : "")
            << '\n';
    }
    return out.str();
}

std::string BenchReport::json() const
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["instance"] = r.instance;
        o["heuristic"] = r.heuristic;
        o["status"] = r.status;
        o["matches"] = r.status == "ok" ? nlohmann::ordered_json(r.matches) : nullptr;
        o["time_ms"] = r.status == "ok" ? nlohmann::ordered_json(std::round(r.millis * 1000) / 1000) : nullptr;
        o["best_known"] = r.best_known ? nlohmann::ordered_json(*r.best_known) : nullptr;
        o["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio) : nullptr;
        doc.push_back(o);
    }
    return doc.dump(2) + "\n";
}

std::string BenchReport::table() const
{
    std::ostringstream out;
    out << pad("instance", 24) << pad("heuristic", 10) << pad("matches", 9, true) << pad("time_ms", 12, true)
        << pad("ratio", 10, true) << "  status\n";
    for (const auto& r : rows) {
        const bool ok = r.status == "ok";
        out << pad(r.instance, 24) << pad(r.heuristic, 10) << pad(ok ? std::to_string(r.matches) : "-", 9, true)
            << pad(ok ? fixed(r.millis, 3) : "-", 12, true) << pad(r.ratio ? fixed(*r.ratio, 3) : "-", 10, true)
            << "  " << r.status << "\n";
    }
    return out.str();
}

std::string BenchReport::boxplot_csv() const
{
    std::ostringstream out;
    out << "heuristic,count,min,q1,median,q3,max\n";
    for (auto h : all_heuristics()) {
        std::vector<double> ratios;
        for (const auto& r : rows)
            if (r.heuristic == to_string(h) && r.ratio) ratios.push_back(*r.ratio);
        if (ratios.empty()) continue;
        out << to_string(h) << ',' << ratios.size();
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) out << ',' << fixed(quantile(ratios, p), 6);
        out << '\n';
    }
    return out.str();
}

}  // namespace heatmatch
