#include "heatmatch/core_model.hpp"

#include "heatmatch/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heatmatch {

namespace {

const char* kind_name(StreamKind kind) { return kind == StreamKind::hot ? "hot" : "cold"; }

std::vector<std::string> default_names(const char* prefix, int count)
{
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i + 1));
    return names;
}

Heat checked_round(double value)
{
    if (!std::isfinite(value) || std::abs(value) > 9.0e18) throw std::invalid_argument("value out of range");
    return static_cast<Heat>(std::llround(value));
}

}  // namespace

void ProcessStream::validate() const
{
    if (!std::isfinite(t_in) || !std::isfinite(t_out) || !std::isfinite(fcp))
        throw std::invalid_argument("stream " + name + ": non-finite field");
    if (kind == StreamKind::hot && !(t_in > t_out))
        throw std::invalid_argument("hot stream " + name + ": t_in must exceed t_out");
    if (kind == StreamKind::cold && !(t_in < t_out))
        throw std::invalid_argument("cold stream " + name + ": t_in must be below t_out");
    if (!(fcp > 0)) throw std::invalid_argument(std::string(kind_name(kind)) + " stream " + name + ": fcp must be positive");
}

void Utility::validate() const
{
    if (!std::isfinite(t_in) || !std::isfinite(t_out) || !std::isfinite(unit_cost))
        throw std::invalid_argument("utility " + name + ": non-finite field");
    if (kind == StreamKind::hot && !(t_in > t_out))
        throw std::invalid_argument("hot utility " + name + ": t_in must exceed t_out");
    if (kind == StreamKind::cold && !(t_in < t_out))
        throw std::invalid_argument("cold utility " + name + ": t_in must be below t_out");
    if (unit_cost < 0) throw std::invalid_argument("utility " + name + ": negative unit cost");
}

void NetworkDesignInstance::validate() const
{
    if (!(dt_min > 0)) throw std::invalid_argument("dt_min must be positive");
    if (hot_streams.empty() && hot_utilities.empty()) throw std::invalid_argument("no hot stream or utility");
    if (cold_streams.empty() && cold_utilities.empty()) throw std::invalid_argument("no cold stream or utility");
    for (const auto& s : hot_streams) {
        if (s.kind != StreamKind::hot) throw std::invalid_argument("cold stream listed among hot streams");
        s.validate();
    }
    for (const auto& s : cold_streams) {
        if (s.kind != StreamKind::cold) throw std::invalid_argument("hot stream listed among cold streams");
        s.validate();
    }
    for (const auto& u : hot_utilities) {
        if (u.kind != StreamKind::hot) throw std::invalid_argument("cold utility listed among hot utilities");
        u.validate();
    }
    for (const auto& u : cold_utilities) {
        if (u.kind != StreamKind::cold) throw std::invalid_argument("hot utility listed among cold utilities");
        u.validate();
    }
}

ResidualProfile ResidualProfile::of(const HeatMatrix& sigma, const HeatMatrix& delta)
{
    ResidualProfile p;
    const int k = static_cast<int>(sigma.cols());
    p.r.resize(k);
    Heat running = 0;
    for (int u = 0; u < k; ++u) {
        running += sigma.col(u).sum() - delta.col(u).sum();
        p.r[u] = running;
    }
    return p;
}

bool ResidualProfile::feasible() const
{
    if (r.empty()) return true;
    for (std::size_t u = 0; u + 1 < r.size(); ++u)
        if (r[u] < 0) return false;
    return r.back() == 0;
}

Heat ResidualProfile::min_before(int s, int t) const
{
    Heat best = kUnbounded;
    for (int u = s; u < t; ++u) best = std::min(best, r[u]);
    return best;
}

MatchesInstance::MatchesInstance(HeatMatrix sigma, HeatMatrix delta, int scale)
    : sigma_(std::move(sigma)), delta_(std::move(delta)), scale_(scale)
{
    if (sigma_.cols() != delta_.cols() && sigma_.rows() > 0 && delta_.rows() > 0)
        throw std::invalid_argument("sigma and delta must have the same number of intervals");
    if (sigma_.rows() == 0 && delta_.rows() > 0) sigma_.resize(0, delta_.cols());
    if (delta_.rows() == 0 && sigma_.rows() > 0) delta_.resize(0, sigma_.cols());
    if ((sigma_.size() > 0 && sigma_.minCoeff() < 0) || (delta_.size() > 0 && delta_.minCoeff() < 0))
        throw std::invalid_argument("heat entries must be non-negative");
    if (scale_ < 0 || scale_ > 9) throw std::invalid_argument("heat scale out of range");
    hot_names_ = default_names("H", n());
    cold_names_ = default_names("C", m());
}

MatchesInstance MatchesInstance::from_decimal(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& delta)
{
    int scale = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) scale = std::max(scale, decimal_places(sigma.data()[i]));
    for (Eigen::Index i = 0; i < delta.size(); ++i) scale = std::max(scale, decimal_places(delta.data()[i]));
    const double factor = static_cast<double>(pow10(scale));
    HeatMatrix s(sigma.rows(), sigma.cols());
    HeatMatrix d(delta.rows(), delta.cols());
    for (Eigen::Index r = 0; r < sigma.rows(); ++r)
        for (Eigen::Index c = 0; c < sigma.cols(); ++c) s(r, c) = checked_round(sigma(r, c) * factor);
    for (Eigen::Index r = 0; r < delta.rows(); ++r)
        for (Eigen::Index c = 0; c < delta.cols(); ++c) d(r, c) = checked_round(delta(r, c) * factor);
    return MatchesInstance(std::move(s), std::move(d), scale);
}

double MatchesInstance::to_double(Heat units) const
{
    return static_cast<double>(units) / static_cast<double>(pow10(scale_));
}

Eigen::MatrixXd MatchesInstance::sigma_values() const
{
    return sigma_.cast<double>() / static_cast<double>(pow10(scale_));
}

Eigen::MatrixXd MatchesInstance::delta_values() const
{
    return delta_.cast<double>() / static_cast<double>(pow10(scale_));
}

void MatchesInstance::require_feasible() const
{
    const auto profile = residuals();
    if (total_supply() != total_demand()) {
        throw InfeasibleError("heat conservation fails: supply " + format_scaled(total_supply(), scale_) +
                              " vs demand " + format_scaled(total_demand(), scale_));
    }
    for (int u = 0; u + 1 < k(); ++u) {
        if (profile.r[u] < 0) {
            throw InfeasibleError("cold demand at or above interval " + std::to_string(u + 1) + " exceeds hot supply by " +
                                  format_scaled(-profile.r[u], scale_));
        }
    }
}

MatchesInstance MatchesInstance::with_heats(HeatMatrix sigma, HeatMatrix delta) const
{
    MatchesInstance out(std::move(sigma), std::move(delta), scale_);
    if (out.n() != n() || out.m() != m()) throw std::invalid_argument("with_heats: shape mismatch");
    out.hot_names_ = hot_names_;
    out.cold_names_ = cold_names_;
    out.name = name;
    out.provenance = provenance;
    return out;
}

MatchesInstance MatchesInstance::minus(const HeatTensor& q) const
{
    HeatMatrix s = sigma_;
    HeatMatrix d = delta_;
    for (const auto& f : q.flows()) {
        s(f.hot, f.hot_interval) -= f.heat;
        d(f.cold, f.cold_interval) -= f.heat;
    }
    if ((s.size() > 0 && s.minCoeff() < 0) || (d.size() > 0 && d.minCoeff() < 0))
        throw InvariantError("removed heat exceeds the available supply or demand");
    return with_heats(std::move(s), std::move(d));
}

MatchesInstance MatchesInstance::without_empty_streams(std::vector<int>* kept_hot, std::vector<int>* kept_cold) const
{
    std::vector<int> hot;
    std::vector<int> cold;
    for (int i = 0; i < n(); ++i)
        if (hot_total(i) > 0) hot.push_back(i);
    for (int j = 0; j < m(); ++j)
        if (cold_total(j) > 0) cold.push_back(j);
    HeatMatrix s(static_cast<Eigen::Index>(hot.size()), k());
    HeatMatrix d(static_cast<Eigen::Index>(cold.size()), k());
    std::vector<std::string> hn;
    std::vector<std::string> cn;
    for (std::size_t r = 0; r < hot.size(); ++r) {
        s.row(r) = sigma_.row(hot[r]);
        hn.push_back(hot_names_[hot[r]]);
    }
    for (std::size_t r = 0; r < cold.size(); ++r) {
        d.row(r) = delta_.row(cold[r]);
        cn.push_back(cold_names_[cold[r]]);
    }
    MatchesInstance out(std::move(s), std::move(d), scale_);
    out.hot_names_ = std::move(hn);
    out.cold_names_ = std::move(cn);
    out.name = name;
    out.provenance = provenance;
    if (kept_hot) *kept_hot = hot;
    if (kept_cold) *kept_cold = cold;
    return out;
}

void MatchesInstance::set_names(std::vector<std::string> hot, std::vector<std::string> cold)
{
    if (static_cast<int>(hot.size()) != n() || static_cast<int>(cold.size()) != m())
        throw std::invalid_argument("set_names: name count mismatch");
    hot_names_ = std::move(hot);
    cold_names_ = std::move(cold);
}

bool MatchesInstance::operator==(const MatchesInstance& o) const
{
    if (n() != o.n() || m() != o.m() || k() != o.k()) return false;
    if (hot_names_ != o.hot_names_ || cold_names_ != o.cold_names_ || name != o.name || provenance != o.provenance)
        return false;
    // Compare at a common scale so that 1.5 at scale 1 equals 1.50 at scale 2.
    const int common = std::max(scale_, o.scale_);
    const Heat a = pow10(common - scale_);
    const Heat b = pow10(common - o.scale_);
    return (sigma_ * a == o.sigma_ * b) && (delta_ * a == o.delta_ * b);
}

// ---------------------------------------------------------------------------
// Temperature partition

namespace {

struct Span {
    Heat top = 0;     // hot-side scaled temperature
    Heat bottom = 0;
};

Heat overlap(Heat upper, Heat lower, const Span& span)
{
    return std::max<Heat>(0, std::min(upper, span.top) - std::max(lower, span.bottom));
}

}  // namespace

TemperaturePartition partition_temperature_intervals(const NetworkDesignInstance& inst, PartitionOptions options)
{
    inst.validate();

    int t_dec = decimal_places(inst.dt_min);
    int f_dec = 0;
    for (const auto* list : {&inst.hot_streams, &inst.cold_streams})
        for (const auto& s : *list) {
            t_dec = std::max({t_dec, decimal_places(s.t_in), decimal_places(s.t_out)});
            f_dec = std::max(f_dec, decimal_places(s.fcp));
        }
    for (const auto* list : {&inst.hot_utilities, &inst.cold_utilities})
        for (const auto& u : *list) t_dec = std::max({t_dec, decimal_places(u.t_in), decimal_places(u.t_out)});

    const double t_factor = static_cast<double>(pow10(t_dec));
    auto temp = [&](double t) { return checked_round(t * t_factor); };
    const Heat dt = temp(inst.dt_min);

    auto hot_span = [&](double t_in, double t_out) { return Span{temp(t_in), temp(t_out)}; };
    auto cold_span = [&](double t_in, double t_out) { return Span{temp(t_out) + dt, temp(t_in) + dt}; };

    std::vector<Span> hot_spans;
    std::vector<Span> cold_spans;
    std::vector<Span> hu_spans;
    std::vector<Span> cu_spans;
    for (const auto& s : inst.hot_streams) hot_spans.push_back(hot_span(s.t_in, s.t_out));
    for (const auto& s : inst.cold_streams) cold_spans.push_back(cold_span(s.t_in, s.t_out));
    for (const auto& u : inst.hot_utilities) hu_spans.push_back(hot_span(u.t_in, u.t_out));
    for (const auto& u : inst.cold_utilities) cu_spans.push_back(cold_span(u.t_in, u.t_out));

    // Inlets on the hot side; a cold inlet shows up as the bottom of its shifted span.
    std::vector<Heat> cuts;
    for (const auto& s : hot_spans) cuts.push_back(s.top);
    for (const auto& s : hu_spans) cuts.push_back(s.top);
    for (const auto& s : cold_spans) cuts.push_back(s.bottom);
    for (const auto& s : cu_spans) cuts.push_back(s.bottom);
    // Envelope so that no process heat falls outside the partition.
    if (!hot_spans.empty())
        cuts.push_back(std::min_element(hot_spans.begin(), hot_spans.end(),
                                        [](const Span& a, const Span& b) { return a.bottom < b.bottom; })->bottom);
    if (!cold_spans.empty())
        cuts.push_back(std::max_element(cold_spans.begin(), cold_spans.end(),
                                        [](const Span& a, const Span& b) { return a.top < b.top; })->top);
    if (options.include_outlets) {
        for (const auto& s : hot_spans) cuts.push_back(s.bottom);
        for (const auto& s : hu_spans) cuts.push_back(s.bottom);
        for (const auto& s : cold_spans) cuts.push_back(s.top);
        for (const auto& s : cu_spans) cuts.push_back(s.top);
    }
    std::sort(cuts.begin(), cuts.end(), std::greater<>());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.size() < 2) throw std::invalid_argument("degenerate instance: fewer than two distinct interval boundaries");

    const int k = static_cast<int>(cuts.size()) - 1;
    TemperaturePartition part;
    for (Heat c : cuts) part.boundaries.push_back(static_cast<double>(c) / t_factor);

    int scale = t_dec + f_dec;
    const Heat shrink = scale > 6 ? pow10(scale - 6) : 1;
    scale = std::min(scale, 6);
    part.scale = scale;
    const double f_factor = static_cast<double>(pow10(f_dec));

    auto fill = [&](const std::vector<ProcessStream>& streams, const std::vector<Span>& spans) {
        HeatMatrix out = HeatMatrix::Zero(static_cast<Eigen::Index>(streams.size()), k);
        for (std::size_t i = 0; i < streams.size(); ++i) {
            const Heat f = checked_round(streams[i].fcp * f_factor);
            for (int t = 0; t < k; ++t) {
                const Heat raw = f * overlap(cuts[t], cuts[t + 1], spans[i]);
                out(static_cast<Eigen::Index>(i), t) = (raw + shrink / 2) / shrink;
            }
        }
        return out;
    };
    part.hot = fill(inst.hot_streams, hot_spans);
    part.cold = fill(inst.cold_streams, cold_spans);

    auto eligible = [&](const std::vector<Span>& spans) {
        std::vector<std::vector<int>> out(spans.size());
        for (std::size_t u = 0; u < spans.size(); ++u)
            for (int t = 0; t < k; ++t)
                if (overlap(cuts[t], cuts[t + 1], spans[u]) > 0) out[u].push_back(t);
        return out;
    };
    part.hot_utility_intervals = eligible(hu_spans);
    part.cold_utility_intervals = eligible(cu_spans);
    return part;
}

UtilitySolution solve_min_utility_cost(const NetworkDesignInstance& inst, PartitionOptions options)
{
    UtilitySolution out;
    out.partition = partition_temperature_intervals(inst, options);
    const auto& part = out.partition;
    const int k = part.k();

    int c_dec = 0;
    for (const auto* list : {&inst.hot_utilities, &inst.cold_utilities})
        for (const auto& u : *list) c_dec = std::max(c_dec, decimal_places(u.unit_cost));
    const double c_factor = static_cast<double>(pow10(c_dec));

    FlowNetwork<std::int64_t> net;
    Heat total = 0;
    for (int t = 0; t < k; ++t) {
        const Heat b = part.hot.col(t).sum() - part.cold.col(t).sum();
        total += b;
        net.add_node(b, "interval " + std::to_string(t + 1));
    }
    const int z = net.add_node(-total, "utilities");
    std::vector<int> descend;
    for (int t = 0; t + 1 < k; ++t) descend.push_back(net.add_arc(t, t + 1, kUnbounded, 0));

    std::vector<std::vector<std::pair<int, int>>> hu_arcs(inst.hot_utilities.size());
    std::vector<std::vector<std::pair<int, int>>> cu_arcs(inst.cold_utilities.size());
    for (std::size_t u = 0; u < inst.hot_utilities.size(); ++u) {
        const auto cost = checked_round(inst.hot_utilities[u].unit_cost * c_factor);
        for (int t : part.hot_utility_intervals[u]) hu_arcs[u].push_back({t, net.add_arc(z, t, kUnbounded, cost)});
    }
    for (std::size_t u = 0; u < inst.cold_utilities.size(); ++u) {
        const auto cost = checked_round(inst.cold_utilities[u].unit_cost * c_factor);
        for (int t : part.cold_utility_intervals[u]) cu_arcs[u].push_back({t, net.add_arc(t, z, kUnbounded, cost)});
    }

    FlowResult<std::int64_t> flow;
    try {
        flow = min_cost_flow(net);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("interval heat balance cannot be closed with the available utilities: ") + e.what());
    }

    out.hot_utility_load = HeatMatrix::Zero(static_cast<Eigen::Index>(inst.hot_utilities.size()), k);
    out.cold_utility_load = HeatMatrix::Zero(static_cast<Eigen::Index>(inst.cold_utilities.size()), k);
    for (std::size_t u = 0; u < hu_arcs.size(); ++u)
        for (auto [t, a] : hu_arcs[u]) out.hot_utility_load(static_cast<Eigen::Index>(u), t) += flow.flow[a];
    for (std::size_t u = 0; u < cu_arcs.size(); ++u)
        for (auto [t, a] : cu_arcs[u]) out.cold_utility_load(static_cast<Eigen::Index>(u), t) += flow.flow[a];
    out.residual.assign(k + 1, 0);
    for (int t = 0; t + 1 < k; ++t) out.residual[t + 1] = flow.flow[descend[t]];
    out.total_cost = flow.objective / static_cast<long double>(c_factor) /
                     static_cast<long double>(pow10(part.scale));
    return out;
}

MatchesInstance to_matches_instance(const NetworkDesignInstance& inst, const UtilitySolution& utilities)
{
    const auto& part = utilities.partition;
    const int k = part.k();
    std::vector<Eigen::Matrix<Heat, 1, Eigen::Dynamic>> hot_rows;
    std::vector<Eigen::Matrix<Heat, 1, Eigen::Dynamic>> cold_rows;
    std::vector<std::string> hot_names;
    std::vector<std::string> cold_names;

    for (Eigen::Index i = 0; i < part.hot.rows(); ++i) {
        hot_rows.push_back(part.hot.row(i));
        const auto& nm = inst.hot_streams[i].name;
        hot_names.push_back(nm.empty() ? "H" + std::to_string(i + 1) : nm);
    }
    for (Eigen::Index u = 0; u < utilities.hot_utility_load.rows(); ++u) {
        if (utilities.hot_utility_load.row(u).sum() == 0) continue;
        hot_rows.push_back(utilities.hot_utility_load.row(u));
        const auto& nm = inst.hot_utilities[u].name;
        hot_names.push_back(nm.empty() ? "HU" + std::to_string(u + 1) : nm);
    }
    for (Eigen::Index j = 0; j < part.cold.rows(); ++j) {
        cold_rows.push_back(part.cold.row(j));
        const auto& nm = inst.cold_streams[j].name;
        cold_names.push_back(nm.empty() ? "C" + std::to_string(j + 1) : nm);
    }
    for (Eigen::Index u = 0; u < utilities.cold_utility_load.rows(); ++u) {
        if (utilities.cold_utility_load.row(u).sum() == 0) continue;
        cold_rows.push_back(utilities.cold_utility_load.row(u));
        const auto& nm = inst.cold_utilities[u].name;
        cold_names.push_back(nm.empty() ? "CU" + std::to_string(u + 1) : nm);
    }

    HeatMatrix sigma(static_cast<Eigen::Index>(hot_rows.size()), k);
    HeatMatrix delta(static_cast<Eigen::Index>(cold_rows.size()), k);
    for (std::size_t r = 0; r < hot_rows.size(); ++r) sigma.row(static_cast<Eigen::Index>(r)) = hot_rows[r];
    for (std::size_t r = 0; r < cold_rows.size(); ++r) delta.row(static_cast<Eigen::Index>(r)) = cold_rows[r];

    MatchesInstance full(std::move(sigma), std::move(delta), part.scale);
    full.set_names(std::move(hot_names), std::move(cold_names));
    full.name = inst.name;
    full.provenance = inst.provenance;
    if (full.total_supply() != full.total_demand())
        throw InvariantError("heat conservation fails after adding utility loads");
    auto out = full.without_empty_streams();
    if (!out.is_feasible()) throw InvariantError("derived matches instance violates the residual conditions");
    return out;
}

MatchesInstance derive_matches_instance(const NetworkDesignInstance& inst, PartitionOptions options)
{
    return to_matches_instance(inst, solve_min_utility_cost(inst, options));
}

// ---------------------------------------------------------------------------
// Verification

double FeasibilityReport::worst() const
{
    double w = 0;
    for (const auto& v : violations) w = std::max(w, v.worst);
    return w;
}

std::string FeasibilityReport::summary() const
{
    if (feasible) return "feasible";
    std::ostringstream out;
    out << "infeasible:";
    for (const auto& v : violations)
        out << " " << v.kind << " x" << v.count << " (worst " << v.worst << " at " << v.where << ")";
    return out.str();
}

FeasibilityReport verify_solution(const MatchesInstance& inst, const Solution& sol)
{
    FeasibilityReport report;
    std::map<std::string, Violation> found;
    auto note = [&](const std::string& kind, double magnitude, const std::string& where) {
        auto& v = found[kind];
        v.kind = kind;
        ++v.count;
        if (v.count == 1 || magnitude > v.worst) {
            v.worst = magnitude;
            v.where = where;
        }
    };
    auto loc = [](int a, int b) { return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"; };

    HeatMatrix hot_used = HeatMatrix::Zero(inst.n(), inst.k());
    HeatMatrix cold_got = HeatMatrix::Zero(inst.m(), inst.k());
    bool shape_ok = true;
    for (const auto& f : sol.q.flows()) {
        if (f.hot < 0 || f.hot >= inst.n() || f.cold < 0 || f.cold >= inst.m() || f.hot_interval < 0 ||
            f.hot_interval >= inst.k() || f.cold_interval < 0 || f.cold_interval >= inst.k()) {
            note("shape", inst.to_double(f.heat), "q index out of range");
            shape_ok = false;
            continue;
        }
        if (f.heat < 0) note("negative_heat", inst.to_double(-f.heat), loc(f.hot, f.cold));
        if (f.hot_interval > f.cold_interval) {
            note("thermodynamic", inst.to_double(f.heat),
                 "q" + std::to_string(f.hot + 1) + "," + std::to_string(f.hot_interval + 1) + "," +
                     std::to_string(f.cold + 1) + "," + std::to_string(f.cold_interval + 1));
        }
        hot_used(f.hot, f.hot_interval) += f.heat;
        cold_got(f.cold, f.cold_interval) += f.heat;
    }
    for (const auto& match : sol.matches)
        if (match.hot < 0 || match.hot >= inst.n() || match.cold < 0 || match.cold >= inst.m()) {
            note("shape", 0, "match index out of range");
            shape_ok = false;
        }
    if (shape_ok) {
        for (int i = 0; i < inst.n(); ++i)
            for (int s = 0; s < inst.k(); ++s) {
                const Heat gap = hot_used(i, s) - inst.sigma(i, s);
                if (gap != 0) note("hot_balance", inst.to_double(std::abs(gap)), "hot " + loc(i, s));
            }
        for (int j = 0; j < inst.m(); ++j)
            for (int t = 0; t < inst.k(); ++t) {
                const Heat gap = cold_got(j, t) - inst.delta(j, t);
                if (gap != 0) note("cold_balance", inst.to_double(std::abs(gap)), "cold " + loc(j, t));
            }
        const HeatMatrix pairs = sol.q.pair_totals(inst.n(), inst.m());
        for (int i = 0; i < inst.n(); ++i)
            for (int j = 0; j < inst.m(); ++j) {
                const bool listed = sol.matches.count({i, j}) > 0;
                if (pairs(i, j) > 0 && !listed) note("heat_without_match", inst.to_double(pairs(i, j)), loc(i, j));
                if (pairs(i, j) == 0 && listed) note("match_without_heat", 0, loc(i, j));
            }
    }
    for (auto& [kind, v] : found) report.violations.push_back(v);
    report.feasible = report.violations.empty();
    return report;
}

}  // namespace heatmatch
