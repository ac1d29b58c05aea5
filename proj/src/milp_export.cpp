#include "heatmatch/milp_export.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace heatmatch {

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::transportation_full: return "transportation-full";
    case ModelKind::transportation_reduced: return "transportation-reduced";
    case ModelKind::transshipment: return "transshipment";
    case ModelKind::single_interval_bins: return "single-interval-bins";
    case ModelKind::single_interval_bins_nocons: return "single-interval-bins-nocons";
    case ModelKind::covering: return "covering";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& text)
{
    for (auto kind : {ModelKind::transportation_full, ModelKind::transportation_reduced, ModelKind::transshipment,
                      ModelKind::single_interval_bins, ModelKind::single_interval_bins_nocons, ModelKind::covering})
        if (to_string(kind) == text) return kind;
    throw std::invalid_argument("unknown model kind '" + text + "'");
}

bool needs_big_m(ModelKind kind)
{
    return kind == ModelKind::transportation_full || kind == ModelKind::transportation_reduced ||
           kind == ModelKind::transshipment || kind == ModelKind::covering;
}

int LinearModel::add_variable(std::string name, VarType type)
{
    variables.push_back({std::move(name), type});
    return static_cast<int>(variables.size()) - 1;
}

int LinearModel::find(const std::string& name) const
{
    for (std::size_t v = 0; v < variables.size(); ++v)
        if (variables[v].name == name) return static_cast<int>(v);
    return -1;
}

int LinearModel::binary_count() const
{
    int out = 0;
    for (const auto& v : variables) out += v.type == VarType::binary ? 1 : 0;
    return out;
}

int LinearModel::continuous_count() const
{
    return static_cast<int>(variables.size()) - binary_count();
}

namespace {

std::string render(Decimal d)
{
    return format_scaled(d.units, d.scale);
}

void write_terms(std::ostringstream& out, const LinearModel& model, const std::vector<Term>& terms)
{
    if (terms.empty()) {
        out << " 0";
        return;
    }
    for (std::size_t a = 0; a < terms.size(); ++a) {
        if (a > 0 && a % 8 == 0) out << "\n   ";
        const auto& t = terms[a];
        const bool negative = t.coef.units < 0;
        if (a > 0 || negative) out << (negative ? " -" : " +");
        const Decimal magnitude{negative ? -t.coef.units : t.coef.units, t.coef.scale};
        if (!(magnitude.units == pow10(magnitude.scale))) out << ' ' << render(magnitude);
        out << ' ' << model.variables[t.var].name;
    }
}

std::string idx(std::initializer_list<int> parts)
{
    std::string out;
    for (int p : parts) out += "_" + std::to_string(p + 1);
    return out;
}

Decimal heat(const MatchesInstance& inst, Heat units)
{
    return {units, inst.scale()};
}

const Decimal kOne{1, 0};

Term neg(int var, Decimal coef)
{
    return {var, {-coef.units, coef.scale}};
}

void require_single_interval(const MatchesInstance& inst)
{
    if (inst.k() != 1) throw std::invalid_argument("single-interval models need exactly one temperature interval");
}

void transportation(const MatchesInstance& inst, const BigMTable& bigm, bool full, LinearModel& model)
{
    const int n = inst.n();
    const int m = inst.m();
    const int k = inst.k();
    std::vector<int> y(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            y[i * m + j] = model.add_variable("y" + idx({i, j}), VarType::binary);
            model.objective.push_back({y[i * m + j], kOne});
        }
    // q[i][s][j][t], -1 when omitted
    std::vector<int> q(static_cast<std::size_t>(n) * k * m * k, -1);
    auto at = [&](int i, int s, int j, int t) -> int& { return q[((static_cast<std::size_t>(i) * k + s) * m + j) * k + t]; };
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < k; ++s)
            for (int j = 0; j < m; ++j)
                for (int t = 0; t < k; ++t)
                    if (full || s <= t) at(i, s, j, t) = model.add_variable("q" + idx({i, s, j, t}), VarType::continuous);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < k; ++s) {
            Constraint row{"hot" + idx({i, s}), {}, RowSense::eq, heat(inst, inst.sigma(i, s))};
            for (int j = 0; j < m; ++j)
                for (int t = 0; t < k; ++t)
                    if (at(i, s, j, t) >= 0) row.terms.push_back({at(i, s, j, t), kOne});
            model.constraints.push_back(std::move(row));
        }
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < k; ++t) {
            Constraint row{"cold" + idx({j, t}), {}, RowSense::eq, heat(inst, inst.delta(j, t))};
            for (int i = 0; i < n; ++i)
                for (int s = 0; s < k; ++s)
                    if (at(i, s, j, t) >= 0) row.terms.push_back({at(i, s, j, t), kOne});
            model.constraints.push_back(std::move(row));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Constraint row{"bigm" + idx({i, j}), {}, RowSense::le, {0, 0}};
            for (int s = 0; s < k; ++s)
                for (int t = 0; t < k; ++t)
                    if (at(i, s, j, t) >= 0) row.terms.push_back({at(i, s, j, t), kOne});
            row.terms.push_back(neg(y[i * m + j], heat(inst, bigm(i, j))));
            model.constraints.push_back(std::move(row));
        }
    if (full)
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < k; ++s)
                for (int j = 0; j < m; ++j)
                    for (int t = 0; t < s; ++t)
                        model.constraints.push_back(
                            {"thermo" + idx({i, s, j, t}), {{at(i, s, j, t), kOne}}, RowSense::eq, {0, 0}});
}

void transshipment(const MatchesInstance& inst, const BigMTable& bigm, LinearModel& model)
{
    const int n = inst.n();
    const int m = inst.m();
    const int k = inst.k();
    std::vector<int> y(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            y[i * m + j] = model.add_variable("y" + idx({i, j}), VarType::binary);
            model.objective.push_back({y[i * m + j], kOne});
        }
    std::vector<int> q(static_cast<std::size_t>(n) * m * k);
    auto at = [&](int i, int j, int t) -> int& { return q[(static_cast<std::size_t>(i) * m + j) * k + t]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int t = 0; t < k; ++t) at(i, j, t) = model.add_variable("q" + idx({i, j, t}), VarType::continuous);
    std::vector<int> r(static_cast<std::size_t>(n) * k);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < k; ++s) r[i * k + s] = model.add_variable("r" + idx({i, s}), VarType::continuous);
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < k; ++s) {
            Constraint row{"hot" + idx({i, s}), {}, RowSense::eq, heat(inst, inst.sigma(i, s))};
            for (int j = 0; j < m; ++j) row.terms.push_back({at(i, j, s), kOne});
            row.terms.push_back({r[i * k + s], kOne});
            if (s > 0) row.terms.push_back(neg(r[i * k + s - 1], kOne));
            model.constraints.push_back(std::move(row));
        }
    for (int i = 0; i < n; ++i)
        model.constraints.push_back({"rend" + idx({i}), {{r[i * k + k - 1], kOne}}, RowSense::eq, {0, 0}});
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < k; ++t) {
            Constraint row{"cold" + idx({j, t}), {}, RowSense::eq, heat(inst, inst.delta(j, t))};
            for (int i = 0; i < n; ++i) row.terms.push_back({at(i, j, t), kOne});
            model.constraints.push_back(std::move(row));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Constraint row{"bigm" + idx({i, j}), {}, RowSense::le, {0, 0}};
            for (int t = 0; t < k; ++t) row.terms.push_back({at(i, j, t), kOne});
            row.terms.push_back(neg(y[i * m + j], heat(inst, bigm(i, j))));
            model.constraints.push_back(std::move(row));
        }
}

void bins(const MatchesInstance& inst, bool conservation, LinearModel& model)
{
    require_single_interval(inst);
    const int n = inst.n();
    const int m = inst.m();
    const int count = conservation ? std::min(n, m) : m;
    std::vector<int> x(count);
    std::vector<int> w(static_cast<std::size_t>(n) * count);
    std::vector<int> z(static_cast<std::size_t>(m) * count);
    for (int b = 0; b < count; ++b) x[b] = model.add_variable("x" + idx({b}), VarType::binary);
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < count; ++b) w[i * count + b] = model.add_variable("w" + idx({i, b}), VarType::binary);
    for (int j = 0; j < m; ++j)
        for (int b = 0; b < count; ++b) z[j * count + b] = model.add_variable("z" + idx({j, b}), VarType::binary);

    if (conservation) {
        model.minimize = false;
        for (int b = 0; b < count; ++b) model.objective.push_back({x[b], kOne});
        model.notes.push_back("matches = n + m - objective = " + std::to_string(n + m) + " - objective");
    } else {
        // Fewest matches: hot streams used plus cold streams minus non-empty bins.
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < count; ++b) model.objective.push_back({w[i * count + b], kOne});
        for (int b = 0; b < count; ++b) model.objective.push_back(neg(x[b], kOne));
        model.notes.push_back("matches = objective + m = objective + " + std::to_string(m));
    }
    for (int b = 0; b < count; ++b) {
        if (conservation) {
            Constraint row{"hotuse" + idx({b}), {{x[b], kOne}}, RowSense::le, {0, 0}};
            for (int i = 0; i < n; ++i) row.terms.push_back(neg(w[i * count + b], kOne));
            model.constraints.push_back(std::move(row));
        }
        Constraint row{"colduse" + idx({b}), {{x[b], kOne}}, RowSense::le, {0, 0}};
        for (int j = 0; j < m; ++j) row.terms.push_back(neg(z[j * count + b], kOne));
        model.constraints.push_back(std::move(row));
    }
    for (int i = 0; i < n; ++i) {
        Constraint row{"hotbin" + idx({i}), {}, conservation ? RowSense::eq : RowSense::le, kOne};
        for (int b = 0; b < count; ++b) row.terms.push_back({w[i * count + b], kOne});
        model.constraints.push_back(std::move(row));
    }
    for (int j = 0; j < m; ++j) {
        Constraint row{"coldbin" + idx({j}), {}, RowSense::eq, kOne};
        for (int b = 0; b < count; ++b) row.terms.push_back({z[j * count + b], kOne});
        model.constraints.push_back(std::move(row));
    }
    for (int b = 0; b < count; ++b) {
        Constraint row{"binheat" + idx({b}), {}, conservation ? RowSense::eq : RowSense::ge, {0, 0}};
        for (int i = 0; i < n; ++i) row.terms.push_back({w[i * count + b], heat(inst, inst.sigma(i, 0))});
        for (int j = 0; j < m; ++j) row.terms.push_back(neg(z[j * count + b], heat(inst, inst.delta(j, 0))));
        model.constraints.push_back(std::move(row));
    }
}

void covering(const MatchesInstance& inst, const BigMTable& bigm, LinearModel& model)
{
    const int n = inst.n();
    const int m = inst.m();
    std::vector<int> y(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            y[i * m + j] = model.add_variable("y" + idx({i, j}), VarType::binary);
            model.objective.push_back({y[i * m + j], kOne});
        }
    for (int i = 0; i < n; ++i) {
        Constraint row{"hotcover" + idx({i}), {}, RowSense::ge, heat(inst, inst.hot_total(i))};
        for (int j = 0; j < m; ++j) row.terms.push_back({y[i * m + j], heat(inst, bigm(i, j))});
        model.constraints.push_back(std::move(row));
    }
    for (int j = 0; j < m; ++j) {
        Constraint row{"coldcover" + idx({j}), {}, RowSense::ge, heat(inst, inst.cold_total(j))};
        for (int i = 0; i < n; ++i) row.terms.push_back({y[i * m + j], heat(inst, bigm(i, j))});
        model.constraints.push_back(std::move(row));
    }
}

}  // namespace

ModelCounts analytic_counts(ModelKind kind, long n, long m, long k)
{
    switch (kind) {
    case ModelKind::transportation_full:
        return {n * m, n * m * k * k, n * k + m * k + n * m + n * m * k * (k - 1) / 2};
    case ModelKind::transportation_reduced:
        return {n * m, n * m * k * (k + 1) / 2, n * k + m * k + n * m};
    case ModelKind::transshipment:
        return {n * m, n * m * k + n * k, n * k + n + m * k + n * m};
    case ModelKind::single_interval_bins: {
        const long b = std::min(n, m);
        return {b + n * b + m * b, 0, 3 * b + n + m};
    }
    case ModelKind::single_interval_bins_nocons:
        return {m + n * m + m * m, 0, 2 * m + n + m};
    case ModelKind::covering:
        return {n * m, 0, n + m};
    }
    return {};
}

LinearModel build_model(const MatchesInstance& inst, ModelKind kind, const BigMTable* bigm)
{
    inst.require_feasible();
    if (needs_big_m(kind)) {
        if (!bigm) throw std::invalid_argument(to_string(kind) + " model needs big-M values");
        if (bigm->bound.rows() != inst.n() || bigm->bound.cols() != inst.m())
            throw std::invalid_argument("big-M table does not match the instance");
    }
    LinearModel model;
    model.title = to_string(kind);
    model.notes.push_back("instance: " + (inst.name.empty() ? std::string("unnamed") : inst.name));
    model.notes.push_back("hot streams " + std::to_string(inst.n()) + ", cold streams " + std::to_string(inst.m()) +
                          ", intervals " + std::to_string(inst.k()));
    if (bigm && needs_big_m(kind)) model.notes.push_back("big-M: " + to_string(bigm->method.empty() ? BigMMethod::trivial : bigm->method.front()));
    switch (kind) {
    case ModelKind::transportation_full: transportation(inst, *bigm, true, model); break;
    case ModelKind::transportation_reduced: transportation(inst, *bigm, false, model); break;
    case ModelKind::transshipment: transshipment(inst, *bigm, model); break;
    case ModelKind::single_interval_bins: bins(inst, true, model); break;
    case ModelKind::single_interval_bins_nocons: bins(inst, false, model); break;
    case ModelKind::covering: covering(inst, *bigm, model); break;
    }
    return model;
}

std::string LinearModel::to_lp() const
{
    std::ostringstream out;
    out << "\\ heatmatch " << title << "\n";
    for (const auto& note : notes) out << "\\ " << note << "\n";
    out << (minimize ? "Minimize\n" : "Maximize\n") << " obj:";
    write_terms(out, *this, objective);
    out << "\nSubject To\n";
    for (const auto& row : constraints) {
        out << ' ' << row.name << ':';
        write_terms(out, *this, row.terms);
        out << (row.sense == RowSense::le ? " <= " : row.sense == RowSense::ge ? " >= " : " = ") << render(row.rhs)
            << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : variables)
        if (v.type == VarType::continuous) out << ' ' << v.name << " >= 0\n";
    out << "Binaries\n";
    int on_line = 0;
    for (const auto& v : variables) {
        if (v.type != VarType::binary) continue;
        out << ' ' << v.name;
        if (++on_line == 8) {
            out << '\n';
            on_line = 0;
        }
    }
    if (on_line > 0) out << '\n';
    out << "End\n";
    return out.str();
}

std::string export_model(const MatchesInstance& inst, ModelKind kind, const BigMTable* bigm)
{
    return build_model(inst, kind, bigm).to_lp();
}

namespace {

using Big = boost::multiprecision::cpp_int;

constexpr int kCommonScale = 14;

Big at_common_scale(const Big& units, int scale)
{
    Big out = units;
    for (int s = scale; s < kCommonScale; ++s) out *= 10;
    return out;
}

}  // namespace

std::vector<std::string> violated(const LinearModel& model, const Assignment& values)
{
    std::vector<Decimal> x(model.variables.size());
    for (const auto& [name, value] : values) {
        const int v = model.find(name);
        if (v < 0) throw std::invalid_argument("assignment names unknown variable " + name);
        if (value.scale > 7) throw std::invalid_argument("assignment value has more than 7 decimals");
        x[v] = value;
    }
    std::vector<std::string> out;
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (x[v].units < 0) out.push_back("bounds:" + model.variables[v].name);
        if (model.variables[v].type == VarType::binary && !(x[v].units == 0 || x[v].units == pow10(x[v].scale)))
            out.push_back("binary:" + model.variables[v].name);
    }
    for (const auto& row : model.constraints) {
        Big lhs = 0;
        for (const auto& t : row.terms) {
            if (t.coef.scale + x[t.var].scale > kCommonScale) throw std::invalid_argument("coefficient scale too large");
            lhs += at_common_scale(Big(t.coef.units) * Big(x[t.var].units), t.coef.scale + x[t.var].scale);
        }
        const Big rhs = at_common_scale(Big(row.rhs.units), row.rhs.scale);
        const bool ok = row.sense == RowSense::le ? lhs <= rhs : row.sense == RowSense::ge ? lhs >= rhs : lhs == rhs;
        if (!ok) out.push_back(row.name);
    }
    return out;
}

Assignment transportation_assignment(const MatchesInstance& inst, const Solution& sol)
{
    Assignment out;
    for (const auto& [i, j] : sol.matches) out["y" + idx({i, j})] = kOne;
    for (const auto& f : sol.q.flows())
        out["q" + idx({f.hot, f.hot_interval, f.cold, f.cold_interval})] = heat(inst, f.heat);
    return out;
}

Assignment transshipment_assignment(const MatchesInstance& inst, const Solution& sol)
{
    Assignment out;
    for (const auto& [i, j] : sol.matches) out["y" + idx({i, j})] = kOne;
    std::map<std::array<int, 3>, Heat> q;
    HeatMatrix sent = HeatMatrix::Zero(inst.n(), inst.k());
    for (const auto& f : sol.q.flows()) {
        q[{f.hot, f.cold, f.cold_interval}] += f.heat;
        sent(f.hot, f.cold_interval) += f.heat;
    }
    for (const auto& [key, value] : q) out["q" + idx({key[0], key[1], key[2]})] = heat(inst, value);
    for (int i = 0; i < inst.n(); ++i) {
        Heat residual = 0;
        for (int s = 0; s < inst.k(); ++s) {
            residual += inst.sigma(i, s) - sent(i, s);
            if (residual != 0) out["r" + idx({i, s})] = heat(inst, residual);
        }
    }
    return out;
}

}  // namespace heatmatch
