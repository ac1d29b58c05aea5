#include "heatmatch/instance_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace heatmatch {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void only_fields(const json& obj, const std::string& where, const std::set<std::string>& allowed)
{
    if (!obj.is_object()) throw SchemaError(where.empty() ? "<root>" : where, "expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw SchemaError(where.empty() ? key : where + "." + key, "unknown field");
}

const json& required(const json& obj, const std::string& where, const std::string& key)
{
    if (!obj.contains(key)) throw SchemaError(where.empty() ? key : where + "." + key, "missing required field");
    return obj.at(key);
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) throw SchemaError(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError(where, "expected a finite number");
    return x;
}

std::string text(const json& obj, const std::string& where, const std::string& key)
{
    if (!obj.contains(key)) return {};
    if (!obj.at(key).is_string()) throw SchemaError(where + "." + key, "expected a string");
    return obj.at(key).get<std::string>();
}

Provenance provenance_of(const json& doc)
{
    Provenance out;
    if (!doc.contains("provenance")) return out;
    const auto& p = doc.at("provenance");
    if (!p.is_object()) throw SchemaError("provenance", "expected an object of strings");
    for (const auto& [key, value] : p.items()) {
        if (!value.is_string()) throw SchemaError("provenance." + key, "expected a string");
        out[key] = value.get<std::string>();
    }
    return out;
}

template <class Fn>
void each(const json& doc, const std::string& key, Fn fn)
{
    if (!doc.contains(key)) return;
    const auto& arr = doc.at(key);
    if (!arr.is_array()) throw SchemaError(key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) fn(arr[i], key + "[" + std::to_string(i) + "]");
}

NetworkDesignInstance parse_network(const json& doc)
{
    only_fields(doc, "", {"name", "provenance", "dt_min", "hot_streams", "cold_streams", "hot_utilities", "cold_utilities"});
    NetworkDesignInstance inst;
    inst.name = text(doc, "", "name");
    inst.provenance = provenance_of(doc);
    inst.dt_min = number(required(doc, "", "dt_min"), "dt_min");
    auto stream = [](StreamKind kind) {
        return [kind](const json& s, const std::string& where) {
            only_fields(s, where, {"name", "tin", "tout", "fcp"});
            ProcessStream p;
            p.kind = kind;
            p.name = text(s, where, "name");
            p.t_in = number(required(s, where, "tin"), where + ".tin");
            p.t_out = number(required(s, where, "tout"), where + ".tout");
            p.fcp = number(required(s, where, "fcp"), where + ".fcp");
            try {
                p.validate();
            } catch (const std::invalid_argument& e) {
                throw SchemaError(where, e.what());
            }
            return p;
        };
    };
    auto utility = [](StreamKind kind) {
        return [kind](const json& s, const std::string& where) {
            only_fields(s, where, {"name", "tin", "tout", "cost"});
            Utility u;
            u.kind = kind;
            u.name = text(s, where, "name");
            u.t_in = number(required(s, where, "tin"), where + ".tin");
            u.t_out = number(required(s, where, "tout"), where + ".tout");
            u.unit_cost = number(required(s, where, "cost"), where + ".cost");
            try {
                u.validate();
            } catch (const std::invalid_argument& e) {
                throw SchemaError(where, e.what());
            }
            return u;
        };
    };
    each(doc, "hot_streams", [&](const json& s, const std::string& w) { inst.hot_streams.push_back(stream(StreamKind::hot)(s, w)); });
    each(doc, "cold_streams", [&](const json& s, const std::string& w) { inst.cold_streams.push_back(stream(StreamKind::cold)(s, w)); });
    each(doc, "hot_utilities", [&](const json& s, const std::string& w) { inst.hot_utilities.push_back(utility(StreamKind::hot)(s, w)); });
    each(doc, "cold_utilities", [&](const json& s, const std::string& w) { inst.cold_utilities.push_back(utility(StreamKind::cold)(s, w)); });
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("<root>", e.what());
    }
    return inst;
}

Eigen::MatrixXd matrix(const json& doc, const std::string& key)
{
    const auto& rows = required(doc, "", key);
    if (!rows.is_array() || rows.empty()) throw SchemaError(key, "expected a non-empty array of rows");
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array()) throw SchemaError(key + "[" + std::to_string(i) + "]", "expected an array");
        if (i == 0) cols = rows[i].size();
        if (rows[i].size() != cols || cols == 0)
            throw SchemaError(key + "[" + std::to_string(i) + "]", "rows must share one non-zero length");
    }
    Eigen::MatrixXd out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t t = 0; t < cols; ++t) {
            const std::string where = key + "[" + std::to_string(i) + "][" + std::to_string(t) + "]";
            const double x = number(rows[i][t], where);
            if (x < 0) throw SchemaError(where, "heat must be non-negative");
            out(static_cast<long>(i), static_cast<long>(t)) = x;
        }
    return out;
}

std::vector<std::string> names(const json& doc, const std::string& key, long count)
{
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    const auto& arr = doc.at(key);
    if (!arr.is_array() || static_cast<long>(arr.size()) != count)
        throw SchemaError(key, "expected " + std::to_string(count) + " names");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) throw SchemaError(key + "[" + std::to_string(i) + "]", "expected a string");
        out.push_back(arr[i].get<std::string>());
    }
    return out;
}

MatchesInstance parse_matches(const json& doc)
{
    only_fields(doc, "", {"name", "provenance", "heat_decimals", "hot_names", "cold_names", "sigma", "delta"});
    const Eigen::MatrixXd sigma = matrix(doc, "sigma");
    const Eigen::MatrixXd delta = matrix(doc, "delta");
    if (sigma.cols() != delta.cols()) throw SchemaError("delta", "sigma and delta need the same interval count");
    MatchesInstance inst;
    if (doc.contains("heat_decimals")) {
        const auto& d = doc.at("heat_decimals");
        if (!d.is_number_integer() || d.get<int>() < 0 || d.get<int>() > 6)
            throw SchemaError("heat_decimals", "expected an integer from 0 to 6");
        const int scale = d.get<int>();
        const double f = static_cast<double>(pow10(scale));
        auto scaled = [&](const Eigen::MatrixXd& x, const std::string& key) {
            HeatMatrix out(x.rows(), x.cols());
            for (long i = 0; i < x.rows(); ++i)
                for (long t = 0; t < x.cols(); ++t) {
                    const double v = x(i, t) * f;
                    const double r = std::round(v);
                    if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v)))
                        throw SchemaError(key + "[" + std::to_string(i) + "][" + std::to_string(t) + "]",
                                          "more decimals than heat_decimals allows");
                    out(i, t) = static_cast<Heat>(r);
                }
            return out;
        };
        HeatMatrix hot = scaled(sigma, "sigma");
        HeatMatrix cold = scaled(delta, "delta");
        inst = MatchesInstance(std::move(hot), std::move(cold), scale);
    } else {
        inst = MatchesInstance::from_decimal(sigma, delta);
    }
    auto hot = names(doc, "hot_names", sigma.rows());
    auto cold = names(doc, "cold_names", delta.rows());
    if (!hot.empty() || !cold.empty()) {
        if (hot.empty()) hot = inst.hot_names();
        if (cold.empty()) cold = inst.cold_names();
        inst.set_names(std::move(hot), std::move(cold));
    }
    inst.name = text(doc, "", "name");
    inst.provenance = provenance_of(doc);
    if (inst.total_supply() != inst.total_demand())
        throw SchemaError("delta", "total supply " + format_scaled(inst.total_supply(), inst.scale()) +
                                       " differs from total demand " + format_scaled(inst.total_demand(), inst.scale()));
    return inst;
}

void write_file(const std::filesystem::path& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
}

// Scaled heat written as a JSON number with exactly the decimals it needs.
ordered_json decimal(Heat units, int scale)
{
    return ordered_json::parse(format_scaled(units, scale));
}

}  // namespace

MatchesInstance InstanceFile::to_matches(PartitionOptions options) const
{
    if (matches) return *matches;
    if (!network) throw std::logic_error("empty instance file");
    return derive_matches_instance(*network, options);
}

InstanceFile parse_instance(const std::string& body)
{
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw SchemaError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("<root>", "expected an object");
    InstanceFile out;
    if (doc.contains("sigma") || doc.contains("delta"))
        out.matches = parse_matches(doc);
    else
        out.network = parse_network(doc);
    return out;
}

InstanceFile load_instance(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
}

std::string to_json(const NetworkDesignInstance& inst)
{
    ordered_json doc;
    if (!inst.name.empty()) doc["name"] = inst.name;
    if (!inst.provenance.empty()) doc["provenance"] = inst.provenance;
    doc["dt_min"] = inst.dt_min;
    auto streams = [](const std::vector<ProcessStream>& list) {
        ordered_json arr = ordered_json::array();
        for (const auto& s : list) {
            ordered_json o;
            if (!s.name.empty()) o["name"] = s.name;
            o["tin"] = s.t_in;
            o["tout"] = s.t_out;
            o["fcp"] = s.fcp;
            arr.push_back(o);
        }
        return arr;
    };
    auto utilities = [](const std::vector<Utility>& list) {
        ordered_json arr = ordered_json::array();
        for (const auto& u : list) {
            ordered_json o;
            if (!u.name.empty()) o["name"] = u.name;
            o["tin"] = u.t_in;
            o["tout"] = u.t_out;
            o["cost"] = u.unit_cost;
            arr.push_back(o);
        }
        return arr;
    };
    doc["hot_streams"] = streams(inst.hot_streams);
    doc["cold_streams"] = streams(inst.cold_streams);
    doc["hot_utilities"] = utilities(inst.hot_utilities);
    doc["cold_utilities"] = utilities(inst.cold_utilities);
    return doc.dump(2) + "\n";
}

std::string to_json(const MatchesInstance& inst)
{
    ordered_json doc;
    if (!inst.name.empty()) doc["name"] = inst.name;
    if (!inst.provenance.empty()) doc["provenance"] = inst.provenance;
    doc["heat_decimals"] = inst.scale();
    doc["hot_names"] = inst.hot_names();
    doc["cold_names"] = inst.cold_names();
    auto rows = [&](const HeatMatrix& x) {
        ordered_json arr = ordered_json::array();
        for (long i = 0; i < x.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (long t = 0; t < x.cols(); ++t) row.push_back(decimal(x(i, t), inst.scale()));
            arr.push_back(row);
        }
        return arr;
    };
    doc["sigma"] = rows(inst.sigma());
    doc["delta"] = rows(inst.delta());
    return doc.dump(2) + "\n";
}

void save_instance(const NetworkDesignInstance& inst, const std::filesystem::path& path)
{
    write_file(path, to_json(inst));
}

void save_instance(const MatchesInstance& inst, const std::filesystem::path& path)
{
    write_file(path, to_json(inst));
}

}  // namespace heatmatch
