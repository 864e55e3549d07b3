#include "hyperwalk/io.hpp"

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

#ifndef HYPERWALK_VERSION_STRING
#define HYPERWALK_VERSION_STRING "0.0.0"
#endif

namespace hyperwalk::io {

using nlohmann::json;

std::string version() { return HYPERWALK_VERSION_STRING; }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_number(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

void only_keys(const json& j, const std::set<std::string>& allowed) {
    for (const auto& [k, _] : j.items())
        if (!allowed.count(k)) throw std::invalid_argument("unknown density key '" + k + "'");
}

}  // namespace

RadialProfile parse_density(const std::string& spec, int dim) {
    if (spec.rfind("bump:", 0) == 0) return make_bump(parse_number(spec.substr(5)), Dimension(dim));
    json j;
    try {
        j = json::parse(spec);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("density argument is neither bump:<eta_max> nor JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("density JSON must be an object");
    int d = dim;
    if (j.contains("dim")) {
        d = j.at("dim").get<int>();
        if (dim != 0 && d != dim) throw std::invalid_argument("density dim conflicts with --dim");
    }
    const std::string family = j.value("family", "");
    if (family == "bump") {
        only_keys(j, {"family", "eta_max", "dim"});
        return make_bump(j.at("eta_max").get<double>(), Dimension(d));
    }
    if (family == "table") {
        only_keys(j, {"family", "etas", "values", "dim"});
        return make_table(j.at("etas").get<std::vector<double>>(), j.at("values").get<std::vector<double>>(),
                          Dimension(d));
    }
    throw std::invalid_argument("unknown density family '" + family + "'");
}

std::string verdict_to_json(const Verdict& v, const std::string& config_json) {
    json j;
    j["name"] = v.name;
    j["statistic"] = v.statistic;
    j["threshold"] = v.threshold;
    j["slope"] = v.fitted_slope ? json(*v.fitted_slope) : json(nullptr);
    j["window"] = v.window ? json::array({v.window->first, v.window->second}) : json(nullptr);
    j["pass"] = v.pass;
    j["details"] = v.details;
    j["notes"] = v.notes.empty() ? json::object() : json(v.notes);
    j["seed"] = v.seed;
    j["config"] = json::parse(config_json);
    j["version"] = version();
    return j.dump(2);
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += "\r\n";
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw std::invalid_argument("csv row width mismatch");
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += format_double(r[i]);
        }
        out += "\r\n";
    }
    return out;
}

}  // namespace hyperwalk::io
