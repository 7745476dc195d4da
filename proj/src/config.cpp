// config.cpp — JSON config parsing, validation, and overrides
#include "polab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace polab {

using nlohmann::json;

namespace {

constexpr const char* kTasks[] = {"eigen", "sweep", "table1", "spectrum", "classify",
                                  "oracle-check"};

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail("'" + section + "' must be a JSON object");
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end()) {
            fail("unknown field '" + item.key() + "' in '" + section + "'");
        }
    }
}

double get_number(const json& obj, const std::string& section, const char* key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail("'" + section + "." + key + "' must be a number");
    return v.get<double>();
}

int get_integer(const json& obj, const std::string& section, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail("'" + section + "." + key + "' must be an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& section, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail("'" + section + "." + key + "' must be a string");
    return v.get<std::string>();
}

bool is_system_param(const std::string& name) {
    static const char* names[] = {"omega_q", "omega_r", "g",      "omega_d",
                                  "Omega",   "gamma_q", "gamma_c"};
    return std::any_of(std::begin(names), std::end(names),
                       [&](const char* n) { return name == n; });
}

}  // namespace

std::vector<double> SweepAxis::grid() const {
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        values[static_cast<std::size_t>(k)] = start + (stop - start) * k / (count - 1);
    return values;
}

double SpectrumConfig::omega_c_rotating(double omega_d) const {
    return frame == "lab" ? omega_c - omega_d : omega_c;
}

std::vector<double> SpectrumConfig::delta_grid() const {
    std::vector<double> values(static_cast<std::size_t>(delta_count));
    for (int k = 0; k < delta_count; ++k)
        values[static_cast<std::size_t>(k)] =
            delta_start + (delta_stop - delta_start) * k / (delta_count - 1);
    return values;
}

std::string RunConfig::effective_format() const {
    if (!output.format.empty()) return output.format;
    return task == "classify" ? "json" : "csv";
}

void RunConfig::validate() const {
    if (std::find(std::begin(kTasks), std::end(kTasks), task) == std::end(kTasks)) {
        std::ostringstream msg;
        msg << "'task' must be one of";
        for (const char* t : kTasks) msg << " " << t;
        msg << "; got '" << task << "'";
        fail(msg.str());
    }
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("'params': ") + e.what());
    }
    if (n_max < 2) fail("'space.n_max' must be at least 2");

    for (std::size_t k = 0; k < axes.size(); ++k) {
        const SweepAxis& a = axes[k];
        const std::string where = "sweep.axes." + std::to_string(k);
        if (a.count < 2) fail("'" + where + ".count' must be at least 2");
        if (!std::isfinite(a.start) || !std::isfinite(a.stop) || !(a.start < a.stop))
            fail("'" + where + "' needs finite start < stop");
        if (a.param != "Delta" && !is_system_param(a.param))
            fail("'" + where + ".param' names no sweepable parameter: '" + a.param + "'");
        if (a.param == "Delta" && task != "eigen")
            fail("'" + where + "': axis 'Delta' is only available for task eigen");
    }
    if (task == "eigen") {
        if (axes.size() > 1) fail("task eigen takes at most one sweep axis");
        if (axes.size() == 1 && axes[0].param != "Delta")
            fail("task eigen sweeps the qubit-cavity detuning: name the axis 'Delta'");
    } else if (task == "sweep") {
        if (axes.empty() || axes.size() > 2) fail("task sweep needs one or two sweep axes");
    } else if (!axes.empty()) {
        fail("task " + task + " does not take sweep axes");
    }

    const std::string sec = "spectrum";
    if (!std::isfinite(spectrum.A_c) || spectrum.A_c <= 0.0)
        fail("'spectrum.A_c' must be a positive control amplitude");
    if (!std::isfinite(spectrum.A_p) || spectrum.A_p < 0.0)
        fail("'spectrum.A_p' must be a non-negative probe amplitude");
    if (spectrum.A_p >= spectrum.A_c)
        fail("'spectrum.A_p' must stay below 'spectrum.A_c' (weak probe)");
    if (!std::isfinite(spectrum.omega_c)) fail("'spectrum.omega_c' must be finite");
    if (spectrum.frame != "rotating" && spectrum.frame != "lab")
        fail("'spectrum.frame' must be 'rotating' or 'lab'");
    if (spectrum.delta_count < 2) fail("'spectrum.delta_count' must be at least 2");
    if (!std::isfinite(spectrum.delta_start) || !std::isfinite(spectrum.delta_stop) ||
        !(spectrum.delta_start < spectrum.delta_stop))
        fail("'spectrum' needs finite delta_start < delta_stop");
    for (double v : spectrum.Omega_values)
        if (!std::isfinite(v) || v < 0.0)
            fail("'spectrum.Omega_values' entries must be finite and non-negative");

    if (!output.format.empty() && output.format != "csv" && output.format != "json")
        fail("'output.format' must be 'csv' or 'json'");
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(doc, "config",
               {"task", "params", "space", "sweep", "spectrum", "output", "seed"});

    RunConfig c;
    if (!doc.contains("task")) fail("missing required field 'task'");
    if (!doc.at("task").is_string()) fail("'task' must be a string");
    c.task = doc.at("task").get<std::string>();

    if (doc.contains("params")) {
        const json& p = doc.at("params");
        check_keys(p, "params",
                   {"omega_q", "omega_r", "g", "omega_d", "Omega", "gamma_q", "gamma_c"});
        c.params.omega_q = get_number(p, "params", "omega_q", c.params.omega_q);
        c.params.omega_r = get_number(p, "params", "omega_r", c.params.omega_r);
        c.params.g = get_number(p, "params", "g", c.params.g);
        c.params.omega_d = get_number(p, "params", "omega_d", c.params.omega_d);
        c.params.Omega = get_number(p, "params", "Omega", c.params.Omega);
        c.params.gamma_q = get_number(p, "params", "gamma_q", c.params.gamma_q);
        c.params.gamma_c = get_number(p, "params", "gamma_c", c.params.gamma_c);
    }
    if (doc.contains("space")) {
        const json& s = doc.at("space");
        check_keys(s, "space", {"n_max"});
        c.n_max = get_integer(s, "space", "n_max", c.n_max);
    }
    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        check_keys(s, "sweep", {"axes"});
        if (s.contains("axes")) {
            if (!s.at("axes").is_array()) fail("'sweep.axes' must be an array");
            std::size_t k = 0;
            for (const json& a : s.at("axes")) {
                const std::string where = "sweep.axes." + std::to_string(k++);
                check_keys(a, where, {"param", "start", "stop", "count"});
                SweepAxis axis;
                axis.param = get_string(a, where, "param", "");
                axis.start = get_number(a, where, "start", 0.0);
                axis.stop = get_number(a, where, "stop", 0.0);
                axis.count = get_integer(a, where, "count", 0);
                c.axes.push_back(axis);
            }
        }
    }
    if (doc.contains("spectrum")) {
        const json& s = doc.at("spectrum");
        check_keys(s, "spectrum",
                   {"A_c", "A_p", "omega_c", "frame", "delta_start", "delta_stop",
                    "delta_count", "Omega_values"});
        c.spectrum.A_c = get_number(s, "spectrum", "A_c", c.spectrum.A_c);
        c.spectrum.A_p = get_number(s, "spectrum", "A_p", c.spectrum.A_p);
        c.spectrum.omega_c = get_number(s, "spectrum", "omega_c", c.spectrum.omega_c);
        c.spectrum.frame = get_string(s, "spectrum", "frame", c.spectrum.frame);
        c.spectrum.delta_start =
            get_number(s, "spectrum", "delta_start", c.spectrum.delta_start);
        c.spectrum.delta_stop = get_number(s, "spectrum", "delta_stop", c.spectrum.delta_stop);
        c.spectrum.delta_count =
            get_integer(s, "spectrum", "delta_count", c.spectrum.delta_count);
        if (s.contains("Omega_values")) {
            if (!s.at("Omega_values").is_array())
                fail("'spectrum.Omega_values' must be an array of numbers");
            for (const json& v : s.at("Omega_values")) {
                if (!v.is_number()) fail("'spectrum.Omega_values' must be an array of numbers");
                c.spectrum.Omega_values.push_back(v.get<double>());
            }
        }
    }
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        check_keys(o, "output", {"path", "format"});
        c.output.path = get_string(o, "output", "path", "");
        c.output.format = get_string(o, "output", "format", "");
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) fail("'seed' must be a non-negative integer");
        c.seed = doc.at("seed").get<unsigned>();
    }

    c.validate();
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string apply_override(const std::string& json_text, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        fail("override must look like key.path=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    std::string pointer;
    std::size_t begin = 0;
    while (begin <= path.size()) {
        const std::size_t dot = path.find('.', begin);
        const std::string segment =
            path.substr(begin, dot == std::string::npos ? std::string::npos : dot - begin);
        if (segment.empty()) fail("override path has an empty segment: '" + path + "'");
        pointer += "/" + segment;
        if (dot == std::string::npos) break;
        begin = dot + 1;
    }

    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    json parsed_value;
    try {
        parsed_value = json::parse(value);
    } catch (const json::parse_error&) {
        parsed_value = value;  // bare strings (e.g. task names, paths)
    }
    try {
        doc[json::json_pointer(pointer)] = parsed_value;
    } catch (const json::exception& e) {
        fail("cannot apply override '" + assignment + "': " + e.what());
    }
    return doc.dump();
}

std::string config_to_json(const RunConfig& c) {
    json doc;
    doc["task"] = c.task;
    doc["params"] = {{"omega_q", c.params.omega_q}, {"omega_r", c.params.omega_r},
                     {"g", c.params.g},             {"omega_d", c.params.omega_d},
                     {"Omega", c.params.Omega},     {"gamma_q", c.params.gamma_q},
                     {"gamma_c", c.params.gamma_c}};
    doc["space"] = {{"n_max", c.n_max}};
    if (!c.axes.empty()) {
        json axes = json::array();
        for (const SweepAxis& a : c.axes)
            axes.push_back({{"param", a.param},
                            {"start", a.start},
                            {"stop", a.stop},
                            {"count", a.count}});
        doc["sweep"] = {{"axes", axes}};
    }
    json spectrum = {{"A_c", c.spectrum.A_c},
                     {"A_p", c.spectrum.A_p},
                     {"omega_c", c.spectrum.omega_c},
                     {"frame", c.spectrum.frame},
                     {"delta_start", c.spectrum.delta_start},
                     {"delta_stop", c.spectrum.delta_stop},
                     {"delta_count", c.spectrum.delta_count}};
    if (!c.spectrum.Omega_values.empty()) spectrum["Omega_values"] = c.spectrum.Omega_values;
    doc["spectrum"] = spectrum;
    json output = json::object();
    if (!c.output.path.empty()) output["path"] = c.output.path;
    if (!c.output.format.empty()) output["format"] = c.output.format;
    if (!output.empty()) doc["output"] = output;
    doc["seed"] = c.seed;
    return doc.dump();
}

}  // namespace polab
