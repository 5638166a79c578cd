#include "allroots/run_config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace allroots {

using nlohmann::json;

std::string_view to_string(OutputFormat format) { return format == OutputFormat::json ? "json" : "csv"; }

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json" || text == "jsonl") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path, "missing required key");
    return *it;
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
}

long long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<long long>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
    return v.get<bool>();
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

template <typename Fn>
auto rethrow_as_config(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

}  // namespace

RunConfig parse_config(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
    reject_unknown(doc, "",
                   {"label", "equations", "variables", "jacobian", "domain", "mode", "newton", "round_decimals",
                    "keep_out_of_domain", "output", "contours", "repetitions", "workers"});

    RunConfig cfg;
    if (doc.contains("label")) cfg.label = as_string(doc["label"], "label");
    cfg.equations = string_list(require(doc, "equations", "equations"), "equations");
    cfg.variables = string_list(require(doc, "variables", "variables"), "variables");
    if (cfg.equations.empty()) throw ConfigError("equations", "at least one equation is required");
    if (cfg.equations.size() != cfg.variables.size())
        throw ConfigError("equations", "equation/variable count mismatch (" + std::to_string(cfg.equations.size()) +
                                           " equations, " + std::to_string(cfg.variables.size()) + " variables)");
    const std::size_t n = cfg.variables.size();

    if (doc.contains("jacobian")) {
        const json& jac = doc["jacobian"];
        if (!jac.is_array() || jac.size() != n) throw ConfigError("jacobian", "expected an n x n array of strings");
        cfg.jacobian.emplace();
        for (std::size_t i = 0; i < n; ++i) {
            std::string row_path = "jacobian[" + std::to_string(i) + "]";
            auto row = string_list(jac[i], row_path);
            if (row.size() != n) throw ConfigError(row_path, "expected " + std::to_string(n) + " entries");
            cfg.jacobian->push_back(std::move(row));
        }
    }

    const json& domain = require(doc, "domain", "domain");
    if (!domain.is_array()) throw ConfigError("domain", "expected an array of axes");
    if (domain.size() != n)
        throw ConfigError("domain", "expected " + std::to_string(n) + " axes, got " + std::to_string(domain.size()));
    for (std::size_t k = 0; k < n; ++k) {
        std::string path = "domain[" + std::to_string(k) + "]";
        const json& axis = domain[k];
        if (!axis.is_object()) throw ConfigError(path, "expected an object");
        reject_unknown(axis, path, {"lower", "upper", "points"});
        AxisSpec spec;
        spec.lower = as_number(require(axis, "lower", path + ".lower"), path + ".lower");
        spec.upper = as_number(require(axis, "upper", path + ".upper"), path + ".upper");
        long long points = as_integer(require(axis, "points", path + ".points"), path + ".points");
        if (points < 3) throw ConfigError(path + ".points", "at least 3 points required, got " + std::to_string(points));
        spec.points = static_cast<std::size_t>(points);
        rethrow_as_config(path, [&] {
            spec.validate();
            return 0;
        });
        cfg.domain.push_back(spec);
    }

    if (doc.contains("mode"))
        cfg.mode = rethrow_as_config("mode", [&] { return parse_detection_mode(as_string(doc["mode"], "mode")); });

    if (doc.contains("newton")) {
        const json& nw = doc["newton"];
        if (!nw.is_object()) throw ConfigError("newton", "expected an object");
        reject_unknown(nw, "newton", {"residual_tol", "step_tol", "max_iterations", "divergence_bound", "jacobian"});
        if (nw.contains("residual_tol")) cfg.newton.residual_tol = as_number(nw["residual_tol"], "newton.residual_tol");
        if (nw.contains("step_tol")) cfg.newton.step_tol = as_number(nw["step_tol"], "newton.step_tol");
        if (nw.contains("divergence_bound"))
            cfg.newton.divergence_bound = as_number(nw["divergence_bound"], "newton.divergence_bound");
        if (nw.contains("max_iterations"))
            cfg.newton.max_iterations = static_cast<int>(as_integer(nw["max_iterations"], "newton.max_iterations"));
        if (nw.contains("jacobian"))
            cfg.newton.jacobian = rethrow_as_config(
                "newton.jacobian", [&] { return parse_jacobian_kind(as_string(nw["jacobian"], "newton.jacobian")); });
        rethrow_as_config("newton", [&] {
            cfg.newton.validate();
            return 0;
        });
        if (cfg.newton.jacobian == JacobianKind::analytic && !cfg.jacobian)
            throw ConfigError("newton.jacobian", "analytic Jacobian requested but no 'jacobian' entries given");
    }

    if (doc.contains("round_decimals")) {
        long long d = as_integer(doc["round_decimals"], "round_decimals");
        if (d < 0 || d > 15) throw ConfigError("round_decimals", "expected 0..15");
        cfg.round_decimals = static_cast<int>(d);
    }
    if (doc.contains("keep_out_of_domain"))
        cfg.keep_out_of_domain = as_bool(doc["keep_out_of_domain"], "keep_out_of_domain");

    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (!out.is_object()) throw ConfigError("output", "expected an object");
        reject_unknown(out, "output", {"format", "path"});
        if (out.contains("format"))
            cfg.format = rethrow_as_config(
                "output.format", [&] { return parse_output_format(as_string(out["format"], "output.format")); });
        if (out.contains("path")) cfg.output_path = as_string(out["path"], "output.path");
    }
    if (doc.contains("contours")) {
        const json& c = doc["contours"];
        if (!c.is_object()) throw ConfigError("contours", "expected an object");
        reject_unknown(c, "contours", {"path"});
        cfg.contours_path = as_string(require(c, "path", "contours.path"), "contours.path");
        if (n != 2) throw ConfigError("contours", "contour dump requires 2 variables");
    }
    if (doc.contains("repetitions")) {
        long long r = as_integer(doc["repetitions"], "repetitions");
        if (r < 1) throw ConfigError("repetitions", "must be at least 1");
        cfg.repetitions = static_cast<int>(r);
    }
    if (doc.contains("workers")) {
        long long w = as_integer(doc["workers"], "workers");
        if (w < 0) throw ConfigError("workers", "must be non-negative");
        cfg.workers = static_cast<unsigned>(w);
    }

    // Parse every expression now so that syntax errors surface as config errors.
    rethrow_as_config("variables", [&] { return VariableSet(cfg.variables); });
    VariableSet vars(cfg.variables);
    for (std::size_t i = 0; i < n; ++i)
        rethrow_as_config("equations[" + std::to_string(i) + "]", [&] { return parse(cfg.equations[i], vars); });
    if (cfg.jacobian)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rethrow_as_config("jacobian[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                                  [&] { return parse((*cfg.jacobian)[i][j], vars); });
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError(path, "error while reading config file");
    return parse_config(buf.str());
}

Problem RunConfig::problem() const { return Problem::from_text(variables, equations, jacobian, label); }

SolverConfig RunConfig::solver_config() const {
    SolverConfig s;
    s.grid = DomainGrid(domain);
    s.mode = mode;
    s.newton = newton;
    s.round_decimals = round_decimals;
    s.keep_out_of_domain = keep_out_of_domain;
    s.workers = workers;
    return s;
}

}  // namespace allroots
