#include "allroots/output.hpp"

#include "allroots/format.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace allroots {

using nlohmann::json;

namespace {

json config_echo(const SolverConfig& cfg) {
    json axes = json::array();
    for (const auto& axis : cfg.grid.axes())
        axes.push_back({{"lower", axis.lower}, {"upper", axis.upper}, {"points", axis.points}});
    json echo = {
        {"mode", std::string(to_string(cfg.mode))},
        {"domain", axes},
        {"newton",
         {{"residual_tol", cfg.newton.residual_tol},
          {"step_tol", cfg.newton.step_tol},
          {"max_iterations", cfg.newton.max_iterations},
          {"divergence_bound", cfg.newton.divergence_bound},
          {"jacobian", std::string(to_string(cfg.newton.jacobian))}}},
        {"round_decimals", cfg.round_decimals},
        {"keep_out_of_domain", cfg.keep_out_of_domain},
    };
    if (cfg.domain_slack) echo["domain_slack"] = *cfg.domain_slack;
    return echo;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

void write_solutions_csv(std::ostream& out, const SolutionSet& solutions, const VariableSet& vars) {
    for (std::size_t k = 0; k < vars.size(); ++k) out << vars[k] << ',';
    out << "residual_norm,iterations\n";
    for (const auto& s : solutions.solutions) {
        for (double x : s.coordinates) out << format_double(x) << ',';
        out << format_double(s.residual_norm) << ',' << s.iterations << '\n';
    }
}

void write_solutions_jsonl(std::ostream& out, const SolutionSet& solutions, const VariableSet& vars,
                           const TimingSummary& timing) {
    // solution rows are written by hand to pin the 17-digit number format
    for (const auto& s : solutions.solutions) {
        out << "{\"x\":[";
        for (std::size_t k = 0; k < s.coordinates.size(); ++k) {
            if (k) out << ',';
            out << format_double(s.coordinates[k]);
        }
        out << "],\"residual_norm\":" << format_double(s.residual_norm) << ",\"iterations\":" << s.iterations << "}\n";
    }
    json trailer = {
        {"trailer", true},
        {"label", solutions.label},
        {"variables", vars.names()},
        {"solution_count", solutions.size()},
        {"candidate_count", solutions.candidate_count},
        {"config", config_echo(solutions.config)},
        {"timing",
         {{"repetitions", timing.repetitions},
          {"mean_seconds", timing.mean_seconds},
          {"stddev_seconds", timing.stddev_seconds}}},
    };
    out << trailer.dump() << '\n';
}

std::vector<SolutionRow> read_solutions_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("solutions CSV is empty");
    const auto header = split(line, ',');
    if (header.size() < 3 || header[header.size() - 2] != "residual_norm" || header.back() != "iterations")
        throw std::invalid_argument("unexpected solutions CSV header: " + line);
    const std::size_t n = header.size() - 2;

    std::vector<SolutionRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != n + 2) throw std::invalid_argument("wrong column count in row: " + line);
        SolutionRow row;
        for (std::size_t k = 0; k < n; ++k) row.coordinates.push_back(parse_double(fields[k]));
        row.residual_norm = parse_double(fields[n]);
        row.iterations = std::stoi(fields[n + 1]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SolutionRow> read_solutions_jsonl(std::istream& in) {
    std::vector<SolutionRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json obj = json::parse(line);
        if (obj.contains("trailer")) continue;
        SolutionRow row;
        row.coordinates = obj.at("x").get<std::vector<double>>();
        row.residual_norm = obj.at("residual_norm").get<double>();
        row.iterations = obj.at("iterations").get<int>();
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace allroots
