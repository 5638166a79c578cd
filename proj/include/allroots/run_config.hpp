#pragma once

#include "allroots/detect.hpp"
#include "allroots/grid.hpp"
#include "allroots/problem.hpp"
#include "allroots/refine.hpp"
#include "allroots/solve.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace allroots {

/// Schema violation; `field()` is a path such as "domain[1].points".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class IoError : public std::runtime_error {
public:
    IoError(std::filesystem::path path, const std::string& message)
        : std::runtime_error(path.string() + ": " + message), path_(std::move(path)) {}
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

/// Everything needed to run one solve from a config file.
struct RunConfig {
    std::string label;
    std::vector<std::string> equations;
    std::vector<std::string> variables;
    std::optional<std::vector<std::vector<std::string>>> jacobian;
    std::vector<AxisSpec> domain;
    DetectionMode mode = DetectionMode::pairwise;
    NewtonOptions newton;
    int round_decimals = 6;
    bool keep_out_of_domain = false;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::filesystem::path> output_path;
    std::optional<std::filesystem::path> contours_path;
    int repetitions = 1;
    unsigned workers = 0;

    Problem problem() const;
    SolverConfig solver_config() const;
};

/// Parses and validates a JSON config document.
///
/// Keys: label, equations[], variables[], jacobian[][], domain[].{lower,upper,points},
/// mode, newton.{residual_tol,step_tol,max_iterations,divergence_bound,jacobian},
/// round_decimals, keep_out_of_domain, output.{format,path}, contours.path,
/// repetitions, workers. Point counts are required on every axis.
RunConfig parse_config(std::string_view source);

/// Reads and parses a config file; IoError when unreadable, ConfigError on schema problems.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace allroots
