#include "allroots/cli.hpp"

#include "allroots/benchmarks.hpp"
#include "allroots/contours.hpp"
#include "allroots/format.hpp"
#include "allroots/output.hpp"
#include "allroots/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace allroots {

namespace {

struct Timed {
    SolutionSet solutions;
    TimingSummary timing;
};

Timed solve_repeatedly(const Problem& problem, const SolverConfig& cfg, int repetitions) {
    Timed t;
    std::vector<double> seconds;
    for (int rep = 0; rep < repetitions; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        auto s = find_all_roots(problem, cfg);
        auto t1 = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        if (rep == 0) t.solutions = std::move(s);
    }
    t.timing.repetitions = repetitions;
    t.timing.mean_seconds = std::accumulate(seconds.begin(), seconds.end(), 0.0) / repetitions;
    if (repetitions > 1) {
        double ss = 0.0;
        for (double s : seconds) ss += (s - t.timing.mean_seconds) * (s - t.timing.mean_seconds);
        t.timing.stddev_seconds = std::sqrt(ss / (repetitions - 1));
    }
    return t;
}

void emit(const Timed& result, const VariableSet& vars, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv)
        write_solutions_csv(out, result.solutions, vars);
    else
        write_solutions_jsonl(out, result.solutions, vars, result.timing);
}

void emit_to(const Timed& result, const VariableSet& vars, OutputFormat format,
             const std::optional<std::filesystem::path>& path, std::ostream& out) {
    if (!path) {
        emit(result, vars, format, out);
        return;
    }
    std::ofstream file(*path);
    if (!file) throw IoError(*path, "cannot open for writing");
    emit(result, vars, format, file);
    file.flush();
    if (!file) throw IoError(*path, "write failed");
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_error;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Problem problem = cfg.problem();
        const SolverConfig solver = cfg.solver_config();
        if (cfg.contours_path) dump_contours(problem, solver.grid, *cfg.contours_path, cfg.workers);
        Timed result = solve_repeatedly(problem, solver, cfg.repetitions);
        emit_to(result, problem.variables(), cfg.format, cfg.output_path, out);
        return static_cast<int>(exit_ok);
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Find all real roots of a nonlinear system inside a box."};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve the system described by a JSON config file");
    std::string config_path;
    std::optional<std::size_t> points;
    std::optional<std::string> mode;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<int> repetitions;
    solve->add_option("config", config_path, "Config file")->required();
    solve->add_option("--points", points, "Override the point count on every axis");
    solve->add_option("--mode", mode, "pairwise or strict_paper");
    solve->add_option("--output", output, "Output path (default: stdout)");
    solve->add_option("--format", format, "csv or json");
    solve->add_option("--repetitions", repetitions, "Timed repetitions");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a built-in benchmark problem");
    std::string bench_id;
    std::optional<double> param;
    std::optional<std::string> contours_dir;
    bool check = false;
    bench->add_option("id", bench_id, "effati | girder_reduced | girder_raw3d | reactor | chen")->required();
    bench->add_option("--param", param, "effati half-width (2, 10, 100) or reactor R");
    bench->add_option("--points", points, "Points per axis");
    bench->add_option("--mode", mode, "pairwise or strict_paper");
    bench->add_option("--output", output, "Output path (default: stdout)");
    bench->add_option("--format", format, "csv or json");
    bench->add_option("--repetitions", repetitions, "Timed repetitions (default 50)");
    bench->add_option("--contours", contours_dir, "Also dump contour grids into this directory (2D only)");
    bench->add_flag("--check", check, "Exit with status 1 when the solution count differs from the reference");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Time the separable quadratic system over growing grids");
    SweepOptions sweep_opts;
    std::optional<double> max_seconds;
    sweep->add_option("--dims", sweep_opts.dimensions, "Dimensions to sweep (2..5)")->delimiter(',');
    sweep->add_option("--start", sweep_opts.start, "First point count (>= 20)");
    sweep->add_option("--stop", sweep_opts.stop, "Last point count");
    sweep->add_option("--step", sweep_opts.step, "Point count increment");
    sweep->add_option("--repetitions", sweep_opts.repetitions, "Timed repetitions per configuration");
    sweep->add_option("--budget-bytes", sweep_opts.memory_budget_bytes, "Memory budget per configuration");
    sweep->add_option("--max-seconds", max_seconds, "Skip larger grids once a run exceeds this mean time");
    sweep->add_option("--output", output, "Output path (default: stdout)");

    // contours
    auto* contours = app.add_subcommand("contours", "Dump 2D function grids for contour plotting");
    std::string contours_out;
    contours->add_option("config", config_path, "Config file")->required();
    contours->add_option("--out", contours_out, "Output directory")->required();
    contours->add_option("--points", points, "Override the point count on every axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_config_error;
    }

    auto apply_overrides = [&](RunConfig& cfg) {
        if (points) {
            if (*points < 3) throw ConfigError("--points", "at least 3 points required");
            for (auto& axis : cfg.domain) axis.points = *points;
        }
        if (mode) cfg.mode = parse_detection_mode(*mode);
        if (output) cfg.output_path = *output;
        if (format) cfg.format = parse_output_format(*format);
        if (repetitions) {
            if (*repetitions < 1) throw ConfigError("--repetitions", "must be at least 1");
            cfg.repetitions = *repetitions;
        }
    };

    if (*solve) {
        return guarded(err, [&] {
            RunConfig cfg = load_config(config_path);
            apply_overrides(cfg);
            return run(cfg, out, err);
        });
    }

    if (*contours) {
        return guarded(err, [&] {
            RunConfig cfg = load_config(config_path);
            if (points) {
                if (*points < 3) throw ConfigError("--points", "at least 3 points required");
                for (auto& axis : cfg.domain) axis.points = *points;
            }
            for (const auto& path : dump_contours(cfg.problem(), DomainGrid(cfg.domain), contours_out, cfg.workers))
                err << "wrote " << path.string() << '\n';
            return static_cast<int>(exit_ok);
        });
    }

    if (*bench) {
        return guarded(err, [&] {
            BenchmarkProblem b = make_benchmark(bench_id, param, points);
            auto [problem, cfg] = builtin_problem(b);
            if (mode) cfg.mode = parse_detection_mode(*mode);
            const int reps = repetitions.value_or(50);
            if (reps < 1) throw ConfigError("--repetitions", "must be at least 1");
            if (contours_dir) dump_contours(problem, cfg.grid, *contours_dir, cfg.workers);
            BenchmarkReport report = run_benchmark(b, reps, cfg);
            Timed result{report.solutions, {reps, report.mean_seconds, report.stddev_seconds}};
            std::optional<std::filesystem::path> out_path;
            if (output) out_path = *output;
            emit_to(result, problem.variables(), format ? parse_output_format(*format) : OutputFormat::csv, out_path,
                    out);

            err << report.label << ": " << report.solution_count() << " solutions";
            if (report.expected_solution_count) err << " (expected " << *report.expected_solution_count << ")";
            auto verdict = report.pass();
            if (verdict) err << (*verdict ? " PASS" : " FAIL");
            err << std::setprecision(4) << ", mean " << report.mean_seconds << " s, stddev " << report.stddev_seconds
                << " s over " << reps << " runs\n";
            return check && verdict && !*verdict ? static_cast<int>(exit_check_failed) : static_cast<int>(exit_ok);
        });
    }

    if (*sweep) {
        return guarded(err, [&] {
            sweep_opts.max_seconds = max_seconds;
            sweep_opts.validate();
            std::ofstream file;
            std::ostream* sink = &out;
            if (output) {
                file.open(*output);
                if (!file) throw IoError(*output, "cannot open for writing");
                sink = &file;
            }
            write_sweep_csv_header(*sink);
            scaling_sweep(sweep_opts, [&](const SweepRow& row) {
                write_sweep_csv_row(*sink, row);
                sink->flush();
            });
            if (output && !file) throw IoError(*output, "write failed");
            return static_cast<int>(exit_ok);
        });
    }
    return exit_config_error;
}

}  // namespace allroots
