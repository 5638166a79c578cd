#include "allroots/benchmarks.hpp"

#include "allroots/format.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace allroots {

namespace {

constexpr std::array<std::pair<double, int>, 13> kReactorCounts = {{
    {0.935, 1}, {0.940, 1}, {0.945, 3}, {0.950, 5}, {0.955, 5}, {0.960, 7}, {0.965, 5},
    {0.970, 5}, {0.975, 5}, {0.980, 5}, {0.985, 5}, {0.990, 1}, {0.995, 1},
}};

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
    for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
        text.replace(pos, from.size(), to);
    return text;
}

std::string reactor_text(std::string text, double r) {
    using namespace reactor_constants;
    // longest placeholders first
    text = replace_all(std::move(text), "{R}", format_double(r));
    text = replace_all(std::move(text), "{G}", format_double(gamma));
    text = replace_all(std::move(text), "{D}", format_double(damkohler));
    text = replace_all(std::move(text), "{B1}", format_double(beta1));
    text = replace_all(std::move(text), "{B2}", format_double(beta2));
    return text;
}

bool same_solutions(const SolutionSet& a, const SolutionSet& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.solutions[i].coordinates != b.solutions[i].coordinates) return false;
    return true;
}

}  // namespace

std::string_view to_string(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::effati: return "effati";
        case BenchmarkId::girder_reduced: return "girder_reduced";
        case BenchmarkId::girder_raw3d: return "girder_raw3d";
        case BenchmarkId::reactor: return "reactor";
        case BenchmarkId::chen: return "chen";
    }
    return "unknown";
}

BenchmarkId parse_benchmark_id(std::string_view text) {
    for (auto id : {BenchmarkId::effati, BenchmarkId::girder_reduced, BenchmarkId::girder_raw3d, BenchmarkId::reactor,
                    BenchmarkId::chen})
        if (to_string(id) == text) return id;
    throw std::invalid_argument("unknown benchmark '" + std::string(text) +
                                "' (expected effati, girder_reduced, girder_raw3d, reactor or chen)");
}

BenchmarkProblem effati(double half_width, std::size_t points) {
    if (!(half_width > 0.0)) throw std::invalid_argument("effati half-width must be positive");
    BenchmarkProblem b;
    b.id = BenchmarkId::effati;
    b.parameter = half_width;
    b.domain = DomainGrid::uniform(2, -half_width, half_width, points);
    b.label = "effati[-" + format_short(half_width) + "," + format_short(half_width) + "]";
    if (half_width == 2.0) b.expected_solution_count = 1;
    if (half_width == 10.0) b.expected_solution_count = 13;
    if (half_width == 100.0) b.expected_solution_count = 127;
    return b;
}

BenchmarkProblem girder_reduced(std::size_t points) {
    return {BenchmarkId::girder_reduced, 0.0, 6, DomainGrid::uniform(2, -40.0, 40.0, points), "girder_reduced"};
}

BenchmarkProblem girder_raw3d(std::size_t points) {
    return {BenchmarkId::girder_raw3d, 0.0, std::nullopt, DomainGrid::uniform(3, -40.0, 40.0, points), "girder_raw3d"};
}

BenchmarkProblem reactor(double r, std::size_t points) {
    using namespace reactor_constants;
    if (!(r >= r_min - 1e-12 && r <= r_max + 1e-12))
        throw std::invalid_argument("reactor R=" + format_short(r) + " outside [0.935, 0.995]");
    BenchmarkProblem b;
    b.id = BenchmarkId::reactor;
    b.parameter = r;
    b.domain = DomainGrid::uniform(2, 0.0, 1.0, points);
    b.label = "reactor(R=" + format_short(r) + ")";
    for (auto [value, count] : kReactorCounts)
        if (std::fabs(value - r) < 1e-9) b.expected_solution_count = count;
    return b;
}

BenchmarkProblem chen(std::size_t points) {
    return {BenchmarkId::chen, 0.0, 6, DomainGrid::uniform(2, -10.0, 10.0, points), "chen"};
}

std::vector<double> reactor_sweep() {
    std::vector<double> values;
    for (int i = 0; i < 13; ++i) values.push_back((935.0 + 5.0 * i) / 1000.0);
    return values;
}

BenchmarkProblem make_benchmark(std::string_view id, std::optional<double> parameter, std::optional<std::size_t> points) {
    switch (parse_benchmark_id(id)) {
        case BenchmarkId::effati: return effati(parameter.value_or(2.0), points.value_or(500));
        case BenchmarkId::girder_reduced: return girder_reduced(points.value_or(500));
        case BenchmarkId::girder_raw3d: return girder_raw3d(points.value_or(150));
        case BenchmarkId::reactor:
            if (!parameter) throw std::invalid_argument("reactor benchmark needs R");
            return reactor(*parameter, points.value_or(500));
        case BenchmarkId::chen: return chen(points.value_or(500));
    }
    throw std::invalid_argument("unknown benchmark");
}

std::pair<Problem, SolverConfig> builtin_problem(const BenchmarkProblem& benchmark) {
    using Text = std::vector<std::string>;
    using Grid = std::vector<std::vector<std::string>>;
    SolverConfig config;
    config.grid = benchmark.domain;

    switch (benchmark.id) {
        case BenchmarkId::effati:
            return {Problem::from_text({"x1", "x2"},
                                       Text{"cos(2*x1)-cos(2*x2)-0.4", "2*(x2-x1)+sin(2*x2)-sin(2*x1)-1.2"},
                                       Grid{{"-2*sin(2*x1)", "2*sin(2*x2)"}, {"-2-2*cos(2*x1)", "2+2*cos(2*x2)"}},
                                       benchmark.label),
                    config};

        case BenchmarkId::girder_reduced: {
            const std::string x2 = "(2*x3-x1+165/(2*x3))";
            Text eqs{replace_all("x1*X2^3/12-(x1-2*x3)*(X2-2*x3)^3/12-9369", "X2", x2),
                     replace_all("2*(X2-x3)^2*(x1-x3)^2*x3/(X2+x1-2*x3)-6835", "X2", x2)};
            return {Problem::from_text({"x1", "x3"}, eqs, std::nullopt, benchmark.label), config};
        }

        case BenchmarkId::girder_raw3d:
            return {Problem::from_text({"x1", "x2", "x3"},
                                       Text{"x1*x2-(x1-2*x3)*(x2-2*x3)-165",
                                            "x1*x2^3/12-(x1-2*x3)*(x2-2*x3)^3/12-9369",
                                            "2*(x2-x3)^2*(x1-x3)^2*x3/(x2+x1-2*x3)-6835"},
                                       std::nullopt, benchmark.label),
                    config};

        case BenchmarkId::reactor: {
            const double r = benchmark.parameter;
            const std::string e1 = "exp(10*x1/(1+10*x1/{G}))";
            const std::string e2 = "exp(10*x2/(1+10*x2/{G}))";
            const std::string d1 = "10/(1+10*x1/{G})^2";
            const std::string d2 = "10/(1+10*x2/{G})^2";
            Text eqs{reactor_text("(1-{R})*({D}/(10*(1+{B1}))-x1)*" + e1 + "-x1", r),
                     reactor_text("x1-(1+{B2})*x2+(1-{R})*({D}/10-{B1}*x1-(1+{B2})*x2)*" + e2, r)};
            Grid jac{{reactor_text("(1-{R})*(-" + e1 + "+({D}/(10*(1+{B1}))-x1)*" + e1 + "*" + d1 + ")-1", r), "0"},
                     {reactor_text("1-(1-{R})*{B1}*" + e2, r),
                      reactor_text("-(1+{B2})+(1-{R})*(-(1+{B2})*" + e2 + "+({D}/10-{B1}*x1-(1+{B2})*x2)*" + e2 +
                                       "*" + d2 + ")",
                                   r)}};
            return {Problem::from_text({"x1", "x2"}, eqs, jac, benchmark.label), config};
        }

        case BenchmarkId::chen:
            return {Problem::from_text({"x1", "x2"}, Text{"exp(x1-x2)-sin(x1+x2)", "x1^2*x2^2-cos(x1+x2)"},
                                       Grid{{"exp(x1-x2)-cos(x1+x2)", "-exp(x1-x2)-cos(x1+x2)"},
                                            {"2*x1*x2^2+sin(x1+x2)", "2*x1^2*x2+sin(x1+x2)"}},
                                       benchmark.label),
                    config};
    }
    throw std::invalid_argument("unknown benchmark");
}

std::optional<bool> BenchmarkReport::pass() const {
    if (!expected_solution_count) return std::nullopt;
    return consistent && static_cast<int>(solution_count()) == *expected_solution_count;
}

BenchmarkReport run_benchmark(const BenchmarkProblem& benchmark, int repetitions, std::optional<SolverConfig> config) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    auto [problem, canonical] = builtin_problem(benchmark);
    const SolverConfig& cfg = config ? *config : canonical;

    BenchmarkReport report;
    report.label = benchmark.label;
    report.repetitions = repetitions;
    report.expected_solution_count = benchmark.expected_solution_count;

    std::vector<double> seconds;
    for (int rep = 0; rep < repetitions; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        SolutionSet s = find_all_roots(problem, cfg);
        auto t1 = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        if (rep == 0)
            report.solutions = std::move(s);
        else if (!same_solutions(report.solutions, s))
            report.consistent = false;
    }
    report.mean_seconds = std::accumulate(seconds.begin(), seconds.end(), 0.0) / repetitions;
    if (repetitions > 1) {
        double ss = 0.0;
        for (double t : seconds) ss += (t - report.mean_seconds) * (t - report.mean_seconds);
        report.stddev_seconds = std::sqrt(ss / (repetitions - 1));
    }
    return report;
}

}  // namespace allroots
