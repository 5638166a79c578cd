#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "allroots/refine.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace allroots;

namespace {

Problem make(const std::vector<std::string>& vars, const std::vector<std::string>& eqs,
             const std::optional<std::vector<std::vector<std::string>>>& jac = {}) {
    return Problem::from_text(vars, eqs, jac);
}

Problem effati() {
    return make({"x1", "x2"}, {"cos(2*x1)-cos(2*x2)-0.4", "2*(x2-x1)+sin(2*x2)-sin(2*x1)-1.2"},
                std::vector<std::vector<std::string>>{{"-2*sin(2*x1)", "2*sin(2*x2)"},
                                                      {"-2-2*cos(2*x1)", "2+2*cos(2*x2)"}});
}

RefinementResult converged_at(Point p) {
    RefinementResult r;
    r.status = NewtonStatus::converged;
    r.root = std::move(p);
    return r;
}

// Root of the cos/sin system in [-2,2]^2 without Newton: along f1 = 0 the
// second coordinate has the closed form x2 = acos(cos(2 x1) - 0.4) / 2, so f2
// restricted to that curve is a scalar function of x1 that we bisect.
Point effati_bisection_root() {
    auto x2_of = [](double x1) { return std::acos(std::cos(2 * x1) - 0.4) / 2; };
    auto g = [&](double x1) {
        double x2 = x2_of(x1);
        return 2 * (x2 - x1) + std::sin(2 * x2) - std::sin(2 * x1) - 1.2;
    };
    double lo = 0.05, hi = 0.3;
    REQUIRE(g(lo) * g(hi) < 0);
    for (int i = 0; i < 200 && hi - lo > 0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (g(lo) * g(mid) <= 0 ? hi : lo) = mid;
    }
    double x1 = 0.5 * (lo + hi);
    return {x1, x2_of(x1)};
}

}  // namespace

TEST_CASE("numeric_jacobian examples") {
    auto sq = make({"x"}, {"x^2"});
    std::vector<double> x{3.0};
    CHECK(std::fabs(numeric_jacobian(sq, x)(0, 0) - 6.0) <= 1e-6);

    auto lin = make({"a", "b", "c"}, {"3*a-2*b+7*c-1", "-10*a+0.5*c+4", "9.5*b-c"});
    std::vector<double> p{1.7, -8.2, 4.4};
    auto j = numeric_jacobian(lin, p);
    const double expected[3][3] = {{3, -2, 7}, {-10, 0, 0.5}, {0, 9.5, -1}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(std::fabs(j(r, c) - expected[r][c]) <= 1e-7);

    std::vector<double> origin{0.0, 0.0};
    auto e = numeric_jacobian(effati(), origin);
    CHECK(std::fabs(e(0, 0)) <= 1e-6);
    CHECK(std::fabs(e(0, 1)) <= 1e-6);
    CHECK(std::fabs(e(1, 0) + 4.0) <= 1e-6);
    CHECK(std::fabs(e(1, 1) - 4.0) <= 1e-6);
}

TEST_CASE("numeric_jacobian propagates non-finite entries") {
    auto p = make({"x"}, {"1/x"});
    std::vector<double> x{0.0};
    CHECK_FALSE(std::isfinite(numeric_jacobian(p, x)(0, 0)));
}

TEST_CASE("numeric_jacobian agrees with central differences") {
    auto p = make({"x1", "x2", "x3"},
                  {"sin(x1)*x2+x3^2", "exp(0.2*x1-0.1*x3)*cos(x2)", "atan(x1*x2)+sqrt(1+x3^2)*x1"});
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x{u(rng), u(rng), u(rng)};
        auto fd = numeric_jacobian(p, x);
        for (std::size_t c = 0; c < 3; ++c) {
            const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(std::fabs(x[c]), 1.0);
            auto up = x, down = x;
            up[c] += h;
            down[c] -= h;
            auto fu = p.evaluate(up), fdn = p.evaluate(down);
            for (std::size_t r = 0; r < 3; ++r) {
                double cd = (fu[r] - fdn[r]) / (up[c] - down[c]);
                CHECK(std::fabs(fd(r, c) - cd) <= 1e-5 * std::max(std::fabs(cd), 1.0));
            }
        }
    }
}

TEST_CASE("lu_solve") {
    SquareMatrix a(3);
    const double m[3][3] = {{0, 2, 1}, {1, 1, 1}, {4, -1, 3}};  // needs pivoting
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = m[r][c];
    std::vector<double> x{1.5, -2.0, 0.25};
    std::vector<double> b(3, 0.0);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) b[r] += m[r][c] * x[c];
    REQUIRE(lu_solve(a, b));
    for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-14));

    SquareMatrix singular(2);
    singular(0, 0) = 1;
    singular(0, 1) = 2;
    singular(1, 0) = 2;
    singular(1, 1) = 4;
    std::vector<double> rhs{1, 1};
    CHECK_FALSE(lu_solve(singular, rhs));

    SquareMatrix bad(1);
    bad(0, 0) = std::nan("");
    std::vector<double> one{1};
    CHECK_FALSE(lu_solve(bad, one));
}

TEST_CASE("newton on a linear function is exact in one step") {
    auto p = make({"x"}, {"2*x-4"});
    std::vector<double> x0{10.0};
    auto r = newton_raphson(p, x0);
    REQUIRE(r.converged());
    CHECK(r.root[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.iterations == 1);
    CHECK(r.start == Point{10.0});
}

TEST_CASE("newton terminates on a rootless function") {
    auto p = make({"x"}, {"x^2+1"});
    std::vector<double> x0{1.0};
    auto r = newton_raphson(p, x0);
    CHECK_FALSE(r.converged());
    CHECK((r.status == NewtonStatus::non_converged || r.status == NewtonStatus::diverged ||
           r.status == NewtonStatus::singular_jacobian));
    CHECK(r.iterations <= 100);
}

TEST_CASE("newton reports a singular Jacobian") {
    auto p = make({"x", "y"}, {"x+y-1", "2*x+2*y-3"});
    std::vector<double> x0{0.0, 0.0};
    CHECK(newton_raphson(p, x0).status == NewtonStatus::singular_jacobian);

    auto flat = make({"x"}, {"1+0*x"});
    std::vector<double> s{3.0};
    CHECK(newton_raphson(flat, s).status == NewtonStatus::singular_jacobian);
}

TEST_CASE("newton reports divergence") {
    auto p = make({"x"}, {"exp(-x)"});  // iterates run off to +inf
    std::vector<double> x0{0.0};
    NewtonOptions o;
    o.max_iterations = 100000;
    o.divergence_bound = 10.0;  // residual is still ~4.5e-5 there
    auto r = newton_raphson(p, x0, o);
    CHECK(r.status == NewtonStatus::diverged);

    auto pole = make({"x"}, {"log(x)"});  // first step lands below zero
    std::vector<double> far{10.0};
    auto q = newton_raphson(pole, far);
    CHECK(q.status == NewtonStatus::diverged);
}

TEST_CASE("cos/sin system: Newton matches an independent bisection root") {
    auto oracle = effati_bisection_root();
    auto p = effati();
    // nearest node of the 500-point grid on [-2,2]^2
    const double h = 4.0 / 499.0;
    Point start{-2.0 + std::round((oracle[0] + 2.0) / h) * h, -2.0 + std::round((oracle[1] + 2.0) / h) * h};
    for (auto kind : {JacobianKind::analytic, JacobianKind::finite_difference}) {
        NewtonOptions o;
        o.jacobian = kind;
        auto r = newton_raphson(p, start, o);
        REQUIRE(r.converged());
        CHECK(r.residual_norm <= 1e-10);
        for (int k = 0; k < 2; ++k) CHECK(std::fabs(r.root[k] - oracle[k]) <= 1e-8 * std::fabs(oracle[k]));
    }
    CHECK(oracle[0] == doctest::Approx(0.15652007).epsilon(1e-7));
    CHECK(oracle[1] == doctest::Approx(0.49337637).epsilon(1e-7));
}

TEST_CASE("newton always terminates within max_iterations") {
    const std::vector<std::string> nasty{"atan(x)",        "abs(x)^0.3-0.1", "sin(1/x)",  "x^2",
                                         "exp(x)",         "1/x",            "x^3-2*x+2", "sqrt(x)-3",
                                         "log(abs(x))",    "tan(x)",         "x*0",       "cos(x)^2+1e-8"};
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (const auto& text : nasty) {
        auto p = make({"x"}, {text});
        for (int max_it : {1, 7, 100}) {
            NewtonOptions o;
            o.max_iterations = max_it;
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> x0{u(rng)};
                auto r = newton_raphson(p, x0, o);
                INFO(text << " from " << x0[0]);
                CHECK(r.iterations <= max_it);
                if (r.converged()) {
                    CHECK(std::isfinite(r.root[0]));
                    CHECK(r.residual_norm <= o.residual_tol);
                    CHECK(residual_norm(p, r.root) <= o.residual_tol);
                }
            }
        }
    }
}

TEST_CASE("converged roots pass independent re-evaluation") {
    auto p = make({"x1", "x2"}, {"exp(x1-x2)-sin(x1+x2)", "x1^2*x2^2-cos(x1+x2)"});
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int converged = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> x0{u(rng), u(rng)};
        auto r = newton_raphson(p, x0);
        if (!r.converged()) continue;
        ++converged;
        const double a = r.root[0], b = r.root[1];
        double f1 = std::exp(a - b) - std::sin(a + b);
        double f2 = a * a * b * b - std::cos(a + b);
        CHECK(std::max(std::fabs(f1), std::fabs(f2)) <= 1e-10);
    }
    CHECK(converged > 0);
}

TEST_CASE("quadratic convergence on x^2 - 4") {
    auto p = make({"x"}, {"x^2-4"}, std::vector<std::vector<std::string>>{{"2*x"}});
    std::vector<double> x0{3.0};
    NewtonOptions o;
    o.jacobian = JacobianKind::analytic;
    auto full = newton_raphson(p, x0, o);
    REQUIRE(full.converged());
    std::vector<double> residuals{residual_norm(p, x0)};
    for (int k = 1; k <= full.iterations; ++k) {
        NewtonOptions capped = o;
        capped.max_iterations = k;
        capped.residual_tol = 1e-300;
        capped.step_tol = 1e-300;
        auto r = newton_raphson(p, x0, capped);
        // capped runs stop as non-converged but still report their residual
        residuals.push_back(r.residual_norm);
    }
    REQUIRE(residuals.size() >= 4);
    const double floor = 8 * std::numeric_limits<double>::epsilon() * 4.0;
    for (std::size_t k = residuals.size() - 4; k + 1 < residuals.size(); ++k) {
        INFO("k=" << k << " r_k=" << residuals[k] << " r_k+1=" << residuals[k + 1]);
        CHECK(residuals[k + 1] <= 1.0 * residuals[k] * residuals[k] + floor);
    }
}

TEST_CASE("options are validated") {
    NewtonOptions o;
    CHECK_NOTHROW(o.validate());
    o.max_iterations = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = {};
    o.residual_tol = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = {};
    o.step_tol = -1;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);

    CHECK(parse_jacobian_kind("numeric") == JacobianKind::finite_difference);
    CHECK(parse_jacobian_kind("analytic") == JacobianKind::analytic);
}

TEST_CASE("rounded_key") {
    std::vector<double> x{1.0000004, -0.00000004, 2.5e-7};
    auto k = rounded_key(x, 6);
    CHECK(k[0] == 1.0);
    CHECK(k[1] == 0.0);
    CHECK_FALSE(std::signbit(k[1]));
    CHECK(k[2] == doctest::Approx(1e-6));
}

TEST_CASE("dedupe examples") {
    std::vector<RefinementResult> close{converged_at({1.0000001, 2.0}), converged_at({1.0000004, 2.0})};
    auto one = dedupe(close);
    REQUIRE(one.size() == 1);
    CHECK(one[0].key == Point{1.0, 2.0});
    CHECK(one[0].coordinates == Point{1.0000001, 2.0});
    CHECK(one[0].source == 0);

    RefinementResult failed;
    failed.status = NewtonStatus::non_converged;
    failed.root = {1.0, 1.0};
    std::vector<RefinementResult> none{failed};
    CHECK(dedupe(none).empty());

    std::vector<RefinementResult> two{converged_at({0.5, 0.5}), converged_at({-0.5, 0.5})};
    CHECK(dedupe(two).size() == 2);

    std::vector<RefinementResult> mixed{failed, converged_at({3.0}), converged_at({3.0})};
    auto m = dedupe(mixed);
    REQUIRE(m.size() == 1);
    CHECK(m[0].source == 1);
}

TEST_CASE("dedupe is idempotent") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> cluster(0, 9);
    std::uniform_real_distribution<double> jitter(-4e-7, 4e-7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RefinementResult> results;
        for (int i = 0; i < 60; ++i)
            results.push_back(converged_at({cluster(rng) * 0.37 + jitter(rng), cluster(rng) * 1.1 + jitter(rng)}));
        for (int decimals : {0, 3, 6}) {
            auto once = dedupe(results, decimals);
            auto twice = dedupe(std::span<const Solution>(once), decimals);
            REQUIRE(once.size() == twice.size());
            for (std::size_t i = 0; i < once.size(); ++i) {
                CHECK(once[i].coordinates == twice[i].coordinates);
                CHECK(once[i].key == twice[i].key);
            }
        }
    }
}

TEST_CASE("domain_filter") {
    auto grid = DomainGrid::uniform(2, -2.0, 2.0, 5);
    auto sols = dedupe(std::vector<RefinementResult>{converged_at({2.1, 0.0}), converged_at({2.0, 0.0}),
                                                     converged_at({2.0 + 1e-12, 0.5}), converged_at({0.0, -2.5})},
                       15);
    auto kept = domain_filter(sols, grid);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].coordinates == Point{2.0, 0.0});
    CHECK(kept[1].coordinates == Point{2.0 + 1e-12, 0.5});

    CHECK(domain_filter(sols, grid, 0.0).size() == 1);
    CHECK(domain_filter(sols, grid, 0.6).size() == 4);
}
