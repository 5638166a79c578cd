#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "allroots/grid.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace allroots;

namespace {

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

}  // namespace

TEST_CASE("spacing") {
    CHECK(spacing({-2.0, 2.0, 500}) == 4.0 / 499.0);
    CHECK(spacing({-2.0, 2.0, 500}) == doctest::Approx(8.01603e-3).epsilon(1e-6));
    CHECK(spacing({-10.0, 10.0, 21}) == 1.0);
}

TEST_CASE("axis validation") {
    CHECK_THROWS_AS(AxisSpec({0.0, 1.0, 2}).validate(), GridError);
    CHECK_THROWS_AS(DomainGrid({AxisSpec{0.0, 1.0, 2}}), GridError);
    CHECK_THROWS_AS(DomainGrid({AxisSpec{1.0, 1.0, 5}}), GridError);
    CHECK_THROWS_AS(DomainGrid({AxisSpec{2.0, 1.0, 5}}), GridError);
    CHECK_THROWS_AS(DomainGrid({AxisSpec{0.0, INFINITY, 5}}), GridError);
    CHECK_THROWS_AS(DomainGrid(std::vector<AxisSpec>{}), GridError);
    CHECK_NOTHROW(DomainGrid({AxisSpec{0.0, 1.0, 3}}));
}

TEST_CASE("multi_to_linear / linear_to_multi") {
    std::vector<std::size_t> d34{3, 4};
    std::vector<std::size_t> d555{5, 5, 5};
    CHECK(multi_to_linear(std::vector<std::size_t>{2, 1}, d34) == 9);
    CHECK(multi_to_linear(std::vector<std::size_t>{0, 0, 0}, d555) == 0);
    CHECK(multi_to_linear(std::vector<std::size_t>{4, 4, 4}, d555) == 124);
    CHECK(linear_to_multi(9, d34) == MultiIndex{2, 1});
    CHECK(linear_to_multi(0, d555) == MultiIndex{0, 0, 0});

    CHECK_THROWS_AS(multi_to_linear(std::vector<std::size_t>{3, 0}, d34), std::out_of_range);
    CHECK_THROWS_AS(multi_to_linear(std::vector<std::size_t>{0}, d34), std::out_of_range);
    CHECK_THROWS_AS(linear_to_multi(12, d34), std::out_of_range);
}

TEST_CASE("index maps are mutually inverse over the full range") {
    std::vector<std::size_t> dims{3, 4, 5};
    MultiIndex odometer(3, 0);
    for (std::size_t lin = 0; lin < 60; ++lin) {
        auto idx = linear_to_multi(lin, dims);
        CHECK(multi_to_linear(idx, dims) == lin);
        CHECK(idx == odometer);  // row-major order
        next_index(odometer, dims);
    }
    CHECK(odometer == MultiIndex{0, 0, 0});
}

TEST_CASE("node coordinates") {
    auto g500 = DomainGrid::uniform(2, -2.0, 2.0, 500);
    CHECK(node_coordinates(std::vector<std::size_t>{0, 0}, g500) == Point{-2.0, -2.0});
    auto top = node_coordinates(std::vector<std::size_t>{499, 499}, g500);
    for (double v : top) CHECK(std::fabs(v - 2.0) <= ulp(2.0));

    auto g501 = DomainGrid::uniform(2, -10.0, 10.0, 501);
    CHECK(node_coordinates(std::vector<std::size_t>{250, 0}, g501) == Point{0.0, -10.0});

    CHECK_THROWS_AS(node_coordinates(std::vector<std::size_t>{500, 0}, g500), std::out_of_range);
}

TEST_CASE("node coordinates increase strictly along every axis") {
    DomainGrid g({AxisSpec{-1e-3, 1e-3, 1001}, AxisSpec{-100.0, 250.0, 997}, AxisSpec{0.0, 1.0, 3}});
    for (std::size_t k = 0; k < g.dimension(); ++k) {
        auto nodes = g.axis_nodes(k);
        for (std::size_t i = 1; i < nodes.size(); ++i) CHECK(nodes[i] > nodes[i - 1]);
    }
}

TEST_CASE("cell and node counts") {
    DomainGrid g({AxisSpec{0.0, 1.0, 4}, AxisSpec{0.0, 1.0, 7}, AxisSpec{-1.0, 1.0, 3}});
    CHECK(g.node_count() == 4 * 7 * 3);
    CHECK(g.cell_count() == 3 * 6 * 2);
    CHECK(g.strides() == std::vector<std::size_t>{21, 3, 1});
    CHECK(g.cell_dims() == std::vector<std::size_t>{3, 6, 2});

    auto sweep = DomainGrid::uniform(2, -10.0, 10.0, 20);
    CHECK(sweep.cell_count() == 361);
    CHECK(sweep.with_points(40).cell_count() == 39 * 39);
}

TEST_CASE("checked_product detects overflow") {
    std::vector<std::size_t> big(5, 1000000);
    CHECK_FALSE(checked_product(big).has_value());
    std::vector<std::size_t> ok(5, 1000);
    CHECK(checked_product(ok) == std::size_t{1000000000000000});
}

TEST_CASE("value tensor indexing is bounds-checked") {
    ValueTensor t({2, 3});
    CHECK(t.size() == 6);
    t.at(std::vector<std::size_t>{1, 2}) = 4.5;
    CHECK(t.data()[5] == 4.5);
    CHECK_THROWS_AS(t.at(std::vector<std::size_t>{2, 0}), std::out_of_range);
}
