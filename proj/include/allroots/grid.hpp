#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace allroots {

using MultiIndex = std::vector<std::size_t>;
using Point = std::vector<double>;

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One axis of the box: [lower, upper] sampled at `points` evenly spaced nodes.
struct AxisSpec {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t points = 0;

    /// Throws GridError unless lower < upper, points >= 3 and the spacing is finite and positive.
    void validate() const;
};

/// (upper - lower) / (points - 1).
double spacing(const AxisSpec& axis);

/// Product of `dims`, or nullopt when it overflows std::size_t.
std::optional<std::size_t> checked_product(std::span<const std::size_t> dims);

/// Row-major linear index of `idx`; throws std::out_of_range.
std::size_t multi_to_linear(std::span<const std::size_t> idx, std::span<const std::size_t> dims);

/// Inverse of multi_to_linear; throws std::out_of_range.
MultiIndex linear_to_multi(std::size_t lin, std::span<const std::size_t> dims);

/// Advances `idx` to the next row-major multi-index within `dims` (last axis fastest).
/// Returns false after wrapping past the final index.
bool next_index(std::span<std::size_t> idx, std::span<const std::size_t> dims);

/// Tensor-product node grid over the box domain.
///
/// The node tensor has N_k entries per axis. Cells of the stationary set are
/// addressed by their lower vertex and number N_k - 1 per axis.
class DomainGrid {
public:
    DomainGrid() = default;
    explicit DomainGrid(std::vector<AxisSpec> axes);

    /// Same bounds and point count on every axis.
    static DomainGrid uniform(std::size_t dimension, double lower, double upper, std::size_t points);

    std::size_t dimension() const { return axes_.size(); }
    const std::vector<AxisSpec>& axes() const { return axes_; }
    const AxisSpec& axis(std::size_t k) const { return axes_[k]; }
    double step(std::size_t k) const { return steps_[k]; }

    const std::vector<std::size_t>& node_dims() const { return node_dims_; }
    const std::vector<std::size_t>& cell_dims() const { return cell_dims_; }
    const std::vector<std::size_t>& strides() const { return strides_; }

    std::size_t node_count() const { return node_count_; }
    std::size_t cell_count() const { return cell_count_; }

    /// Coordinate of node `i` on axis `k`: lower + i * step.
    double coordinate(std::size_t k, std::size_t i) const { return axes_[k].lower + static_cast<double>(i) * steps_[k]; }

    /// Node values along axis `k`.
    std::vector<double> axis_nodes(std::size_t k) const;

    /// Same grid with every axis resampled at `points` nodes.
    DomainGrid with_points(std::size_t points) const;

private:
    std::vector<AxisSpec> axes_;
    std::vector<double> steps_;
    std::vector<std::size_t> node_dims_;
    std::vector<std::size_t> cell_dims_;
    std::vector<std::size_t> strides_;
    std::size_t node_count_ = 0;
    std::size_t cell_count_ = 0;
};

/// Coordinates of node `idx`; throws std::out_of_range.
Point node_coordinates(std::span<const std::size_t> idx, const DomainGrid& grid);

/// Dense row-major array of one function's values over the node grid.
class ValueTensor {
public:
    ValueTensor() = default;
    explicit ValueTensor(std::vector<std::size_t> dims);

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return data_.size(); }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    /// Bounds-checked access.
    double at(std::span<const std::size_t> idx) const { return data_[multi_to_linear(idx, dims_)]; }
    double& at(std::span<const std::size_t> idx) { return data_[multi_to_linear(idx, dims_)]; }

private:
    std::vector<std::size_t> dims_;
    std::vector<double> data_;
};

}  // namespace allroots
