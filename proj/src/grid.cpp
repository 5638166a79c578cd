#include "allroots/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace allroots {

void AxisSpec::validate() const {
    if (!std::isfinite(lower) || !std::isfinite(upper))
        throw GridError("axis bounds must be finite");
    if (!(lower < upper))
        throw GridError("axis lower bound " + std::to_string(lower) + " must be below upper bound " +
                        std::to_string(upper));
    if (points < 3) throw GridError("axis needs at least 3 points, got " + std::to_string(points));
    double h = spacing(*this);
    if (!std::isfinite(h) || !(h > 0.0)) throw GridError("axis spacing is not positive and finite");
}

double spacing(const AxisSpec& axis) {
    return (axis.upper - axis.lower) / static_cast<double>(axis.points - 1);
}

std::optional<std::size_t> checked_product(std::span<const std::size_t> dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d != 0 && total > std::numeric_limits<std::size_t>::max() / d) return std::nullopt;
        total *= d;
    }
    return total;
}

std::size_t multi_to_linear(std::span<const std::size_t> idx, std::span<const std::size_t> dims) {
    if (idx.size() != dims.size()) throw std::out_of_range("index rank does not match tensor rank");
    std::size_t lin = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (idx[k] >= dims[k])
            throw std::out_of_range("index " + std::to_string(idx[k]) + " out of range on axis " + std::to_string(k));
        lin = lin * dims[k] + idx[k];
    }
    return lin;
}

MultiIndex linear_to_multi(std::size_t lin, std::span<const std::size_t> dims) {
    auto total = checked_product(dims);
    if (!total || lin >= *total) throw std::out_of_range("linear index " + std::to_string(lin) + " out of range");
    MultiIndex idx(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        idx[k] = lin % dims[k];
        lin /= dims[k];
    }
    return idx;
}

bool next_index(std::span<std::size_t> idx, std::span<const std::size_t> dims) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        if (++idx[k] < dims[k]) return true;
        idx[k] = 0;
    }
    return false;
}

DomainGrid::DomainGrid(std::vector<AxisSpec> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw GridError("grid needs at least one axis");
    for (const auto& axis : axes_) {
        axis.validate();
        steps_.push_back(spacing(axis));
        node_dims_.push_back(axis.points);
        cell_dims_.push_back(axis.points - 1);
    }
    auto nodes = checked_product(node_dims_);
    if (!nodes) throw GridError("node count overflows");
    node_count_ = *nodes;
    cell_count_ = *checked_product(cell_dims_);
    strides_.assign(axes_.size(), 1);
    for (std::size_t k = axes_.size() - 1; k-- > 0;) strides_[k] = strides_[k + 1] * node_dims_[k + 1];
}

DomainGrid DomainGrid::uniform(std::size_t dimension, double lower, double upper, std::size_t points) {
    return DomainGrid(std::vector<AxisSpec>(dimension, AxisSpec{lower, upper, points}));
}

std::vector<double> DomainGrid::axis_nodes(std::size_t k) const {
    std::vector<double> out(node_dims_[k]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coordinate(k, i);
    return out;
}

DomainGrid DomainGrid::with_points(std::size_t points) const {
    auto axes = axes_;
    for (auto& axis : axes) axis.points = points;
    return DomainGrid(std::move(axes));
}

Point node_coordinates(std::span<const std::size_t> idx, const DomainGrid& grid) {
    if (idx.size() != grid.dimension()) throw std::out_of_range("index rank does not match grid dimension");
    Point x(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= grid.node_dims()[k])
            throw std::out_of_range("node index " + std::to_string(idx[k]) + " out of range on axis " + std::to_string(k));
        x[k] = grid.coordinate(k, idx[k]);
    }
    return x;
}

ValueTensor::ValueTensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    auto total = checked_product(dims_);
    if (!total) throw GridError("tensor size overflows");
    data_.assign(*total, 0.0);
}

}  // namespace allroots
