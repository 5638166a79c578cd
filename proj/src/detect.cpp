#include "allroots/detect.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace allroots {

std::string_view to_string(DetectionMode mode) {
    return mode == DetectionMode::pairwise ? "pairwise" : "strict_paper";
}

DetectionMode parse_detection_mode(std::string_view text) {
    if (text == "pairwise") return DetectionMode::pairwise;
    if (text == "strict_paper") return DetectionMode::strict_paper;
    throw std::invalid_argument("unknown detection mode '" + std::string(text) + "' (expected pairwise or strict_paper)");
}

std::size_t SignChangeMask::flagged_count() const {
    return static_cast<std::size_t>(std::count_if(flags.begin(), flags.end(), [](std::uint8_t f) { return f != 0; }));
}

ValueTensor evaluate_on_grid(const Expression& f, const DomainGrid& grid, unsigned workers) {
    if (f.variable_count() != grid.dimension())
        throw DimensionError("expression has " + std::to_string(f.variable_count()) + " variables, grid has " +
                             std::to_string(grid.dimension()) + " axes");
    ValueTensor tensor(grid.node_dims());
    auto out = tensor.data();
    const auto& dims = grid.node_dims();
    detail::parallel_for(grid.node_count(), workers, [&](std::size_t begin, std::size_t end) {
        MultiIndex idx = linear_to_multi(begin, dims);
        Point x(dims.size());
        for (std::size_t k = 0; k < dims.size(); ++k) x[k] = grid.coordinate(k, idx[k]);
        const std::size_t last = dims.size() - 1;
        for (std::size_t lin = begin; lin < end; ++lin) {
            out[lin] = f.evaluate(x);
            // inline odometer; only the axes that changed get new coordinates
            std::size_t k = last;
            for (;;) {
                if (++idx[k] < dims[k]) {
                    x[k] = grid.coordinate(k, idx[k]);
                    break;
                }
                idx[k] = 0;
                x[k] = grid.coordinate(k, 0);
                if (k == 0) break;
                --k;
            }
        }
    });
    return tensor;
}

std::vector<ValueTensor> evaluate_grid(const Problem& problem, const DomainGrid& grid, unsigned workers) {
    if (problem.dimension() != grid.dimension())
        throw DimensionError("problem has " + std::to_string(problem.dimension()) + " variables, grid has " +
                             std::to_string(grid.dimension()) + " axes");
    std::vector<ValueTensor> tensors;
    tensors.reserve(problem.dimension());
    for (const auto& f : problem.functions()) tensors.push_back(evaluate_on_grid(f, grid, workers));
    return tensors;
}

namespace {

bool opposite_signs(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

bool pairwise_flag(std::span<const double> v, std::size_t node, std::span<const std::size_t> strides) {
    const double base = v[node];
    const bool base_finite = std::isfinite(base);
    if (base == 0.0) return true;
    for (std::size_t stride : strides) {
        const double nb = v[node + stride];
        if (nb == 0.0) return true;
        if (base_finite && std::isfinite(nb) && opposite_signs(base, nb)) return true;
    }
    return false;
}

// Sign of the full product, read off the parity of negative factors so that
// underflow or overflow of the product cannot change the verdict.
bool strict_flag(std::span<const double> v, std::size_t node, std::span<const std::size_t> strides) {
    double base = v[node];
    if (!std::isfinite(base)) return false;
    bool zero = base == 0.0;
    bool negative = base < 0.0;
    for (std::size_t stride : strides) {
        const double nb = v[node + stride];
        if (!std::isfinite(nb)) return false;
        zero = zero || nb == 0.0;
        negative ^= nb < 0.0;
    }
    return zero || negative;
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size() - 1; k-- > 0;) strides[k] = strides[k + 1] * dims[k + 1];
    return strides;
}

}  // namespace

SignChangeMask sign_change_mask(const ValueTensor& values, DetectionMode mode, unsigned workers) {
    const auto& node_dims = values.dims();
    for (std::size_t d : node_dims)
        if (d < 2) throw GridError("sign_change_mask needs at least 2 nodes per axis");

    SignChangeMask mask;
    mask.dims.reserve(node_dims.size());
    for (std::size_t d : node_dims) mask.dims.push_back(d - 1);
    const std::size_t cells = *checked_product(mask.dims);
    mask.flags.assign(cells, 0);

    const auto strides = row_major_strides(node_dims);
    const auto data = values.data();
    const bool pairwise = mode == DetectionMode::pairwise;

    detail::parallel_for(cells, workers, [&](std::size_t begin, std::size_t end) {
        MultiIndex cell = linear_to_multi(begin, mask.dims);
        std::size_t node = 0;
        for (std::size_t k = 0; k < cell.size(); ++k) node += cell[k] * strides[k];
        for (std::size_t c = begin; c < end; ++c) {
            mask.flags[c] = pairwise ? pairwise_flag(data, node, strides) : strict_flag(data, node, strides);
            // advance cell odometer, keeping the node offset in step
            std::size_t k = cell.size() - 1;
            for (;;) {
                if (++cell[k] < mask.dims[k]) {
                    node += strides[k];
                    break;
                }
                node -= (mask.dims[k] - 1) * strides[k];
                cell[k] = 0;
                if (k == 0) break;
                --k;
            }
        }
    });
    return mask;
}

CandidateSet intersect_masks(std::span<const SignChangeMask> masks, const DomainGrid& grid) {
    CandidateSet out;
    if (masks.empty()) return out;
    const auto& dims = masks.front().dims;
    for (const auto& m : masks)
        if (m.dims != dims) throw DimensionError("masks do not share dimensions");
    if (dims != grid.cell_dims()) throw DimensionError("mask dimensions do not match the grid's cell dimensions");

    const std::size_t cells = masks.front().flags.size();
    for (std::size_t c = 0; c < cells; ++c) {
        bool all = true;
        for (const auto& m : masks) {
            if (!m.flags[c]) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        MultiIndex cell = linear_to_multi(c, dims);
        Point x = node_coordinates(cell, grid);
        out.entries.push_back({std::move(cell), std::move(x)});
    }
    return out;
}

CandidateSet detect_candidates(const Problem& problem, const DomainGrid& grid, DetectionMode mode, unsigned workers) {
    if (problem.dimension() != grid.dimension())
        throw DimensionError("problem has " + std::to_string(problem.dimension()) + " variables, grid has " +
                             std::to_string(grid.dimension()) + " axes");
    SignChangeMask combined;
    for (std::size_t i = 0; i < problem.dimension(); ++i) {
        SignChangeMask mask = sign_change_mask(evaluate_on_grid(problem.functions()[i], grid, workers), mode, workers);
        if (i == 0) {
            combined = std::move(mask);
        } else {
            for (std::size_t c = 0; c < combined.flags.size(); ++c) combined.flags[c] &= mask.flags[c];
        }
    }
    return intersect_masks(std::span<const SignChangeMask>(&combined, 1), grid);
}

}  // namespace allroots
