#pragma once

#include "allroots/grid.hpp"
#include "allroots/problem.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace allroots {

/// How a cell is tested for a sign change of one function.
///
/// Both modes probe the cell's lower vertex p and its n axis neighbours
/// p + step_k e_k.
///  - strict_paper: flagged when the product of all n+1 probed values is
///    negative, or any of them is exactly zero. Any non-finite probe
///    excludes the cell.
///  - pairwise: flagged when some pair (p, p + e_k) has opposite signs, or any
///    probe is exactly zero. Non-finite probes only exclude their own pairs.
enum class DetectionMode { strict_paper, pairwise };

std::string_view to_string(DetectionMode mode);
/// Accepts "strict_paper" and "pairwise"; throws std::invalid_argument otherwise.
DetectionMode parse_detection_mode(std::string_view text);

/// One flag per stationary-set cell (N_k - 1 per axis), row-major.
struct SignChangeMask {
    std::vector<std::size_t> dims;
    std::vector<std::uint8_t> flags;

    std::size_t flagged_count() const;
    bool flagged(std::span<const std::size_t> cell) const { return flags[multi_to_linear(cell, dims)] != 0; }
};

struct Candidate {
    MultiIndex cell;     // lower vertex
    Point coordinates;   // node_coordinates(cell)
};

struct CandidateSet {
    std::vector<Candidate> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

/// Values of `f` at every node of `grid`. `workers` = 0 uses all hardware threads.
ValueTensor evaluate_on_grid(const Expression& f, const DomainGrid& grid, unsigned workers = 0);

/// One tensor per function of `problem`.
std::vector<ValueTensor> evaluate_grid(const Problem& problem, const DomainGrid& grid, unsigned workers = 0);

SignChangeMask sign_change_mask(const ValueTensor& values, DetectionMode mode, unsigned workers = 0);

/// Cells flagged in every mask, in row-major order.
CandidateSet intersect_masks(std::span<const SignChangeMask> masks, const DomainGrid& grid);

/// evaluate_grid + sign_change_mask + intersect_masks, holding one value tensor at a time.
CandidateSet detect_candidates(const Problem& problem, const DomainGrid& grid, DetectionMode mode,
                               unsigned workers = 0);

}  // namespace allroots
