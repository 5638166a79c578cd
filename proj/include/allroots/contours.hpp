#pragma once

#include "allroots/grid.hpp"
#include "allroots/problem.hpp"

#include <filesystem>
#include <ostream>
#include <vector>

namespace allroots {

/// Grid of one 2D function: first row holds the x1 node values (after an
/// empty corner cell), first column the x2 node values, body[j][i] = f(x1_i, x2_j).
void write_contour_csv(std::ostream& out, const ValueTensor& values, const DomainGrid& grid);

/// Writes f1.csv ... fn.csv under `directory` (created if missing) and returns their paths.
/// Throws std::invalid_argument unless the problem has 2 variables; IoError on write failures.
std::vector<std::filesystem::path> dump_contours(const Problem& problem, const DomainGrid& grid,
                                                 const std::filesystem::path& directory, unsigned workers = 0);

}  // namespace allroots
