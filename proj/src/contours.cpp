#include "allroots/contours.hpp"

#include "allroots/detect.hpp"
#include "allroots/format.hpp"
#include "allroots/run_config.hpp"

#include <fstream>
#include <stdexcept>

namespace allroots {

void write_contour_csv(std::ostream& out, const ValueTensor& values, const DomainGrid& grid) {
    if (grid.dimension() != 2 || values.dims() != grid.node_dims())
        throw std::invalid_argument("contour dump requires 2 variables");
    const auto x1 = grid.axis_nodes(0);
    const auto x2 = grid.axis_nodes(1);
    for (double v : x1) out << ',' << format_double(v);
    out << '\n';
    std::size_t idx[2];
    for (std::size_t j = 0; j < x2.size(); ++j) {
        out << format_double(x2[j]);
        for (std::size_t i = 0; i < x1.size(); ++i) {
            idx[0] = i;
            idx[1] = j;
            out << ',' << format_double(values.at(idx));
        }
        out << '\n';
    }
}

std::vector<std::filesystem::path> dump_contours(const Problem& problem, const DomainGrid& grid,
                                                 const std::filesystem::path& directory, unsigned workers) {
    if (problem.dimension() != 2) throw std::invalid_argument("contour dump requires 2 variables");
    if (grid.dimension() != 2) throw DimensionError("contour grid must have 2 axes");
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError(directory, "cannot create directory: " + ec.message());

    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < problem.dimension(); ++i) {
        auto path = directory / ("f" + std::to_string(i + 1) + ".csv");
        std::ofstream out(path);
        if (!out) throw IoError(path, "cannot open for writing");
        write_contour_csv(out, evaluate_on_grid(problem.functions()[i], grid, workers), grid);
        out.flush();
        if (!out) throw IoError(path, "write failed");
        written.push_back(path);
    }
    return written;
}

}  // namespace allroots
