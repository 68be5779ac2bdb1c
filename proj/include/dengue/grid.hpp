#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dengue/ctmc.hpp"
#include "dengue/model.hpp"

namespace dengue {

/// Uniform axis over a ModelParams field, endpoints included.
struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 20;

    double value(std::size_t i) const;
    /// Parses "name:lo:hi" (count supplied separately).
    static Axis parse(const std::string& text, std::size_t count);

    bool operator==(const Axis&) const = default;
};

/// Row-major matrix of values over axis1 (rows) x axis2 (columns).
struct GridResult {
    Axis axis1;
    Axis axis2;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * axis2.count + j]; }
    bool operator==(const GridResult&) const = default;
};

/// Throws ConfigError for unknown, duplicate or empty axes.
void validate_axes(const Axis& a1, const Axis& a2);

/// Parameters of grid cell (i, j).
ModelParams cell_params(const ModelParams& base, const Axis& a1, const Axis& a2, std::size_t i,
                        std::size_t j);

struct OutbreakGridOptions {
    PathOptions path;
    std::uint64_t n = 1000;
    std::uint64_t seed = 1;
};

/// Outbreak probability on a grid. Paths of every cell are spread over the
/// OpenMP team; each cell uses its own master seed derived from (seed, cell).
GridResult outbreak_probability_grid(const ModelParams& base, const Axis& a1, const Axis& a2,
                                     const OutbreakGridOptions& options);

}  // namespace dengue
