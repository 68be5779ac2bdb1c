#include "dengue/grid.hpp"

#include "dengue/errors.hpp"

namespace dengue {

double Axis::value(std::size_t i) const {
    if (count <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Axis Axis::parse(const std::string& text, std::size_t count) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("axis must look like name:lo:hi, got '" + text + "'");
    Axis axis;
    axis.name = text.substr(0, a);
    try {
        axis.lo = std::stod(text.substr(a + 1, b - a - 1));
        axis.hi = std::stod(text.substr(b + 1));
    } catch (const std::exception&) {
        throw ConfigError("axis bounds must be numbers: '" + text + "'");
    }
    axis.count = count;
    return axis;
}

void validate_axes(const Axis& a1, const Axis& a2) {
    for (const Axis* a : {&a1, &a2}) {
        if (!is_param_name(a->name)) throw ConfigError("unknown axis parameter '" + a->name + "'");
        if (a->count == 0) throw ConfigError("axis '" + a->name + "' has no points");
    }
    if (a1.name == a2.name) throw ConfigError("grid axes must name two distinct parameters");
}

ModelParams cell_params(const ModelParams& base, const Axis& a1, const Axis& a2, std::size_t i,
                        std::size_t j) {
    ModelParams p = base;
    set_param(p, a1.name, a1.value(i));
    set_param(p, a2.name, a2.value(j));
    return p;
}

GridResult outbreak_probability_grid(const ModelParams& base, const Axis& a1, const Axis& a2,
                                     const OutbreakGridOptions& options) {
    validate_axes(a1, a2);
    GridResult out{a1, a2, std::vector<double>(a1.count * a2.count)};
    for (std::size_t i = 0; i < a1.count; ++i) {
        for (std::size_t j = 0; j < a2.count; ++j) {
            const ModelParams p = cell_params(base, a1, a2, i, j);
            const std::size_t cell = i * a2.count + j;
            const auto summary = outbreak_probability(p, single_introduction(p), options.path,
                                                      options.n, stream_seed(options.seed, cell));
            out.values[cell] = summary.p_outbreak();
        }
    }
    return out;
}

}  // namespace dengue
