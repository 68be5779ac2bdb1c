#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dengue/ctmc.hpp"
#include "dengue/reproduction.hpp"

namespace dengue {

/// One published comparison row: varied (sigma, beta_np, beta_peak) with the
/// reported beta_bar, R0, seasonal R0 and outbreak probability.
struct ComparisonRow {
    double sigma;
    double beta_np;
    double beta_peak;
    double beta_bar;
    double r0;
    double r0_seasonal;
    double p_outbreak;
};

/// The nine published rows (A_beta = 0.047, t_p = 190.72 held fixed).
std::span<const ComparisonRow> published_comparison_rows();

struct ComparisonOptions {
    PathOptions path;  // t0 = 0, OL = 100, t_max = 1825 by default
    std::uint64_t n = 10000;
    std::uint64_t seed = 1;
    FloquetOptions floquet;
    bool with_outbreak = true;
};

struct ComparisonResult {
    ComparisonRow published;
    double beta_bar = 0.0;
    double r0 = 0.0;
    FloquetResult seasonal;
    EnsembleSummary outbreak;
};

/// Recomputes every published row from `base` (only sigma, beta_np and
/// beta_peak are overridden per row).
std::vector<ComparisonResult> reproduce_comparison_table(const ModelParams& base,
                                                         const ComparisonOptions& options);

/// Defaults for the comparison rows: A_beta = 0.047, t_p = 190.72,
/// delta = 0.25, gamma = 0.125, mu = 3.8e-5.
ModelParams comparison_base(double pop = 1.0e6);

}  // namespace dengue
