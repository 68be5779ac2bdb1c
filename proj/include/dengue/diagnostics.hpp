#pragma once

#include <span>
#include <string>
#include <vector>

#include "dengue/mcmc.hpp"

namespace dengue {

/// Classic (non-split) potential scale reduction factor. Returns 1 when every
/// value is identical and +inf when chains are internally constant but differ.
double gelman_rubin(const std::vector<std::vector<double>>& chains);

/// Single-chain ESS, n / tau with tau = 1 + 2 sum rho_k truncated by Geyer's
/// initial positive sequence (tau floored at 1/log10(n)). Constant chain -> 1.
double chain_effective_sample_size(std::span<const double> draws);

/// Sum of per-chain ESS values; 1 when every chain is constant.
double effective_sample_size(const std::vector<std::vector<double>>& chains);

/// Linear-interpolation quantile (type 7) of unsorted data.
double quantile(std::vector<double> values, double q);

struct ParameterSummary {
    std::string name;
    std::string prior;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double r_hat = 1.0;
    double ess = 0.0;
};

using PosteriorSummary = std::vector<ParameterSummary>;

/// Mean, 2.5/97.5 percentiles, R-hat and ESS (at most the draw count) per
/// parameter. `prior_labels` may be empty.
PosteriorSummary summarize(const PosteriorChains& chains,
                           std::span<const std::string> prior_labels = {});

/// Thresholds for reporting R-hat.
inline constexpr double kRhatReport = 1.01;
inline constexpr double kRhatWarn = 1.1;

}  // namespace dengue
