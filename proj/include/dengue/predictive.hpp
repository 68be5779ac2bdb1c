#pragma once

#include <cstdint>
#include <vector>

#include "dengue/cases.hpp"
#include "dengue/likelihood.hpp"
#include "dengue/mcmc.hpp"

namespace dengue {

struct PredictiveOptions {
    std::size_t draws = 500;
    double q_low = 0.025;
    double q_high = 0.975;
    std::uint64_t seed = 1;
};

/// Per-day posterior predictive summary aligned with the data days.
struct PredictiveBand {
    std::vector<int> day;
    std::vector<double> observed;
    std::vector<double> model_mean;  // mean noise-free model curve
    std::vector<double> mean;        // mean of noisy replicates
    std::vector<double> lower;
    std::vector<double> upper;

    /// Fraction of observations inside [lower, upper].
    double coverage() const;

    bool operator==(const PredictiveBand&) const = default;
};

/// Selected pooled-draw indices for the predictive replicates.
std::vector<std::size_t> predictive_draw_indices(const PosteriorChains& chains,
                                                 const PredictiveOptions& options);

/// Integrates the ODE for `draws` posterior samples (OpenMP over samples, one
/// RNG stream each), adds N(0, sigma_obs^2) noise and collects quantiles.
PredictiveBand posterior_predictive(const PosteriorChains& chains, const CaseSeries& data,
                                    const FitSetup& setup, const PredictiveOptions& options = {});

namespace detail {
/// Builds the band from replicate matrices (draws x days). Shared with the
/// serial reference path.
PredictiveBand assemble_band(const CaseSeries& data, const std::vector<std::vector<double>>& curves,
                             const std::vector<std::vector<double>>& noisy,
                             const PredictiveOptions& options);
/// Noise-free curve and noisy replicate for pooled draw `index`.
void predictive_replicate(const PosteriorChains& chains, std::size_t index, std::size_t slot,
                          const CaseSeries& data, const FitSetup& setup,
                          const PredictiveOptions& options, std::vector<double>& curve,
                          std::vector<double>& noisy);
}  // namespace detail

}  // namespace dengue
