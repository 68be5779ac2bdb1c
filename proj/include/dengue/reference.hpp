#pragma once

// Single-threaded reference versions of the OpenMP kernels. Kept for tests
// (bitwise agreement with the parallel kernels) and for benchmarking.

#include "dengue/ctmc.hpp"
#include "dengue/grid.hpp"
#include "dengue/mcmc.hpp"
#include "dengue/predictive.hpp"
#include "dengue/reproduction.hpp"

namespace dengue::serial {

EnsembleSummary outbreak_probability(const ModelParams& p, const CountState& init,
                                     const PathOptions& options, std::uint64_t n,
                                     std::uint64_t seed,
                                     std::vector<PathOutcome>* per_path = nullptr);

GridResult outbreak_probability_grid(const ModelParams& base, const Axis& a1, const Axis& a2,
                                     const OutbreakGridOptions& options);

GridResult r0_heatmap(const ModelParams& base, const Axis& a1, const Axis& a2,
                      const FloquetOptions& options = {});

PosteriorChains run_mh(const CaseSeries& data, const PriorSpec& priors, const FitSetup& setup,
                       const SamplerConfig& config);

PredictiveBand posterior_predictive(const PosteriorChains& chains, const CaseSeries& data,
                                    const FitSetup& setup, const PredictiveOptions& options = {});

}  // namespace dengue::serial
