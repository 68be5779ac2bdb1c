#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dengue/cases.hpp"
#include "dengue/likelihood.hpp"
#include "dengue/priors.hpp"

namespace dengue {

enum class ProposalShape {
    dense,     // covariance estimated from warm-up draws
    diagonal,  // per-component variances only
};

struct SamplerConfig {
    std::size_t chains = 4;
    std::size_t iters = 50000;  // per chain, warm-up included
    std::size_t warmup = 5000;
    std::uint64_t seed = 1;
    std::size_t adapt_window = 50;
    double target_accept = 0.23;
    ProposalShape proposal = ProposalShape::dense;
    bool laplace_start = true;  // precondition each chain at a local mode
};

/// Log density on the constrained scale; -inf rejects.
using LogDensity = std::function<double(std::span<const double>)>;

/// Post-warm-up output of one random-walk Metropolis chain.
struct ChainResult {
    std::uint64_t seed = 0;
    std::size_t dim = 0;
    std::vector<double> draws;     // row-major, size() x dim
    std::vector<double> log_post;  // constrained-scale log target per draw
    double acceptance_rate = 0.0;  // after warm-up
    double warmup_acceptance_rate = 0.0;
    std::vector<double> proposal_scale;  // frozen unconstrained marginal step sizes
    bool adaptation_warning = false;     // a warm-up window accepted nothing

    std::size_t size() const { return dim == 0 ? 0 : draws.size() / dim; }
    double at(std::size_t i, std::size_t j) const { return draws[i * dim + j]; }
    std::vector<double> column(std::size_t j) const;

    bool operator==(const ChainResult&) const = default;
};

struct PosteriorChains {
    std::vector<std::string> names;
    std::size_t warmup = 0;
    std::vector<ChainResult> chains;

    std::size_t dim() const { return names.size(); }
    std::size_t draws_per_chain() const { return chains.empty() ? 0 : chains.front().size(); }
    /// Draws of parameter j, one vector per chain.
    std::vector<std::vector<double>> parameter(std::size_t j) const;
    /// All draws of parameter j, chains concatenated in index order.
    std::vector<double> pooled(std::size_t j) const;

    bool operator==(const PosteriorChains&) const = default;
};

/// Random-walk Metropolis in the unconstrained space given by `transforms`.
/// Gaussian proposals. With `laplace_start` the chain first searches for a
/// local mode (Nelder-Mead), takes the proposal covariance from the inverse
/// Hessian there and starts from a draw of that Gaussian approximation.
/// During warm-up the covariance is re-estimated at 30, 50, 70 and 90% from
/// all draws since 10%, and a global scale follows a Robbins-Monro rule toward
/// `config.target_accept`. Everything is frozen once warm-up ends.
ChainResult run_chain(const LogDensity& target, std::span<const Transform> transforms,
                      std::span<const double> init, const SamplerConfig& config,
                      std::uint64_t chain_seed);

/// Unconstrained maps used by the sampler: the prior's own transform, except
/// that a normal prior on the seasonal width samples log(sigma).
std::vector<Transform> sampler_transforms(const PriorSpec& priors);

/// initial_theta, redrawn until `target` is finite (at most 100 retries).
Theta chain_start(const LogDensity& target, const PriorSpec& priors, std::uint64_t chain_seed);

/// Starting point for chain `chain` of a fit: the default seasonality
/// values jittered on the unconstrained scale and moved into the support.
Theta initial_theta(const PriorSpec& priors, std::uint64_t chain_seed);

/// Multi-chain Metropolis-Hastings for the seasonal SEIR posterior. Chains run
/// in parallel (OpenMP) with per-chain RNG streams; results do not depend on
/// the number of threads. An empty data series samples the prior.
PosteriorChains run_mh(const CaseSeries& data, const PriorSpec& priors, const FitSetup& setup,
                       const SamplerConfig& config);

/// Seed of chain `index` under the master seed.
std::uint64_t chain_seed(std::uint64_t master, std::size_t index);

}  // namespace dengue
