#include "dengue/reference.hpp"

#include <limits>

#include "dengue/errors.hpp"

namespace dengue::serial {

EnsembleSummary outbreak_probability(const ModelParams& p, const CountState& init,
                                     const PathOptions& options, std::uint64_t n,
                                     std::uint64_t seed, std::vector<PathOutcome>* per_path) {
    if (n == 0) throw DomainError("outbreak_probability needs n >= 1");
    EnsembleSummary s{n, 0, 0, 0};
    if (per_path != nullptr) per_path->clear();
    for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng{path_seed(seed, i)};
        const PathOutcome o = simulate_path(p, init, options, rng);
        if (o.outcome == Outcome::extinct) ++s.n_ext;
        else if (o.outcome == Outcome::outbreak) ++s.n_outbreak;
        else ++s.n_censored;
        if (per_path != nullptr) per_path->push_back(o);
    }
    return s;
}

GridResult outbreak_probability_grid(const ModelParams& base, const Axis& a1, const Axis& a2,
                                     const OutbreakGridOptions& options) {
    validate_axes(a1, a2);
    GridResult out{a1, a2, {}};
    for (std::size_t i = 0; i < a1.count; ++i) {
        for (std::size_t j = 0; j < a2.count; ++j) {
            const ModelParams p = cell_params(base, a1, a2, i, j);
            const auto s = serial::outbreak_probability(p, single_introduction(p), options.path, options.n,
                                                stream_seed(options.seed, i * a2.count + j));
            out.values.push_back(s.p_outbreak());
        }
    }
    return out;
}

GridResult r0_heatmap(const ModelParams& base, const Axis& a1, const Axis& a2,
                      const FloquetOptions& options) {
    validate_axes(a1, a2);
    GridResult out{a1, a2, {}};
    for (std::size_t i = 0; i < a1.count; ++i)
        for (std::size_t j = 0; j < a2.count; ++j)
            out.values.push_back(r0_heatmap_cell(cell_params(base, a1, a2, i, j), options));
    return out;
}

PosteriorChains run_mh(const CaseSeries& data, const PriorSpec& priors, const FitSetup& setup,
                       const SamplerConfig& config) {
    if (config.chains == 0) throw DomainError("at least one chain is required");
    data.validate();
    const std::vector<Transform> transforms = sampler_transforms(priors);
    const LogDensity target = [&](std::span<const double> theta) {
        const double lp = log_prior(theta, priors);
        if (lp == -std::numeric_limits<double>::infinity()) return lp;
        return lp + log_likelihood(theta, data, setup);
    };

    PosteriorChains out;
    for (auto n : theta_names()) out.names.emplace_back(n);
    out.warmup = config.warmup;
    for (std::size_t c = 0; c < config.chains; ++c) {
        const std::uint64_t s = chain_seed(config.seed, c);
        out.chains.push_back(run_chain(target, transforms, chain_start(target, priors, s), config, s));
    }
    return out;
}

PredictiveBand posterior_predictive(const PosteriorChains& chains, const CaseSeries& data,
                                    const FitSetup& setup, const PredictiveOptions& options) {
    const auto idx = predictive_draw_indices(chains, options);
    std::vector<std::vector<double>> curves(idx.size()), noisy(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        detail::predictive_replicate(chains, idx[r], r, data, setup, options, curves[r], noisy[r]);
    return detail::assemble_band(data, curves, noisy, options);
}

}  // namespace dengue::serial
