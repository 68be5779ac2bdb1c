#include "dengue/predictive.hpp"

#include <random>

#include "dengue/diagnostics.hpp"
#include "dengue/errors.hpp"
#include "dengue/random.hpp"

namespace dengue {

double PredictiveBand::coverage() const {
    if (day.empty()) return 0.0;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < day.size(); ++i)
        inside += observed[i] >= lower[i] && observed[i] <= upper[i];
    return static_cast<double>(inside) / static_cast<double>(day.size());
}

std::vector<std::size_t> predictive_draw_indices(const PosteriorChains& chains,
                                                 const PredictiveOptions& options) {
    const std::size_t total = chains.chains.size() * chains.draws_per_chain();
    if (total == 0) throw DomainError("posterior predictive needs non-empty chains");
    if (options.draws == 0) throw DomainError("posterior predictive needs at least one draw");
    Rng rng = make_stream(options.seed, 0x707063ULL);
    std::vector<std::size_t> idx(options.draws);
    for (auto& i : idx) i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(total));
    return idx;
}

namespace detail {

void predictive_replicate(const PosteriorChains& chains, std::size_t index, std::size_t slot,
                          const CaseSeries& data, const FitSetup& setup,
                          const PredictiveOptions& options, std::vector<double>& curve,
                          std::vector<double>& noisy) {
    const std::size_t per = chains.draws_per_chain();
    const ChainResult& chain = chains.chains[index / per];
    const std::size_t row = index % per;
    std::vector<double> theta(chain.dim);
    for (std::size_t j = 0; j < chain.dim; ++j) theta[j] = chain.at(row, j);

    curve = predict_cases(setup, apply_theta(setup.base, theta), data);
    noisy = curve;
    const double sd = theta.size() > kSigmaObs ? theta[kSigmaObs] : 0.0;
    if (sd > 0.0) {
        Rng rng = make_stream(options.seed, slot);
        std::normal_distribution<double> normal(0.0, sd);
        for (double& v : noisy) v += normal(rng);
    }
}

PredictiveBand assemble_band(const CaseSeries& data, const std::vector<std::vector<double>>& curves,
                             const std::vector<std::vector<double>>& noisy,
                             const PredictiveOptions& options) {
    PredictiveBand band;
    band.day = data.day;
    band.observed = data.count;
    const std::size_t days = data.size();
    const double k = static_cast<double>(curves.size());
    std::vector<double> column(curves.size());
    for (std::size_t t = 0; t < days; ++t) {
        double model_sum = 0.0;
        double noisy_sum = 0.0;
        for (std::size_t r = 0; r < curves.size(); ++r) {
            model_sum += curves[r][t];
            noisy_sum += noisy[r][t];
            column[r] = noisy[r][t];
        }
        band.model_mean.push_back(model_sum / k);
        band.mean.push_back(noisy_sum / k);
        band.lower.push_back(quantile(column, options.q_low));
        band.upper.push_back(quantile(column, options.q_high));
    }
    return band;
}

}  // namespace detail

PredictiveBand posterior_predictive(const PosteriorChains& chains, const CaseSeries& data,
                                    const FitSetup& setup, const PredictiveOptions& options) {
    const auto idx = predictive_draw_indices(chains, options);
    std::vector<std::vector<double>> curves(idx.size()), noisy(idx.size());
    std::vector<std::exception_ptr> errors(idx.size());
    const auto n = static_cast<long>(idx.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long r = 0; r < n; ++r) {
        const auto slot = static_cast<std::size_t>(r);
        try {
            detail::predictive_replicate(chains, idx[slot], slot, data, setup, options, curves[slot],
                                         noisy[slot]);
        } catch (...) {
            errors[slot] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return detail::assemble_band(data, curves, noisy, options);
}

}  // namespace dengue
