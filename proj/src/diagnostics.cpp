#include "dengue/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance_of(std::span<const double> x, double m) {
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

}  // namespace

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
    const std::size_t m = chains.size();
    if (m < 2) throw DomainError("gelman_rubin needs at least two chains");
    const std::size_t n = chains.front().size();
    if (n < 2) throw DomainError("gelman_rubin needs at least two draws per chain");
    for (const auto& c : chains)
        if (c.size() != n) throw DomainError("gelman_rubin chains must have equal length");

    std::vector<double> means(m);
    double w = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        means[i] = mean_of(chains[i]);
        w += variance_of(chains[i], means[i]);
    }
    w /= static_cast<double>(m);
    const double b_over_n = variance_of(means, mean_of(means));
    if (w == 0.0) return b_over_n == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    const double nn = static_cast<double>(n);
    const double v = (nn - 1.0) / nn * w + b_over_n;
    return std::sqrt(v / w);
}

double chain_effective_sample_size(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) return 0.0;
    if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end()) return 1.0;
    const double m = mean_of(x);
    double c0 = 0.0;
    for (double v : x) c0 += (v - m) * (v - m);
    c0 /= static_cast<double>(n);
    if (c0 == 0.0 || n < 4) return c0 == 0.0 ? 1.0 : static_cast<double>(n);

    auto rho = [&](std::size_t lag) {
        double s = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) s += (x[i] - m) * (x[i + lag] - m);
        return s / static_cast<double>(n) / c0;
    };

    // Pairs Gamma_k = rho_{2k} + rho_{2k+1}; Gamma_0 is always kept.
    double gamma_sum = 1.0 + rho(1);
    for (std::size_t lag = 2; lag + 1 < n; lag += 2) {
        const double pair = rho(lag) + rho(lag + 1);
        if (!(pair > 0.0)) break;
        gamma_sum += pair;
    }
    const double tau = std::max(-1.0 + 2.0 * gamma_sum, 1.0 / std::log10(static_cast<double>(n)));
    return static_cast<double>(n) / tau;
}

double effective_sample_size(const std::vector<std::vector<double>>& chains) {
    double total = 0.0;
    bool any_varying = false;
    for (const auto& c : chains) {
        const bool constant = std::adjacent_find(c.begin(), c.end(), std::not_equal_to<>()) == c.end();
        if (!constant) {
            any_varying = true;
            total += chain_effective_sample_size(c);
        }
    }
    return any_varying ? total : 1.0;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw DomainError("quantile of empty data");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

PosteriorSummary summarize(const PosteriorChains& chains, std::span<const std::string> prior_labels) {
    if (chains.chains.empty() || chains.draws_per_chain() == 0)
        throw DomainError("cannot summarize empty chains");
    PosteriorSummary out;
    for (std::size_t j = 0; j < chains.dim(); ++j) {
        ParameterSummary s;
        s.name = chains.names[j];
        if (j < prior_labels.size()) s.prior = prior_labels[j];
        const auto per_chain = chains.parameter(j);
        const auto pooled = chains.pooled(j);
        s.mean = mean_of(pooled);
        s.ci_low = quantile(pooled, 0.025);
        s.ci_high = quantile(pooled, 0.975);
        s.r_hat = per_chain.size() >= 2 && chains.draws_per_chain() >= 2 ? gelman_rubin(per_chain)
                                                                         : std::nan("");
        // Antithetic chains can push the estimate past the draw count; the
        // summary reports at most the number of draws.
        s.ess = std::min(effective_sample_size(per_chain), static_cast<double>(pooled.size()));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace dengue
