#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dengue/diagnostics.hpp"
#include "dengue/errors.hpp"
#include "dengue/likelihood.hpp"
#include "dengue/mcmc.hpp"
#include "dengue/predictive.hpp"
#include "dengue/priors.hpp"
#include "dengue/synthetic.hpp"

using namespace dengue;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTruth[kThetaDim] = {0.0567, 0.047, 190.72, 61.817, 0.085, 25.0};

FitSetup fit_setup() {
    FitSetup s;
    s.base.pop = 171e6;
    s.i0 = 200.0;
    return s;
}

// Classic potential scale reduction written out from its definition.
double rhat_oracle(const std::vector<std::vector<double>>& chains) {
    const double m = static_cast<double>(chains.size());
    const double n = static_cast<double>(chains[0].size());
    std::vector<double> means;
    double w = 0.0;
    for (const auto& c : chains) {
        double mean = 0.0;
        for (double v : c) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : c) ss += (v - mean) * (v - mean);
        w += ss / (n - 1.0);
        means.push_back(mean);
    }
    w /= m;
    double grand = 0.0;
    for (double v : means) grand += v;
    grand /= m;
    double b = 0.0;
    for (double v : means) b += (v - grand) * (v - grand);
    b *= n / (m - 1.0);
    const double v_hat = (n - 1.0) / n * w + b / n;
    return std::sqrt(v_hat / w);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("prior densities") {
    const PriorSpec spec;
    CHECK(spec.priors[kBetaNp].log_density(1.5) == -kInf);
    CHECK(spec.priors[kTp].log_density(220.0) ==
          doctest::Approx(-std::log(30.0 * std::sqrt(2.0 * std::numbers::pi))).epsilon(1e-14));
    CHECK(spec.priors[kSigmaObs].log_density(0.0) == 0.0);
    CHECK(spec.priors[kSigmaObs].log_density(-0.1) == -kInf);
    CHECK(spec.priors[kBetaNp].log_density(0.3) == 0.0);
    CHECK(Prior::uniform(2.0, 6.0).log_density(3.0) == doctest::Approx(-std::log(4.0)));
    CHECK(Prior::exponential(2.0).log_density(1.5) == doctest::Approx(std::log(2.0) - 3.0));
}

TEST_CASE("log prior sums components and rejects outside the support") {
    const PriorSpec spec;
    const Theta theta = {0.0567, 0.047, 190.72, 61.817, 0.085, 10.0};
    double expected = 0.0;
    for (std::size_t j = 0; j < kThetaDim; ++j) expected += spec.priors[j].log_density(theta[j]);
    CHECK(log_prior(theta, spec) == doctest::Approx(expected).epsilon(1e-14));
    Theta outside = theta;
    outside[kBetaNp] = 1.5;
    CHECK(log_prior(outside, spec) == -kInf);
    const std::vector<double> short_theta(5, 0.1);
    CHECK_THROWS_AS(log_prior(short_theta, spec), DomainError);
}

TEST_CASE("prior parsing and invariants") {
    CHECK(Prior::parse("U(0,1)") == Prior::uniform(0.0, 1.0));
    CHECK(Prior::parse(" N(220, 30) ") == Prior::normal(220.0, 30.0));
    CHECK(Prior::parse("Exp(1)") == Prior::exponential(1.0));
    CHECK(Prior::parse("Uniform(0.1,0.2)") == Prior::uniform(0.1, 0.2));
    CHECK(Prior::normal(220.0, 30.0).describe() == "N(220, 30)");
    CHECK(Prior::uniform(0.0, 1.0).describe() == "U(0, 1)");
    CHECK(Prior::exponential(1.0).describe() == "Exp(1)");
    CHECK_THROWS_AS(Prior::uniform(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Prior::normal(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(Prior::exponential(-1.0), DomainError);
    CHECK_THROWS_AS(Prior::parse("Gamma(1,2)"), DomainError);
    CHECK_THROWS_AS(Prior::parse("U(0;1)"), DomainError);
}

TEST_CASE("transforms round-trip and their Jacobians match finite differences") {
    const Transform ts[] = {{Transform::Kind::identity, 0.0, 0.0},
                            {Transform::Kind::logit, 0.0, 1.0},
                            {Transform::Kind::logit, -2.0, 5.0},
                            {Transform::Kind::log, 0.0, 0.0}};
    for (const auto& t : ts) {
        for (double u = -4.0; u <= 4.0; u += 0.37) {
            const double x = t.to_constrained(u);
            CHECK(t.to_unconstrained(x) == doctest::Approx(u).epsilon(1e-10));
            const double h = 1e-6;
            const double slope = (t.to_constrained(u + h) - t.to_constrained(u - h)) / (2 * h);
            CHECK(t.log_jacobian(u) == doctest::Approx(std::log(std::abs(slope))).epsilon(1e-6));
        }
    }
}

TEST_CASE("Gaussian likelihood terms") {
    const std::vector<double> d = {5.0};
    const std::vector<double> y = {3.0};
    CHECK(gaussian_log_likelihood(d, y, 2.0) ==
          doctest::Approx(-0.5 * std::log(8.0 * std::numbers::pi) - 0.5).epsilon(1e-14));
    CHECK(simplified_log_likelihood(d, y) == -4.0);
}

TEST_CASE("likelihood of noise-free model data") {
    FitSetup setup = fit_setup();
    const CaseSeries data = generate_synthetic(setup, kTruth, 0.0, 120, 1);
    Theta theta;
    std::copy(std::begin(kTruth), std::end(kTruth), theta.begin());
    theta[kSigmaObs] = 1.0;
    const double t = static_cast<double>(data.size());
    CHECK(log_likelihood(theta, data, setup) ==
          doctest::Approx(-0.5 * t * std::log(2.0 * std::numbers::pi)).epsilon(1e-9));
    setup.error = ErrorModel::simplified;
    CHECK(std::abs(log_likelihood(theta, data, setup)) < 1e-12);
}

TEST_CASE("full and simplified likelihoods differ by a constant at sigma_obs = 1/sqrt(2)") {
    FitSetup gaussian = fit_setup();
    FitSetup simplified = gaussian;
    simplified.error = ErrorModel::simplified;
    const CaseSeries data = generate_synthetic(gaussian, kTruth, 25.0, 100, 3);
    const double expected = -0.5 * static_cast<double>(data.size()) * std::log(std::numbers::pi);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> jitter(0.97, 1.03);
    for (int i = 0; i < 6; ++i) {
        Theta theta;
        for (std::size_t j = 0; j < kThetaDim; ++j) theta[j] = kTruth[j] * jitter(rng);
        theta[kSigmaObs] = 1.0 / std::sqrt(2.0);
        const double diff = log_likelihood(theta, data, gaussian) - log_likelihood(theta, data, simplified);
        CHECK(diff == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("unusable parameters score minus infinity") {
    const FitSetup setup = fit_setup();
    const CaseSeries data = generate_synthetic(setup, kTruth, 25.0, 60, 1);
    Theta theta;
    std::copy(std::begin(kTruth), std::end(kTruth), theta.begin());
    theta[kSigma] = -5.0;
    CHECK(log_likelihood(theta, data, setup) == -kInf);
    theta[kSigma] = 60.0;
    theta[kTp] = 400.0;
    CHECK(log_likelihood(theta, data, setup) == -kInf);
    const std::vector<double> wrong(3, 0.1);
    CHECK_THROWS_AS(log_likelihood(wrong, data, setup), DomainError);
}

TEST_CASE("initial state for fitting") {
    FitSetup setup;
    setup.base.pop = 1e6;
    const ModelParams& p = setup.base;
    const SeirState inc = fit_initial_state(setup, p, 50.0);
    CHECK(inc.I == doctest::Approx(50.0 / (p.gamma + p.mu)));
    CHECK(inc.E == doctest::Approx((p.gamma + p.mu) / p.delta * inc.I));
    CHECK(inc.total() == doctest::Approx(p.pop));
    setup.observable = Observable::prevalence;
    CHECK(fit_initial_state(setup, p, 50.0).I == 50.0);
    setup.i0 = 7.0;
    setup.e0 = 3.0;
    const SeirState fixed = fit_initial_state(setup, p, 50.0);
    CHECK(fixed.I == 7.0);
    CHECK(fixed.E == 3.0);
    CHECK(fixed.S == p.pop - 10.0);
}

TEST_CASE("Gelman-Rubin hand examples") {
    CHECK(gelman_rubin({{1, 2, 3, 4}, {1, 2, 3, 4}}) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(std::abs(gelman_rubin({{1, 2, 3, 4}, {1, 2, 3, 4}}) - 0.866) < 1e-3);
    CHECK(gelman_rubin({{2, 2, 2}, {2, 2, 2}, {2, 2, 2}}) == 1.0);
    CHECK(gelman_rubin({{0, 0, 0, 0}, {10, 10, 10, 10}}) == kInf);
    CHECK_THROWS_AS(gelman_rubin({{1, 2, 3}}), DomainError);
    CHECK_THROWS_AS(gelman_rubin({{1}, {2}}), DomainError);
    CHECK_THROWS_AS(gelman_rubin({{1, 2}, {1, 2, 3}}), DomainError);
}

TEST_CASE("Gelman-Rubin matches the textbook formula") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> chains(4, std::vector<double>(50));
        for (std::size_t c = 0; c < chains.size(); ++c)
            for (double& v : chains[c]) v = z(rng) + 0.3 * static_cast<double>(c) * (trial % 3);
        CHECK(gelman_rubin(chains) == doctest::Approx(rhat_oracle(chains)).epsilon(1e-12));
    }
}

TEST_CASE("effective sample size") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> z(0.0, 1.0);
    const std::size_t n = 10000;
    SUBCASE("white noise") {
        std::vector<double> x(n);
        for (double& v : x) v = z(rng);
        CHECK(std::abs(chain_effective_sample_size(x) - static_cast<double>(n)) <= 0.1 * n);
    }
    SUBCASE("antithetic chain exceeds n") {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = k % 2 == 0 ? 1.0 : -1.0;
        CHECK(chain_effective_sample_size(x) > static_cast<double>(n));
    }
    SUBCASE("AR(1) with phi = 0.5") {
        // tau = (1 + phi) / (1 - phi) = 3
        std::vector<double> x(100000);
        double prev = 0.0;
        for (double& v : x) prev = v = 0.5 * prev + z(rng);
        CHECK(chain_effective_sample_size(x) == doctest::Approx(100000.0 / 3.0).epsilon(0.1));
    }
    SUBCASE("constant chain") {
        const std::vector<double> x(n, 4.2);
        CHECK(chain_effective_sample_size(x) == 1.0);
        CHECK(effective_sample_size({x, x}) == 1.0);
    }
    SUBCASE("per-chain values add up") {
        std::vector<double> a(n), b(n);
        for (double& v : a) v = z(rng);
        for (double& v : b) v = z(rng);
        CHECK(effective_sample_size({a, b}) ==
              doctest::Approx(chain_effective_sample_size(a) + chain_effective_sample_size(b)));
    }
}

TEST_CASE("linear interpolation quantiles") {
    CHECK(quantile({4, 1, 3, 2}, 0.5) == 2.5);
    CHECK(quantile({4, 1, 3, 2}, 0.25) == 1.75);
    CHECK(quantile({4, 1, 3, 2}, 0.0) == 1.0);
    CHECK(quantile({4, 1, 3, 2}, 1.0) == 4.0);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(100000);
    for (double& v : x) v = u(rng);
    CHECK(std::abs(quantile(x, 0.025) - 0.025) <= 0.005);
    CHECK(std::abs(quantile(x, 0.975) - 0.975) <= 0.005);
    CHECK_THROWS(quantile({}, 0.5));
}

TEST_CASE("summaries") {
    PosteriorChains pc;
    pc.names = {"x"};
    ChainResult c;
    c.dim = 1;
    c.draws = {1, 2, 3, 4};
    c.log_post = {0, 0, 0, 0};
    pc.chains = {c, c};
    const auto s = summarize(pc);
    REQUIRE(s.size() == 1);
    CHECK(s[0].mean == 2.5);
    CHECK(s[0].ci_low <= s[0].ci_high);
    CHECK(s[0].r_hat == doctest::Approx(std::sqrt(0.75)));
    CHECK(s[0].ess <= 8.0);

    ChainResult anti;
    anti.dim = 1;
    for (int k = 0; k < 2000; ++k) anti.draws.push_back(k % 2 == 0 ? 1.0 : -1.0);
    anti.log_post.assign(2000, 0.0);
    pc.chains = {anti, anti};
    CHECK(summarize(pc)[0].ess <= 4000.0);
}

TEST_CASE("Metropolis on a standard normal") {
    const LogDensity target = [](std::span<const double> x) { return -0.5 * x[0] * x[0]; };
    const Transform identity{Transform::Kind::identity, 0.0, 0.0};
    SamplerConfig cfg;
    cfg.iters = 105000;
    cfg.warmup = 5000;
    const std::vector<double> init = {3.0};
    const ChainResult r = run_chain(target, std::span(&identity, 1), init, cfg, 17);
    REQUIRE(r.size() == 100000);
    const auto x = r.column(0);
    CHECK(std::abs(mean_of(x)) <= 0.02);
    CHECK(std::abs(variance_of(x) - 1.0) <= 0.05);
    CHECK(r.acceptance_rate == doctest::Approx(0.23).epsilon(0.3));
    CHECK_FALSE(r.adaptation_warning);
}

TEST_CASE("sampler respects a narrow support") {
    // Uniform on [0.2, 0.3] through a logit transform; nothing may leave it.
    const Prior prior = Prior::uniform(0.2, 0.3);
    const LogDensity target = [&](std::span<const double> x) { return prior.log_density(x[0]); };
    const Transform t = prior.transform();
    SamplerConfig cfg;
    cfg.iters = 20000;
    cfg.warmup = 2000;
    const std::vector<double> init = {0.25};
    const ChainResult r = run_chain(target, std::span(&t, 1), init, cfg, 5);
    for (double v : r.draws) {
        CHECK(v > 0.2);
        CHECK(v < 0.3);
    }
    CHECK(mean_of(r.draws) == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("rejecting every proposal raises the adaptation warning") {
    const LogDensity target = [](std::span<const double> x) { return x[0] == 1.0 ? 0.0 : -kInf; };
    const Transform identity{Transform::Kind::identity, 0.0, 0.0};
    SamplerConfig cfg;
    cfg.iters = 600;
    cfg.warmup = 500;
    const std::vector<double> init = {1.0};
    const ChainResult r = run_chain(target, std::span(&identity, 1), init, cfg, 1);
    CHECK(r.adaptation_warning);
    CHECK(r.acceptance_rate == 0.0);
    for (double v : r.draws) CHECK(v == 1.0);
}

TEST_CASE("sampler arguments are checked") {
    const LogDensity target = [](std::span<const double> x) { return -x[0] * x[0]; };
    const Transform identity{Transform::Kind::identity, 0.0, 0.0};
    SamplerConfig cfg;
    cfg.iters = 100;
    cfg.warmup = 100;
    const std::vector<double> init = {0.0};
    CHECK_THROWS_AS(run_chain(target, std::span(&identity, 1), init, cfg, 1), DomainError);
    cfg.iters = 200;
    const std::vector<double> two = {0.0, 1.0};
    CHECK_THROWS_AS(run_chain(target, std::span(&identity, 1), two, cfg, 1), DomainError);
    const LogDensity nowhere = [](std::span<const double>) { return -kInf; };
    CHECK_THROWS_AS(run_chain(nowhere, std::span(&identity, 1), init, cfg, 1), DomainError);
}

TEST_CASE("sampling the prior alone") {
    const CaseSeries empty;
    SamplerConfig cfg;
    cfg.iters = 50000;
    cfg.warmup = 5000;
    cfg.seed = 8;
    const PriorSpec spec;
    const PosteriorChains pc = run_mh(empty, spec, fit_setup(), cfg);
    REQUIRE(pc.chains.size() == 4);
    CHECK(std::abs(mean_of(pc.pooled(kTp)) - 220.0) <= 1.0);
    for (std::size_t j = 0; j < kThetaDim; ++j) {
        CHECK(gelman_rubin(pc.parameter(j)) < 1.05);
        for (const auto& c : pc.chains)
            for (std::size_t i = 0; i < c.size(); ++i) CHECK(spec.priors[j].in_support(c.at(i, j)));
    }
    const auto summary = summarize(pc);
    CHECK(std::abs(summary[kTp].mean - 220.0) <= 1.0);
    for (const auto& s : summary) {
        CHECK(s.ci_low <= s.ci_high);
        CHECK(s.ess <= 4.0 * 45000.0);
    }
}

TEST_CASE("fits are reproducible and stay in the support") {
    const FitSetup setup = fit_setup();
    const CaseSeries data = generate_synthetic(setup, kTruth, 25.0, 120, 2);
    SamplerConfig cfg;
    cfg.chains = 2;
    cfg.iters = 1500;
    cfg.warmup = 500;
    cfg.seed = 7;
    const PriorSpec spec;
    const PosteriorChains a = run_mh(data, spec, setup, cfg);
    const PosteriorChains b = run_mh(data, spec, setup, cfg);
    CHECK(a == b);
    REQUIRE(a.draws_per_chain() == 1000);
    for (const auto& c : a.chains) {
        CHECK(c.size() == 1000);
        CHECK(c.log_post.size() == 1000);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < kThetaDim; ++j) CHECK(spec.priors[j].in_support(c.at(i, j)));
    }
    CHECK(a.chains[0].seed != a.chains[1].seed);
    CHECK(a.chains[0].draws != a.chains[1].draws);

    const auto sa = summarize(a);
    const auto sb = summarize(b);
    for (std::size_t j = 0; j < sa.size(); ++j) {
        CHECK(sa[j].mean == sb[j].mean);
        CHECK(sa[j].ess == sb[j].ess);
    }
    PredictiveOptions po;
    po.draws = 50;
    const PredictiveBand ba = posterior_predictive(a, data, setup, po);
    const PredictiveBand bb = posterior_predictive(b, data, setup, po);
    CHECK(ba == bb);
    for (std::size_t i = 0; i < ba.day.size(); ++i) CHECK(ba.lower[i] <= ba.upper[i]);

    SamplerConfig other = cfg;
    other.seed = 8;
    CHECK_FALSE(run_mh(data, spec, setup, other) == a);

    SamplerConfig bad = cfg;
    bad.warmup = bad.iters;
    CHECK_THROWS_AS(run_mh(data, spec, setup, bad), DomainError);
    bad = cfg;
    bad.chains = 0;
    CHECK_THROWS_AS(run_mh(data, spec, setup, bad), DomainError);
}

TEST_CASE("predictive band collapses without noise") {
    const FitSetup setup = fit_setup();
    const CaseSeries data = generate_synthetic(setup, kTruth, 0.0, 60, 1);
    PosteriorChains pc;
    for (auto n : theta_names()) pc.names.emplace_back(n);
    ChainResult c;
    c.dim = kThetaDim;
    c.draws.assign(std::begin(kTruth), std::end(kTruth));
    c.draws[kSigmaObs] = 0.0;
    c.log_post = {0.0};
    pc.chains = {c};
    PredictiveOptions po;
    po.draws = 20;
    const PredictiveBand band = posterior_predictive(pc, data, setup, po);
    REQUIRE(band.day.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(band.lower[i] == doctest::Approx(data.count[i]).epsilon(1e-12));
        CHECK(band.upper[i] == doctest::Approx(data.count[i]).epsilon(1e-12));
        CHECK(band.model_mean[i] == doctest::Approx(data.count[i]).epsilon(1e-12));
    }
    CHECK(band.coverage() == 1.0);
}

TEST_CASE("sampler transforms") {
    const PriorSpec spec;
    const auto t = sampler_transforms(spec);
    REQUIRE(t.size() == kThetaDim);
    CHECK(t[kBetaNp].kind == Transform::Kind::logit);
    CHECK(t[kTp].kind == Transform::Kind::identity);
    CHECK(t[kSigma].kind == Transform::Kind::log);
    CHECK(t[kSigmaObs].kind == Transform::Kind::log);
}
