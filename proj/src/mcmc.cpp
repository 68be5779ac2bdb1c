#include "dengue/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "dengue/errors.hpp"
#include "dengue/random.hpp"

namespace dengue {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Running mean and co-moment matrix on the unconstrained scale.
struct Moments {
    explicit Moments(std::size_t d) : d(d), mean(d, 0.0), comoment(d * d, 0.0) {}
    void add(std::span<const double> x) {
        ++n;
        std::vector<double> delta(d);
        for (std::size_t j = 0; j < d; ++j) {
            delta[j] = x[j] - mean[j];
            mean[j] += delta[j] / static_cast<double>(n);
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) comoment[i * d + j] += delta[i] * (x[j] - mean[j]);
    }
    double covariance(std::size_t i, std::size_t j) const {
        return comoment[i * d + j] / static_cast<double>(n - 1);
    }
    std::size_t d;
    std::size_t n = 0;
    std::vector<double> mean;
    std::vector<double> comoment;
};

// Row-major lower Cholesky factor; empty when `a` is not positive definite.
std::vector<double> cholesky(const std::vector<double>& a, std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    const Eigen::LLT<Eigen::MatrixXd> llt(Eigen::Map<const RowMatrix>(a.data(), n, n));
    if (llt.info() != Eigen::Success) return {};
    std::vector<double> l(d * d);
    Eigen::Map<RowMatrix>(l.data(), n, n) = llt.matrixL();
    return l;
}

struct NegLogTarget {
    const std::function<double(const std::vector<double>&)>* f;
    std::size_t d;
};

double nm_objective(const gsl_vector* x, void* params) {
    const auto* nl = static_cast<const NegLogTarget*>(params);
    std::vector<double> u(nl->d);
    for (std::size_t j = 0; j < nl->d; ++j) u[j] = gsl_vector_get(x, j);
    const double v = (*nl->f)(u);
    return std::isfinite(v) ? -v : 1e300;
}

// Local posterior mode from `start` (Nelder-Mead simplex) and the inverse of a
// finite-difference Hessian there, eigenvalues floored so the result is
// positive definite. Empty covariance when the search fails.
struct Laplace {
    std::vector<double> mode;
    std::vector<double> covariance;
};

Laplace laplace_fit(const std::function<double(const std::vector<double>&)>& log_target,
                    std::vector<double> start, std::span<const double> steps) {
    const std::size_t d = start.size();
    NegLogTarget params{&log_target, d};
    gsl_multimin_function fn{&nm_objective, d, &params};
    gsl_vector* x = gsl_vector_alloc(d);
    gsl_vector* ss = gsl_vector_alloc(d);
    for (std::size_t j = 0; j < d; ++j) {
        gsl_vector_set(x, j, start[j]);
        gsl_vector_set(ss, j, steps[j]);
    }
    gsl_multimin_fminimizer* nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d);
    gsl_multimin_fminimizer_set(nm, &fn, x, ss);
    // Restarting the simplex at the incumbent guards against early collapse.
    for (int restart = 0; restart < 3; ++restart) {
        for (int it = 0; it < 4000; ++it) {
            if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), 1e-7) == GSL_SUCCESS) break;
        }
        gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(nm));
        gsl_multimin_fminimizer_set(nm, &fn, x, ss);
    }
    Laplace out;
    out.mode.resize(d);
    for (std::size_t j = 0; j < d; ++j) out.mode[j] = gsl_vector_get(x, j);
    gsl_multimin_fminimizer_free(nm);
    gsl_vector_free(ss);
    gsl_vector_free(x);

    auto f = [&](const std::vector<double>& u) { return -log_target(u); };
    const double f0 = f(out.mode);
    if (!std::isfinite(f0)) return out;
    std::vector<double> h(d);
    for (std::size_t j = 0; j < d; ++j) h[j] = 1e-4 * std::max(1.0, std::abs(out.mode[j]));
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd hess(n, n);
    std::vector<double> u = out.mode;
    for (std::size_t i = 0; i < d; ++i) {
        u[i] = out.mode[i] + h[i];
        const double fp = f(u);
        u[i] = out.mode[i] - h[i];
        const double fm = f(u);
        u[i] = out.mode[i];
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (std::size_t j = 0; j < i; ++j) {
            double acc = 0.0;
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    u[i] = out.mode[i] + si * h[i];
                    u[j] = out.mode[j] + sj * h[j];
                    acc += si * sj * f(u);
                }
            u[i] = out.mode[i];
            u[j] = out.mode[j];
            hess(i, j) = hess(j, i) = acc / (4.0 * h[i] * h[j]);
        }
    }
    if (!hess.allFinite()) return out;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
    if (eig.info() != Eigen::Success) return out;
    Eigen::VectorXd lambda = eig.eigenvalues().cwiseAbs();
    const double floor = std::max(lambda.maxCoeff() * 1e-10, 1e-12);
    lambda = lambda.cwiseMax(floor);
    const Eigen::MatrixXd cov =
        eig.eigenvectors() * lambda.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    out.covariance.resize(d * d);
    Eigen::Map<RowMatrix>(out.covariance.data(), n, n) = cov;
    return out;
}

double initial_step(const Transform& t) {
    return t.kind == Transform::Kind::identity ? 0.2 : 0.02;
}

}  // namespace

std::vector<double> ChainResult::column(std::size_t j) const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i, j);
    return out;
}

std::vector<std::vector<double>> PosteriorChains::parameter(std::size_t j) const {
    std::vector<std::vector<double>> out;
    out.reserve(chains.size());
    for (const auto& c : chains) out.push_back(c.column(j));
    return out;
}

std::vector<double> PosteriorChains::pooled(std::size_t j) const {
    std::vector<double> out;
    for (const auto& c : chains) {
        auto col = c.column(j);
        out.insert(out.end(), col.begin(), col.end());
    }
    return out;
}

std::uint64_t chain_seed(std::uint64_t master, std::size_t index) {
    return stream_seed(master, 0x4d434d43ULL + index);
}

ChainResult run_chain(const LogDensity& target, std::span<const Transform> transforms,
                      std::span<const double> init, const SamplerConfig& config,
                      std::uint64_t seed) {
    const std::size_t d = transforms.size();
    if (init.size() != d) throw DomainError("initial point dimension mismatch");
    if (config.iters <= config.warmup) throw DomainError("iters must exceed warmup");
    const std::size_t window = std::max<std::size_t>(config.adapt_window, 1);

    Rng rng{seed};
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> u(d), theta(init.begin(), init.end());
    for (std::size_t j = 0; j < d; ++j) u[j] = transforms[j].to_unconstrained(theta[j]);

    auto evaluate = [&](const std::vector<double>& point, std::vector<double>& constrained,
                        double& log_target) {
        double jac = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            constrained[j] = transforms[j].to_constrained(point[j]);
            jac += transforms[j].log_jacobian(point[j]);
        }
        log_target = target(constrained);
        return std::isnan(log_target) ? kNegInf : log_target + jac;
    };

    double current_lp = 0.0;
    double current = evaluate(u, theta, current_lp);
    if (current == kNegInf) throw DomainError("chain initial point has zero target density");

    // Proposal factor: step = exp(log_scale) * chol * z.
    std::vector<double> chol(d * d, 0.0);
    for (std::size_t j = 0; j < d; ++j) chol[j * d + j] = initial_step(transforms[j]);
    double log_scale = 0.0;
    const double optimal_var = 2.38 * 2.38 / static_cast<double>(d);

    if (config.laplace_start && d > 0) {
        std::vector<double> scratch(d);
        const std::function<double(const std::vector<double>&)> log_target =
            [&](const std::vector<double>& point) {
                double lp = 0.0;
                return evaluate(point, scratch, lp);
            };
        std::vector<double> steps(d);
        for (std::size_t j = 0; j < d; ++j) steps[j] = initial_step(transforms[j]);
        const Laplace fit = laplace_fit(log_target, u, steps);
        std::vector<double> cov = fit.covariance;
        for (auto& c : cov) c *= optimal_var;
        auto factor = cov.empty() ? std::vector<double>{} : cholesky(cov, d);
        if (!factor.empty()) {
            chol = factor;
            // Start from a draw of the local Gaussian approximation.
            const auto approx = cholesky(fit.covariance, d);
            std::vector<double> start(fit.mode), start_theta(d);
            for (std::size_t i = 0; i < d; ++i) {
                const double zi = normal(rng);
                for (std::size_t k = i; k < d; ++k) start[k] += approx[k * d + i] * zi;
            }
            double start_lp = 0.0;
            const double value = evaluate(start, start_theta, start_lp);
            if (value == kNegInf) start = fit.mode;
            double lp = 0.0;
            const double chosen = evaluate(start, start_theta, lp);
            if (chosen != kNegInf) {
                u = start;
                theta = start_theta;
                current = chosen;
                current_lp = lp;
            }
        }
    }

    // The covariance is re-estimated at 30, 50, 70 and 90% of warm-up from all
    // draws since 10%.
    const std::size_t w = config.warmup;
    const std::size_t adapt_begin = w / 10;
    const std::size_t adapt_end = 9 * w / 10;
    const std::vector<std::size_t> window_ends = {3 * w / 10, 5 * w / 10, 7 * w / 10, adapt_end};
    auto stage_end = [&](std::size_t it) {
        return std::find(window_ends.begin(), window_ends.end(), it + 1) != window_ends.end();
    };

    ChainResult out;
    out.seed = seed;
    out.dim = d;
    const std::size_t kept = config.iters - w;
    out.draws.reserve(kept * d);
    out.log_post.reserve(kept);

    Moments moments(d);
    std::vector<double> proposal(d), proposal_theta(d), z(d);
    std::size_t window_accepts = 0;
    std::size_t window_count = 0;
    std::size_t warm_accepts = 0;
    std::size_t accepts = 0;

    for (std::size_t it = 0; it < config.iters; ++it) {
        const bool warming = it < w;
        const double scale = std::exp(log_scale);
        for (auto& zj : z) zj = normal(rng);
        for (std::size_t i = 0; i < d; ++i) {
            double step = 0.0;
            for (std::size_t k = 0; k <= i; ++k) step += chol[i * d + k] * z[k];
            proposal[i] = u[i] + scale * step;
        }
        double proposal_lp = 0.0;
        const double candidate = evaluate(proposal, proposal_theta, proposal_lp);
        bool accept = false;
        if (candidate != kNegInf) {
            const double log_ratio = candidate - current;
            accept = log_ratio >= 0.0 || std::log(uniform01(rng)) < log_ratio;
        }
        if (accept) {
            u.swap(proposal);
            theta.swap(proposal_theta);
            current = candidate;
            current_lp = proposal_lp;
        }

        if (!warming) {
            accepts += accept;
            out.draws.insert(out.draws.end(), theta.begin(), theta.end());
            out.log_post.push_back(current_lp);
            continue;
        }

        warm_accepts += accept;
        window_accepts += accept;
        if (it >= adapt_begin && it < adapt_end) moments.add(u);
        if (stage_end(it)) {
            if (moments.n > 2 * d + 2) {
                std::vector<double> cov(d * d, 0.0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        if (config.proposal == ProposalShape::dense || i == j)
                            cov[i * d + j] = optimal_var * moments.covariance(i, j);
                for (std::size_t i = 0; i < d; ++i) cov[i * d + i] += 1e-12;
                auto factor = cholesky(cov, d);
                if (!factor.empty()) {
                    chol = std::move(factor);
                    window_count = 0;
                }
            }
        }
        if ((it + 1) % window == 0) {
            if (window_accepts == 0) out.adaptation_warning = true;
            const double rate = static_cast<double>(window_accepts) / static_cast<double>(window);
            // Gain decays from each covariance update; a silent window halves the step.
            ++window_count;
            const double gain = 2.0 / std::sqrt(static_cast<double>(window_count));
            log_scale += rate == 0.0 ? -std::log(2.0) : gain * (rate - config.target_accept);
            window_accepts = 0;
        }
    }

    out.acceptance_rate = static_cast<double>(accepts) / static_cast<double>(kept);
    out.warmup_acceptance_rate =
        w == 0 ? 0.0 : static_cast<double>(warm_accepts) / static_cast<double>(w);
    const double scale = std::exp(log_scale);
    out.proposal_scale.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        double var = 0.0;
        for (std::size_t k = 0; k <= i; ++k) var += chol[i * d + k] * chol[i * d + k];
        out.proposal_scale[i] = scale * std::sqrt(var);
    }
    return out;
}

std::vector<Transform> sampler_transforms(const PriorSpec& priors) {
    std::vector<Transform> out;
    for (const auto& p : priors.priors) out.push_back(p.transform());
    // The seasonal width is positive for every valid model, so a normal
    // prior on it still leaves the posterior on (0, inf).
    if (priors.priors[kSigma].kind() == Prior::Kind::normal)
        out[kSigma] = {Transform::Kind::log, 0.0, 0.0};
    return out;
}

Theta chain_start(const LogDensity& target, const PriorSpec& priors, std::uint64_t seed) {
    Theta start = initial_theta(priors, seed);
    for (int attempt = 0; attempt < 100 && target(start) == kNegInf; ++attempt)
        start = initial_theta(priors, mix64(seed + static_cast<std::uint64_t>(attempt) + 1));
    return start;
}

Theta initial_theta(const PriorSpec& priors, std::uint64_t seed) {
    const Theta center = {0.0567, 0.047, 190.72, 61.817, 0.085, 10.0};
    Rng rng{mix64(seed ^ 0x1217ULL)};
    std::normal_distribution<double> normal(0.0, 1.0);
    Theta out{};
    for (std::size_t j = 0; j < kThetaDim; ++j) {
        const Prior& prior = priors.priors[j];
        double c = center[j];
        const Transform t = prior.transform();
        const bool interior = prior.in_support(c) &&
                              std::isfinite(t.to_unconstrained(c));
        if (!interior) {
            switch (prior.kind()) {
                case Prior::Kind::uniform: c = 0.5 * (prior.first() + prior.second()); break;
                case Prior::Kind::normal: c = prior.first(); break;
                case Prior::Kind::exponential: c = 1.0 / prior.first(); break;
            }
        }
        const double jitter = prior.kind() == Prior::Kind::normal ? 0.05 * prior.second() : 0.1;
        out[j] = t.to_constrained(t.to_unconstrained(c) + jitter * normal(rng));
    }
    return out;
}

PosteriorChains run_mh(const CaseSeries& data, const PriorSpec& priors, const FitSetup& setup,
                       const SamplerConfig& config) {
    if (config.chains == 0) throw DomainError("at least one chain is required");
    if (config.iters <= config.warmup) throw DomainError("iters must exceed warmup");
    data.validate();

    const std::vector<Transform> transforms = sampler_transforms(priors);

    const LogDensity target = [&](std::span<const double> theta) {
        const double lp = log_prior(theta, priors);
        if (lp == kNegInf) return kNegInf;
        return lp + log_likelihood(theta, data, setup);
    };

    PosteriorChains out;
    for (auto n : theta_names()) out.names.emplace_back(n);
    out.warmup = config.warmup;
    out.chains.resize(config.chains);

    const auto n = static_cast<long>(config.chains);
    std::vector<std::exception_ptr> errors(config.chains);
#pragma omp parallel for schedule(dynamic, 1)
    for (long c = 0; c < n; ++c) {
        try {
            const std::uint64_t s = chain_seed(config.seed, static_cast<std::size_t>(c));
            const Theta start = chain_start(target, priors, s);
            out.chains[static_cast<std::size_t>(c)] = run_chain(target, transforms, start, config, s);
        } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace dengue
