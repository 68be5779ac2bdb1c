#include "dengue/likelihood.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dengue/errors.hpp"

namespace dengue {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::string_view to_string(ErrorModel e) {
    return e == ErrorModel::gaussian ? "gaussian" : "simplified";
}

ErrorModel parse_error_model(std::string_view s) {
    if (s == "gaussian") return ErrorModel::gaussian;
    if (s == "simplified") return ErrorModel::simplified;
    throw DomainError("likelihood must be 'gaussian' or 'simplified', got '" + std::string(s) + "'");
}

ModelParams apply_theta(const ModelParams& base, std::span<const double> theta) {
    if (theta.size() < kSigmaObs)
        throw DomainError("parameter vector too short for the seasonality components");
    ModelParams p = base;
    p.beta_np = theta[kBetaNp];
    p.a_beta = theta[kABeta];
    p.t_p = theta[kTp];
    p.sigma = theta[kSigma];
    p.beta_peak = theta[kBetaPeak];
    return p;
}

SeirState fit_initial_state(const FitSetup& setup, const ModelParams& p, double first_count) {
    double infectious = 0.0;
    if (setup.i0) {
        infectious = *setup.i0;
    } else if (setup.observable == Observable::incidence) {
        // first_count = delta E(0) and E(0) = (gamma + mu) / delta I(0)
        infectious = first_count / (p.gamma + p.mu);
    } else {
        infectious = first_count;
    }
    return seeded_state(p, infectious, setup.e0.value_or(-1.0), 0.0);
}

std::vector<double> predict_cases(const FitSetup& setup, const ModelParams& p,
                                  const CaseSeries& data) {
    if (data.empty()) return {};
    const SeirState init = fit_initial_state(setup, p, data.count.front());
    const double t_end = std::max(1.0, static_cast<double>(data.day.back()));
    const Trajectory traj = integrate(p, init, t_end, setup.step, setup.observable);
    std::vector<double> y;
    y.reserve(data.size());
    for (int d : data.day) y.push_back(traj.observable.at(static_cast<std::size_t>(d)));
    return y;
}

double gaussian_log_likelihood(std::span<const double> observed,
                               std::span<const double> predicted, double sigma_obs) {
    if (observed.size() != predicted.size())
        throw DomainError("observed and predicted series differ in length");
    if (!(sigma_obs > 0.0)) return kNegInf;
    const double var = sigma_obs * sigma_obs;
    const double norm = -0.5 * std::log(2.0 * std::numbers::pi * var);
    double sse = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double r = observed[i] - predicted[i];
        sse += r * r;
    }
    return static_cast<double>(observed.size()) * norm - sse / (2.0 * var);
}

double simplified_log_likelihood(std::span<const double> observed,
                                 std::span<const double> predicted) {
    if (observed.size() != predicted.size())
        throw DomainError("observed and predicted series differ in length");
    double sse = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double r = observed[i] - predicted[i];
        sse += r * r;
    }
    return -sse;
}

double log_likelihood(std::span<const double> theta, const CaseSeries& data,
                      const FitSetup& setup) {
    if (theta.size() != kThetaDim)
        throw DomainError("parameter vector must have " + std::to_string(kThetaDim) + " entries");
    std::vector<double> predicted;
    try {
        const ModelParams p = apply_theta(setup.base, theta);
        predicted = predict_cases(setup, p, data);
    } catch (const DomainError&) {
        return kNegInf;
    } catch (const IntegrationError&) {
        return kNegInf;
    }
    for (double v : predicted)
        if (!std::isfinite(v)) return kNegInf;
    if (setup.error == ErrorModel::simplified) return simplified_log_likelihood(data.count, predicted);
    return gaussian_log_likelihood(data.count, predicted, theta[kSigmaObs]);
}

}  // namespace dengue
