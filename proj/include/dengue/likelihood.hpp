#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dengue/cases.hpp"
#include "dengue/model.hpp"
#include "dengue/priors.hpp"

namespace dengue {

enum class ErrorModel {
    gaussian,    // full Gaussian with sampled sigma_obs
    simplified,  // log L = -sum of squared residuals
};

std::string_view to_string(ErrorModel e);
ErrorModel parse_error_model(std::string_view s);

/// How the ODE is run when scoring a parameter vector against data.
struct FitSetup {
    ModelParams base;  // supplies delta, gamma, mu, N, omega
    Observable observable = Observable::incidence;
    ErrorModel error = ErrorModel::gaussian;
    double step = 0.1;
    std::optional<double> i0;  // initial infectious; derived from the first count if unset
    std::optional<double> e0;  // initial exposed; quasi-equilibrium if unset
};

/// Copy of `base` with the five seasonality components of theta applied.
ModelParams apply_theta(const ModelParams& base, std::span<const double> theta);

/// Initial state for fitting: explicit i0/e0 when given, otherwise I(0) from
/// the first observed count under the observable convention and
/// E(0) = (gamma + mu) / delta * I(0).
SeirState fit_initial_state(const FitSetup& setup, const ModelParams& p, double first_count);

/// Model-predicted y(t_i) aligned with data.day. Throws IntegrationError or
/// DomainError for unusable parameters.
std::vector<double> predict_cases(const FitSetup& setup, const ModelParams& p,
                                  const CaseSeries& data);

/// sum_i [-0.5 ln(2 pi s^2) - (D_i - y_i)^2 / (2 s^2)]
double gaussian_log_likelihood(std::span<const double> observed,
                               std::span<const double> predicted, double sigma_obs);

/// -sum_i (D_i - y_i)^2
double simplified_log_likelihood(std::span<const double> observed,
                                 std::span<const double> predicted);

/// Log likelihood of theta (kThetaDim entries). Invalid parameters and
/// integration failures score -inf.
double log_likelihood(std::span<const double> theta, const CaseSeries& data,
                      const FitSetup& setup);

}  // namespace dengue
