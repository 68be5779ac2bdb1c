#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace dengue {

/// Epidemiological and seasonality constants of the seasonal SEIR model.
/// Defaults are the posterior means and fixed rates of the 2023 fit; the
/// population defaults to the desk-scale CTMC size.
struct ModelParams {
    double beta_np = 0.0567;   // baseline transmission, 1/day
    double a_beta = 0.047;     // Gaussian amplitude, 1/day
    double beta_peak = 0.085;  // logistic peak transmission, 1/day
    double t_p = 190.72;       // peak time, day of year
    double sigma = 61.817;     // seasonal width, days
    double delta = 0.25;       // incubation rate, 1/day
    double gamma = 0.125;      // recovery rate, 1/day
    double mu = 3.80e-5;       // natural death rate, 1/day
    double pop = 1.0e6;        // N, persons
    double omega = 365.0;      // forcing period, days

    /// Recruitment Lambda = mu N; keeps N constant.
    double recruitment() const { return mu * pop; }

    /// Upper bound of the transmission rate over all t.
    double beta_max() const { return beta_np + a_beta + beta_peak; }

    /// Throws DomainError when any invariant is violated.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// Names accepted by get_param/set_param (snake_case field names).
std::span<const std::string_view> param_names();
double get_param(const ModelParams& p, std::string_view name);
void set_param(ModelParams& p, std::string_view name, double value);
bool is_param_name(std::string_view name);

/// Continuous compartment state at time t.
struct SeirState {
    double t = 0.0;
    double S = 0.0;
    double E = 0.0;
    double I = 0.0;
    double R = 0.0;

    double total() const { return S + E + I + R; }
};

enum class Observable { incidence, prevalence };

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view s);

struct Trajectory {
    std::vector<double> t;
    std::vector<SeirState> states;
    std::vector<double> observable;

    std::size_t size() const { return t.size(); }
};

/// Seasonal transmission rate at time t. The time is wrapped into [0, omega)
/// before evaluating the Gaussian + logistic profile.
double transmission_rate(const ModelParams& p, double t);

/// Profile evaluated at t without periodic wrapping.
double transmission_profile(const ModelParams& p, double t);

/// Period average of the transmission rate by composite Simpson quadrature of
/// the unwrapped profile on [0, omega] with step <= 0.25 day.
double mean_transmission_rate(const ModelParams& p);

using StateDerivative = std::array<double, 4>;

/// Right-hand side (dS, dE, dI, dR) of the seasonal SEIR system.
StateDerivative ode_rhs(const ModelParams& p, const SeirState& x, double t);

/// Observable value for a state: delta*E (incidence) or I (prevalence).
double observe(const ModelParams& p, const SeirState& x, Observable o);

/// Fixed-step RK4 from init.t to t_end, sampled at every integer day offset
/// from init.t (and at t_end). Throws IntegrationError when a compartment
/// drops below -1e-9 N.
Trajectory integrate(const ModelParams& p, const SeirState& init, double t_end,
                     double h = 0.1, Observable observable = Observable::incidence);

/// S = N - E - I, R = 0 with E defaulting to the quasi-equilibrium
/// (gamma + mu) / delta * I.
SeirState seeded_state(const ModelParams& p, double infectious, double exposed = -1.0,
                       double t0 = 0.0);

}  // namespace dengue
