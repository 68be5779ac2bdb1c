#include "dengue/model.hpp"

#include <cmath>
#include <string>

#include "dengue/errors.hpp"
#include "dengue/rk4.hpp"

namespace dengue {

namespace {

constexpr std::array<std::string_view, 10> kParamNames = {
    "beta_np", "a_beta", "beta_peak", "t_p", "sigma",
    "delta",   "gamma",  "mu",        "pop", "omega"};

double* field(ModelParams& p, std::string_view name) {
    if (name == "beta_np") return &p.beta_np;
    if (name == "a_beta") return &p.a_beta;
    if (name == "beta_peak") return &p.beta_peak;
    if (name == "t_p") return &p.t_p;
    if (name == "sigma") return &p.sigma;
    if (name == "delta") return &p.delta;
    if (name == "gamma") return &p.gamma;
    if (name == "mu") return &p.mu;
    if (name == "pop") return &p.pop;
    if (name == "omega") return &p.omega;
    return nullptr;
}

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

void ModelParams::validate() const {
    const double rates[] = {beta_np, a_beta, beta_peak, delta, gamma, mu};
    for (double r : rates) require(std::isfinite(r) && r >= 0.0, "rates must be finite and >= 0");
    require(std::isfinite(pop) && pop >= 1.0, "population must be >= 1");
    require(std::isfinite(omega) && omega > 0.0, "period omega must be > 0");
    require(std::isfinite(sigma) && sigma > 0.0, "seasonal width sigma must be > 0");
    require(std::isfinite(t_p) && t_p >= 0.0 && t_p < omega, "peak time must lie in [0, omega)");
}

std::span<const std::string_view> param_names() { return kParamNames; }

bool is_param_name(std::string_view name) {
    ModelParams p;
    return field(p, name) != nullptr;
}

double get_param(const ModelParams& p, std::string_view name) {
    ModelParams copy = p;
    const double* f = field(copy, name);
    if (f == nullptr) throw DomainError("unknown model parameter '" + std::string(name) + "'");
    return *f;
}

void set_param(ModelParams& p, std::string_view name, double value) {
    double* f = field(p, name);
    if (f == nullptr) throw DomainError("unknown model parameter '" + std::string(name) + "'");
    *f = value;
}

std::string_view to_string(Observable o) {
    return o == Observable::incidence ? "incidence" : "prevalence";
}

Observable parse_observable(std::string_view s) {
    if (s == "incidence") return Observable::incidence;
    if (s == "prevalence") return Observable::prevalence;
    throw DomainError("observable must be 'incidence' or 'prevalence', got '" + std::string(s) + "'");
}

double transmission_profile(const ModelParams& p, double t) {
    const double d = t - p.t_p;
    const double gaussian = p.a_beta * std::exp(-(d * d) / (2.0 * p.sigma * p.sigma));
    const double logistic = p.beta_peak / (1.0 + std::exp((d - p.sigma) / p.sigma));
    return p.beta_np + gaussian + logistic;
}

double transmission_rate(const ModelParams& p, double t) {
    p.validate();
    double wrapped = std::fmod(t, p.omega);
    if (wrapped < 0.0) wrapped += p.omega;
    return transmission_profile(p, wrapped);
}

double mean_transmission_rate(const ModelParams& p) {
    p.validate();
    auto intervals = static_cast<long>(std::ceil(p.omega / 0.25));
    if (intervals % 2 != 0) ++intervals;
    const double h = p.omega / static_cast<double>(intervals);
    double odd = 0.0;
    double even = 0.0;
    for (long i = 1; i < intervals; ++i) {
        const double v = transmission_profile(p, h * static_cast<double>(i));
        (i % 2 == 1 ? odd : even) += v;
    }
    const double ends = transmission_profile(p, 0.0) + transmission_profile(p, p.omega);
    const double integral = (h / 3.0) * (ends + 4.0 * odd + 2.0 * even);
    return integral / p.omega;
}

namespace {

StateDerivative rhs_with_rate(const ModelParams& p, const SeirState& x, double beta) {
    const double force = beta * x.I * x.S / p.pop;
    return {p.recruitment() - force - p.mu * x.S,
            force - (p.delta + p.mu) * x.E,
            p.delta * x.E - (p.gamma + p.mu) * x.I,
            p.gamma * x.I - p.mu * x.R};
}

}  // namespace

StateDerivative ode_rhs(const ModelParams& p, const SeirState& x, double t) {
    return rhs_with_rate(p, x, transmission_rate(p, t));
}

double observe(const ModelParams& p, const SeirState& x, Observable o) {
    return o == Observable::incidence ? p.delta * x.E : x.I;
}

SeirState seeded_state(const ModelParams& p, double infectious, double exposed, double t0) {
    if (infectious < 0.0) throw DomainError("initial infectious count must be >= 0");
    const double e = exposed >= 0.0 ? exposed : (p.gamma + p.mu) / p.delta * infectious;
    if (e + infectious > p.pop) throw DomainError("initial E + I exceeds the population");
    return {t0, p.pop - e - infectious, e, infectious, 0.0};
}

Trajectory integrate(const ModelParams& p, const SeirState& init, double t_end, double h,
                     Observable observable) {
    p.validate();
    if (!(h > 0.0)) throw DomainError("step h must be > 0");
    if (!(t_end > init.t)) throw DomainError("t_end must exceed the initial time");
    if (init.S < 0.0 || init.E < 0.0 || init.I < 0.0 || init.R < 0.0)
        throw DomainError("initial compartments must be >= 0");

    const double floor_value = -1e-9 * p.pop;
    // beta is discontinuous at multiples of omega. Steps never straddle one,
    // and within a step the profile is taken relative to the period the step
    // starts in, so every step sees a smooth right-hand side.
    double period_start = 0.0;
    auto rhs = [&p, &period_start](double t, const Vec<4>& y) {
        return rhs_with_rate(p, SeirState{t, y[0], y[1], y[2], y[3]}, transmission_profile(p, t - period_start));
    };

    Trajectory out;
    const auto n_out = static_cast<std::size_t>(std::floor(t_end - init.t + 1e-12)) + 1;
    out.t.reserve(n_out + 1);
    out.states.reserve(n_out + 1);
    out.observable.reserve(n_out + 1);
    auto record = [&](double t, const Vec<4>& y) {
        const SeirState s{t, y[0], y[1], y[2], y[3]};
        out.t.push_back(t);
        out.states.push_back(s);
        out.observable.push_back(observe(p, s, observable));
    };

    Vec<4> y{init.S, init.E, init.I, init.R};
    double t = init.t;
    record(t, y);
    while (t < t_end - 1e-12) {
        const double next = std::min(t + 1.0, t_end);
        for (double a = t; a < next - 1e-12;) {
            period_start = p.omega * std::floor((a + 1e-9) / p.omega);
            const double b = std::min(next, period_start + p.omega);
            const auto steps = static_cast<long>(std::ceil((b - a) / h - 1e-9));
            const double dt = (b - a) / static_cast<double>(steps);
            for (long k = 0; k < steps; ++k) {
                y = rk4_step<4>(rhs, a + dt * static_cast<double>(k), y, dt);
                for (double v : y) {
                    if (!(v >= floor_value))
                        throw IntegrationError("negative compartment during integration at t=" +
                                               std::to_string(t));
                }
            }
            a = b;
        }
        t = next;
        record(t, y);
    }
    return out;
}

}  // namespace dengue
