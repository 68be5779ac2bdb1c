#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dengue/errors.hpp"
#include "dengue/model.hpp"

using namespace dengue;

namespace {

ModelParams caption_params() {
    ModelParams p;
    p.beta_np = 0.02;
    p.a_beta = 0.10;
    p.t_p = 200.0;
    p.sigma = 60.0;
    p.beta_peak = 0.03;
    return p;
}

// Profile written out directly, no wrapping.
double profile_oracle(const ModelParams& p, double t) {
    const double g = std::exp(-(t - p.t_p) * (t - p.t_p) / (2.0 * p.sigma * p.sigma));
    const double l = 1.0 / (1.0 + std::exp((t - p.t_p - p.sigma) / p.sigma));
    return p.beta_np + p.a_beta * g + p.beta_peak * l;
}

ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModelParams p;
    p.beta_np = 0.3 * u(rng);
    p.a_beta = 0.3 * u(rng);
    p.beta_peak = 0.6 * u(rng);
    p.t_p = 364.0 * u(rng);
    p.sigma = 5.0 + 150.0 * u(rng);
    p.delta = 0.05 + 0.5 * u(rng);
    p.gamma = 0.05 + 0.3 * u(rng);
    p.mu = 1e-4 * u(rng);
    p.pop = 1e3 + 1e7 * u(rng);
    return p;
}

}  // namespace

TEST_CASE("transmission rate at the peak") {
    const ModelParams p = caption_params();
    const double expected = 0.02 + 0.10 + 0.03 / (1.0 + std::exp(-1.0));
    CHECK(transmission_rate(p, 200.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(transmission_rate(p, 200.0) - 0.14193) < 5e-6);
}

TEST_CASE("transmission rate without seasonal terms is the baseline") {
    ModelParams p = caption_params();
    p.a_beta = 0.0;
    p.beta_peak = 0.0;
    for (double t : {0.0, 17.5, 200.0, 364.9, 1000.0}) CHECK(transmission_rate(p, t) == p.beta_np);
}

TEST_CASE("transmission rate wraps with the period") {
    const ModelParams p = caption_params();
    CHECK(transmission_rate(p, 565.0) == transmission_rate(p, 200.0));
    // Exactly representable sums: bitwise equality.
    for (double t : {0.0, 12.25, 100.5, 200.0, 364.75})
        for (int k = -3; k <= 3; ++k)
            CHECK(transmission_rate(p, t + k * p.omega) == transmission_rate(p, t));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 365.0);
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        CHECK(transmission_rate(p, t + 2 * p.omega) == doctest::Approx(transmission_rate(p, t)).epsilon(1e-12));
    }
}

TEST_CASE("unwrapped profile matches the formula") {
    const ModelParams p = caption_params();
    for (double t = -50.0; t < 800.0; t += 7.3)
        CHECK(transmission_profile(p, t) == doctest::Approx(profile_oracle(p, t)).epsilon(1e-14));
    for (double t = 0.0; t < 365.0; t += 3.1)
        CHECK(transmission_rate(p, t) == doctest::Approx(profile_oracle(p, t)).epsilon(1e-14));
}

TEST_CASE("transmission rate is positive and below beta_max") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        ModelParams p = random_params(rng);
        p.beta_np = std::max(p.beta_np, 1e-6);
        for (double t = -400.0; t < 800.0; t += 1.7) {
            const double b = transmission_rate(p, t);
            CHECK(b > 0.0);
            CHECK(b <= p.beta_max());
        }
    }
}

TEST_CASE("invalid parameters are rejected") {
    auto bad = [](auto mutate) {
        ModelParams p;
        mutate(p);
        return p;
    };
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.sigma = 0.0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.t_p = 365.0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.t_p = -1.0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.pop = 0.5; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.omega = 0.0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.gamma = -0.1; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](ModelParams& p) { p.beta_np = -0.1; }).validate(), DomainError);
    CHECK_THROWS_AS(transmission_rate(bad([](ModelParams& p) { p.sigma = -1.0; }), 0.0), DomainError);
    CHECK_NOTHROW(ModelParams{}.validate());
}

TEST_CASE("recruitment keeps the population constant") {
    ModelParams p;
    p.pop = 171e6;
    CHECK(p.recruitment() == p.mu * p.pop);
}

TEST_CASE("parameters by name") {
    ModelParams p;
    for (auto name : param_names()) {
        CHECK(is_param_name(name));
        const double v = get_param(p, name) + 0.5;
        set_param(p, name, v);
        CHECK(get_param(p, name) == v);
    }
    CHECK_FALSE(is_param_name("beta"));
    CHECK_THROWS(get_param(p, "beta"));
}

TEST_CASE("mean transmission rate reproduces the published averages") {
    ModelParams p;
    p.beta_np = 0.057;
    p.beta_peak = 0.085;
    p.a_beta = 0.047;
    p.t_p = 190.72;
    p.sigma = 60.0;
    CHECK(std::abs(mean_transmission_rate(p) - 0.132) <= 0.005);
    p.sigma = 120.0;
    CHECK(std::abs(mean_transmission_rate(p) - 0.151) <= 0.005);
}

TEST_CASE("mean transmission rate matches a fine trapezoid rule") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const ModelParams p = random_params(rng);
        const int n = 200000;
        const double h = p.omega / n;
        double sum = 0.5 * (profile_oracle(p, 0.0) + profile_oracle(p, p.omega));
        for (int k = 1; k < n; ++k) sum += profile_oracle(p, k * h);
        const double oracle = sum * h / p.omega;
        CHECK(mean_transmission_rate(p) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("mean of a constant rate is the constant") {
    for (double c : {0.0, 0.013, 0.25, 1.7}) {
        ModelParams p;
        p.a_beta = 0.0;
        p.beta_peak = 0.0;
        p.beta_np = c;
        CHECK(std::abs(mean_transmission_rate(p) - c) <= 1e-12 * c);
    }
}

TEST_CASE("ode right-hand side") {
    ModelParams p;
    SUBCASE("disease-free equilibrium is a fixed point") {
        const auto d = ode_rhs(p, SeirState{0.0, p.pop, 0.0, 0.0, 0.0}, 123.0);
        for (double v : d) CHECK(std::abs(v) <= 1e-12 * p.pop);
    }
    SUBCASE("derivatives sum to zero on the simplex") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            double w[4] = {u(rng), u(rng), u(rng), u(rng)};
            const double s = w[0] + w[1] + w[2] + w[3];
            const SeirState x{0.0, p.pop * w[0] / s, p.pop * w[1] / s, p.pop * w[2] / s, p.pop * w[3] / s};
            const auto d = ode_rhs(p, x, 365.0 * u(rng));
            CHECK(std::abs(d[0] + d[1] + d[2] + d[3]) <= 1e-9 * p.pop);
        }
    }
    SUBCASE("half infected, constant rate 0.1") {
        p.a_beta = 0.0;
        p.beta_peak = 0.0;
        p.beta_np = 0.1;
        p.mu = 0.0;
        const auto d = ode_rhs(p, SeirState{0.0, p.pop / 2, 0.0, p.pop / 2, 0.0}, 0.0);
        CHECK(d[0] == doctest::Approx(-0.025 * p.pop).epsilon(1e-14));
        CHECK(d[1] == doctest::Approx(0.025 * p.pop).epsilon(1e-14));
    }
}

TEST_CASE("linear decay without transmission") {
    ModelParams p;
    p.beta_np = p.a_beta = p.beta_peak = 0.0;
    p.mu = 0.0;
    const double i0 = 1000.0;
    const auto traj = integrate(p, SeirState{0.0, p.pop - i0, 0.0, i0, 0.0}, 80.0, 0.1,
                                Observable::prevalence);
    REQUIRE(traj.size() == 81);
    CHECK(traj.t.back() == 80.0);
    CHECK(traj.states.back().I == doctest::Approx(i0 * std::exp(-p.gamma * 80.0)).epsilon(1e-6));
    CHECK(traj.observable.back() == traj.states.back().I);
}

TEST_CASE("trajectory sampling and observables") {
    ModelParams p;
    p.pop = 171e6;
    const SeirState init = seeded_state(p, 200.0);
    CHECK(init.E == doctest::Approx((p.gamma + p.mu) / p.delta * 200.0));
    CHECK(init.total() == doctest::Approx(p.pop));
    const auto traj = integrate(p, init, 365.0);
    REQUIRE(traj.size() == 366);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.t[i] == static_cast<double>(i));
        CHECK(traj.observable[i] == doctest::Approx(p.delta * traj.states[i].E));
    }
    const auto fractional = integrate(p, init, 10.5);
    CHECK(fractional.size() == 12);
    CHECK(fractional.t.back() == 10.5);
    CHECK_THROWS_AS(integrate(p, init, 0.0), DomainError);
    CHECK_THROWS_AS(integrate(p, init, 10.0, 0.0), DomainError);
    SeirState negative = init;
    negative.E = -1.0;
    CHECK_THROWS_AS(integrate(p, negative, 10.0), DomainError);
}

TEST_CASE("conservation and positivity over random runs") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const ModelParams p = random_params(rng);
        double w[4] = {u(rng), u(rng) * 0.1, u(rng) * 0.1, u(rng)};
        const double s = w[0] + w[1] + w[2] + w[3];
        const SeirState init{365.0 * u(rng), p.pop * w[0] / s, p.pop * w[1] / s, p.pop * w[2] / s,
                             p.pop * w[3] / s};
        const auto traj = integrate(p, init, init.t + 365.0);
        for (const auto& x : traj.states) {
            CHECK(std::abs(x.total() - p.pop) <= 1e-6 * p.pop);
            for (double v : {x.S, x.E, x.I, x.R}) CHECK(v >= -1e-9 * p.pop);
        }
    }
}

TEST_CASE("halving the step barely moves the end value") {
    ModelParams p;
    p.pop = 171e6;
    const SeirState init = seeded_state(p, 200.0);
    const double coarse = integrate(p, init, 365.0, 0.1).observable.back();
    const double fine = integrate(p, init, 365.0, 0.05).observable.back();
    CHECK(std::abs(coarse - fine) <= 1e-8 * std::abs(fine));
}

TEST_CASE("observable names") {
    CHECK(parse_observable("incidence") == Observable::incidence);
    CHECK(parse_observable("prevalence") == Observable::prevalence);
    CHECK(to_string(Observable::prevalence) == "prevalence");
    CHECK_THROWS(parse_observable("cases"));
}
