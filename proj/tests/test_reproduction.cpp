#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "dengue/comparison.hpp"
#include "dengue/errors.hpp"
#include "dengue/reproduction.hpp"

using namespace dengue;

namespace {

ModelParams row_params(double sigma, double beta_np, double beta_peak) {
    ModelParams p = comparison_base();
    p.sigma = sigma;
    p.beta_np = beta_np;
    p.beta_peak = beta_peak;
    return p;
}

ModelParams constant(double beta, double delta = 0.25, double gamma = 0.125, double mu = 3.8e-5) {
    ModelParams p;
    p.beta_np = beta;
    p.a_beta = 0.0;
    p.beta_peak = 0.0;
    p.delta = delta;
    p.gamma = gamma;
    p.mu = mu;
    return p;
}

double radius_oracle(const Mat2& m) {
    const std::complex<double> tr = m[0] + m[3];
    const std::complex<double> det = m[0] * m[3] - m[1] * m[2];
    const std::complex<double> root = std::sqrt(tr * tr - 4.0 * det);
    return std::max(std::abs((tr + root) / 2.0), std::abs((tr - root) / 2.0));
}

}  // namespace

TEST_CASE("basic reproduction number") {
    CHECK(std::abs(basic_r0(0.132, 0.25, 0.125, 3.8e-5) - 1.059) <= 0.01);
    CHECK(std::abs(basic_r0(0.463, 0.25, 0.125, 3.8e-5) - 3.704) <= 0.02);
    CHECK(basic_r0(0.125, 0.25, 0.125, 0.0) == 1.0);
    CHECK(basic_r0(0.3, 0.2, 0.1, 0.01) == doctest::Approx(0.3 * 0.2 / (0.21 * 0.11)));
    CHECK_THROWS_AS(basic_r0(0.1, 0.0, 0.125, 0.0), DomainError);
    CHECK_THROWS_AS(basic_r0(0.1, 0.25, -0.1, 0.0), DomainError);
}

TEST_CASE("2x2 spectral radius") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 m = {u(rng), u(rng), u(rng), u(rng)};
        CHECK(spectral_radius(m) == doctest::Approx(radius_oracle(m)).epsilon(1e-9));
    }
    CHECK(spectral_radius({0.0, -1.0, 1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(spectral_radius({2.0, 0.0, 5.0, -3.0}) == doctest::Approx(3.0));
}

TEST_CASE("linearized system") {
    const ModelParams p = row_params(60.0, 0.057, 0.085);
    const LinearizedSystem sys(p);
    const Mat2 v = sys.transitions();
    CHECK(v[0] == p.delta + p.mu);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == -p.delta);
    CHECK(v[3] == p.gamma + p.mu);
    for (double t = 0.0; t < 365.0; t += 10.0) {
        const Mat2 f = sys.new_infections(t);
        CHECK(f[1] == transmission_rate(p, t));
        CHECK(f[0] == 0.0);
        CHECK(f[2] == 0.0);
        CHECK(f[3] == 0.0);
    }
    CHECK(sys.period() == 365.0);
}

TEST_CASE("monodromy without transmission decays") {
    const ModelParams p = constant(0.0);
    const LinearizedSystem sys(p);
    const double expected = std::exp(-(p.gamma + p.mu) * p.omega);
    for (double lambda : {0.01, 1.0, 7.0})
        CHECK(monodromy_spectral_radius(sys, lambda) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("constant transmission at lambda = R0 gives radius one") {
    for (double beta : {0.1, 0.25, 0.6}) {
        const ModelParams p = constant(beta);
        const double r0 = basic_r0(beta, p.delta, p.gamma, p.mu);
        CHECK(std::abs(monodromy_spectral_radius(LinearizedSystem(p), r0) - 1.0) <= 1e-4);
    }
}

TEST_CASE("radius decreases in lambda") {
    const LinearizedSystem sys(row_params(60.0, 0.057, 0.085));
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda = 0.1; lambda <= 10.0; lambda += 0.1) {
        const double rho = monodromy_spectral_radius(sys, lambda);
        CHECK(rho < prev);
        prev = rho;
    }
}

TEST_CASE("tiny lambda stays finite in log space") {
    const LinearizedSystem sys(row_params(120.0, 0.057, 0.581));
    const double log_rho = log_monodromy_spectral_radius(sys, 1e-3);
    CHECK(std::isfinite(log_rho));
    CHECK(log_rho > 700.0);
    CHECK_THROWS_AS(log_monodromy_spectral_radius(sys, 0.0), DomainError);
}

TEST_CASE("seasonal reproduction number for published rows") {
    const FloquetResult r1 = seasonal_r0(row_params(60.0, 0.057, 0.085));
    CHECK(std::abs(r1.r0 - 1.045) <= 0.02);
    CHECK(std::abs(r1.spectral_radius - 1.0) < 1e-6);
    CHECK(r1.iterations > 0);
    CHECK_FALSE(r1.brackets.empty());
    const FloquetResult r3 = seasonal_r0(row_params(120.0, 0.057, 0.085));
    CHECK(std::abs(r3.r0 - 1.202) <= 0.02);
}

TEST_CASE("autonomous equivalence") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const ModelParams p = constant(0.05 + 0.5 * u(rng), 0.1 + 0.4 * u(rng), 0.05 + 0.25 * u(rng), 1e-4 * u(rng));
        const double expected = basic_r0(p.beta_np, p.delta, p.gamma, p.mu);
        CHECK(std::abs(seasonal_r0(p).r0 - expected) < 1e-4);
    }
}

TEST_CASE("threshold coherence") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 15; ++i) {
        ModelParams p = comparison_base();
        p.beta_np = 0.15 * u(rng);
        p.beta_peak = 0.3 * u(rng);
        p.sigma = 20.0 + 100.0 * u(rng);
        const double r0 = seasonal_r0(p).r0;
        const double rho1 = monodromy_spectral_radius(LinearizedSystem(p), 1.0);
        CHECK((r0 > 1.0) == (rho1 > 1.0));
    }
}

TEST_CASE("halving the Floquet step") {
    const ModelParams p = row_params(75.0, 0.074, 0.105);
    FloquetOptions fine;
    fine.step = 0.025;
    CHECK(std::abs(seasonal_r0(p).r0 - seasonal_r0(p, fine).r0) < 1e-6);
}

TEST_CASE("bracket failures and degenerate transmission") {
    const ModelParams strong = constant(10.0);
    try {
        seasonal_r0(strong);
        FAIL("expected a bracket failure");
    } catch (const BracketError& e) {
        CHECK(e.rho_lo > 1.0);
        CHECK(e.rho_hi > 1.0);
    }
    const FloquetResult none = seasonal_r0(constant(0.0));
    CHECK(none.degenerate);
    CHECK(none.r0 == 0.0);
}

TEST_CASE("seasonal values sit just below the basic values for every row") {
    for (const auto& row : published_comparison_rows()) {
        const ModelParams p = row_params(row.sigma, row.beta_np, row.beta_peak);
        const double basic = basic_r0(mean_transmission_rate(p), p.delta, p.gamma, p.mu);
        const double seasonal = seasonal_r0(p).r0;
        CHECK(seasonal <= basic);
        CHECK(basic - seasonal < 0.15);
    }
}

TEST_CASE("comparison table without Monte Carlo") {
    ComparisonOptions opts;
    opts.with_outbreak = false;
    const auto rows = reproduce_comparison_table(comparison_base(), opts);
    REQUIRE(rows.size() == 9);
    for (const auto& r : rows) {
        CHECK(std::abs(r.beta_bar - r.published.beta_bar) <= 0.005);
        CHECK(std::abs(r.r0 - r.published.r0) <= 0.02);
        CHECK(std::abs(r.seasonal.r0 - r.published.r0_seasonal) <= 0.02);
        CHECK(r.outbreak.n == 0);
    }
    CHECK(std::abs(rows[8].r0 - 4.036) <= 0.05);
}

TEST_CASE("seasonal R0 heatmap") {
    ModelParams base = comparison_base();
    base.sigma = 60.0;
    SUBCASE("published cell") {
        const GridResult g = r0_heatmap(base, Axis{"beta_np", 0.057, 0.074, 2}, Axis{"beta_peak", 0.085, 0.105, 2});
        CHECK(std::abs(g.at(0, 0) - 1.045) <= 0.02);
    }
    SUBCASE("monotone along the baseline axis") {
        const GridResult g = r0_heatmap(base, Axis::parse("beta_np:0:0.15", 8), Axis::parse("beta_peak:0:0.6", 5));
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t i = 1; i < 8; ++i) CHECK(g.at(i, j) >= g.at(i - 1, j));
    }
    SUBCASE("no transmission anywhere") {
        ModelParams still = base;
        still.a_beta = 0.0;
        const GridResult g = r0_heatmap(still, Axis{"beta_np", 0.0, 0.0, 2}, Axis{"beta_peak", 0.0, 0.0, 3});
        for (double v : g.values) CHECK(v < 1.0);
    }
    SUBCASE("failed brackets hold NaN") {
        const GridResult g = r0_heatmap(base, Axis{"beta_np", 0.1, 10.0, 2}, Axis{"beta_peak", 0.0, 0.0, 1});
        CHECK(std::isfinite(g.at(0, 0)));
        CHECK(std::isnan(g.at(1, 0)));
    }
}
