#include "dengue/reproduction.hpp"

#include <cmath>
#include <limits>

#include "dengue/errors.hpp"
#include "dengue/rk4.hpp"

namespace dengue {

LinearizedSystem::LinearizedSystem(const ModelParams& p) : params_(p) {
    p.validate();
    if (!(p.delta + p.mu > 0.0) || !(p.gamma + p.mu > 0.0))
        throw DomainError("V must be invertible: delta + mu and gamma + mu must be > 0");
}

Mat2 LinearizedSystem::new_infections(double t) const {
    return {0.0, transmission_rate(params_, t), 0.0, 0.0};
}

Mat2 LinearizedSystem::transitions() const {
    return {params_.delta + params_.mu, 0.0, -params_.delta, params_.gamma + params_.mu};
}

double basic_r0(double beta_bar, double delta, double gamma, double mu) {
    if (!(delta > 0.0) || !(gamma > 0.0)) throw DomainError("delta and gamma must be > 0");
    if (!(mu >= 0.0) || !(beta_bar >= 0.0)) throw DomainError("beta_bar and mu must be >= 0");
    return beta_bar * delta / ((delta + mu) * (gamma + mu));
}

double spectral_radius(const Mat2& m) {
    const double half_trace = 0.5 * (m[0] + m[3]);
    const double det = m[0] * m[3] - m[1] * m[2];
    const double disc = half_trace * half_trace - det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return std::max(std::abs(half_trace + root), std::abs(half_trace - root));
    }
    return std::sqrt(det);  // complex pair, |z|^2 = det
}

double log_monodromy_spectral_radius(const LinearizedSystem& sys, double lambda, double h) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
    if (!(h > 0.0)) throw DomainError("step must be > 0");
    const Mat2 v = sys.transitions();
    const double inv_lambda = 1.0 / lambda;
    // X stored row-major; X' = A(t) X with A = F/lambda - V. Only F[0][1] is
    // non-zero. The unwrapped profile is used on [0, omega] so the last stage
    // sees the left limit at t = omega, not beta(0).
    auto rhs = [&](double t, const Vec<4>& x) {
        const double a00 = -v[0];
        const double a01 = transmission_profile(sys.params(), t) * inv_lambda - v[1];
        const double a10 = -v[2];
        const double a11 = -v[3];
        return Vec<4>{a00 * x[0] + a01 * x[2], a00 * x[1] + a01 * x[3],
                      a10 * x[0] + a11 * x[2], a10 * x[1] + a11 * x[3]};
    };
    const double omega = sys.period();
    const auto steps = static_cast<long>(std::ceil(omega / h - 1e-9));
    const double dt = omega / static_cast<double>(steps);
    Vec<4> x{1.0, 0.0, 0.0, 1.0};
    double log_scale = 0.0;
    for (long k = 0; k < steps; ++k) {
        x = rk4_step<4>(rhs, dt * static_cast<double>(k), x, dt);
        double norm = 0.0;
        for (double e : x) norm = std::max(norm, std::abs(e));
        if (norm > 1e64 || (norm < 1e-64 && norm > 0.0)) {
            for (double& e : x) e /= norm;
            log_scale += std::log(norm);
        }
    }
    return log_scale + std::log(spectral_radius(x));
}

double monodromy_spectral_radius(const LinearizedSystem& sys, double lambda, double h) {
    return std::exp(log_monodromy_spectral_radius(sys, lambda, h));
}

FloquetResult seasonal_r0(const ModelParams& p, const FloquetOptions& options) {
    const LinearizedSystem sys(p);
    FloquetResult result;
    if (p.beta_np == 0.0 && p.a_beta == 0.0 && p.beta_peak == 0.0) {
        result.degenerate = true;
        result.spectral_radius = monodromy_spectral_radius(sys, 1.0, options.step);
        return result;
    }
    double lo = options.lambda_lo;
    double hi = options.lambda_hi;
    // rho decreases in lambda: log rho > 0 at lo and < 0 at hi.
    const double g_lo = log_monodromy_spectral_radius(sys, lo, options.step);
    const double g_hi = log_monodromy_spectral_radius(sys, hi, options.step);
    if (!(g_lo > 0.0 && g_hi < 0.0))
        throw BracketError("seasonal R0 bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "] does not straddle rho = 1",
                           std::exp(g_lo), std::exp(g_hi));
    result.brackets.emplace_back(lo, hi);
    for (int it = 1; it <= options.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double rho = monodromy_spectral_radius(sys, mid, options.step);
        result.iterations = it;
        result.r0 = mid;
        result.spectral_radius = rho;
        if (std::abs(rho - 1.0) < options.tolerance) return result;
        (rho > 1.0 ? lo : hi) = mid;
        result.brackets.emplace_back(lo, hi);
        if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
    }
    throw BracketError("seasonal R0 bisection did not reach |rho - 1| < tolerance",
                       monodromy_spectral_radius(sys, lo, options.step),
                       monodromy_spectral_radius(sys, hi, options.step));
}

double r0_heatmap_cell(const ModelParams& p, const FloquetOptions& options) {
    try {
        return seasonal_r0(p, options).r0;
    } catch (const BracketError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

GridResult r0_heatmap(const ModelParams& base, const Axis& a1, const Axis& a2,
                      const FloquetOptions& options) {
    validate_axes(a1, a2);
    GridResult out{a1, a2, std::vector<double>(a1.count * a2.count)};
    const auto cells = static_cast<long>(out.values.size());
    std::vector<std::exception_ptr> errors(out.values.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long c = 0; c < cells; ++c) {
        const auto cell = static_cast<std::size_t>(c);
        try {
            const ModelParams p = cell_params(base, a1, a2, cell / a2.count, cell % a2.count);
            out.values[cell] = r0_heatmap_cell(p, options);
        } catch (...) {
            errors[cell] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace dengue
