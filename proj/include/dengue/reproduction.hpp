#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dengue/grid.hpp"
#include "dengue/model.hpp"

namespace dengue {

/// Row-major 2x2 matrix.
using Mat2 = std::array<double, 4>;

/// Linearization of the (E, I) subsystem at the disease-free equilibrium:
/// new infections F(t) = [[0, beta(t)], [0, 0]] and transitions
/// V = [[delta + mu, 0], [-delta, gamma + mu]].
class LinearizedSystem {
public:
    explicit LinearizedSystem(const ModelParams& p);

    Mat2 new_infections(double t) const;
    Mat2 transitions() const;
    double period() const { return params_.omega; }
    const ModelParams& params() const { return params_; }

private:
    ModelParams params_;
};

/// Next-generation-matrix R0 for a constant transmission rate.
double basic_r0(double beta_bar, double delta, double gamma, double mu);

/// Largest eigenvalue modulus of a 2x2 matrix (closed form).
double spectral_radius(const Mat2& m);

/// log of the dominant Floquet multiplier of X' = (F(t)/lambda - V) X,
/// X(0) = I, over one period by RK4 at step h. Columns are renormalized and
/// the scale accumulated in log space, so tiny lambda does not overflow.
double log_monodromy_spectral_radius(const LinearizedSystem& sys, double lambda, double h = 0.05);

/// exp of the above; may be +inf for extreme inputs.
double monodromy_spectral_radius(const LinearizedSystem& sys, double lambda, double h = 0.05);

struct FloquetOptions {
    double lambda_lo = 1e-3;
    double lambda_hi = 50.0;
    double tolerance = 1e-6;  // on |rho - 1|
    double step = 0.05;
    int max_iterations = 200;
};

struct FloquetResult {
    double r0 = 0.0;               // converged lambda
    double spectral_radius = 0.0;  // rho(X(omega, lambda_k))
    int iterations = 0;
    std::vector<std::pair<double, double>> brackets;
    bool degenerate = false;  // transmission identically zero; r0 reported as 0
};

/// Seasonal reproduction number by bisection on lambda. Throws BracketError
/// when rho - 1 does not change sign over [lambda_lo, lambda_hi].
FloquetResult seasonal_r0(const ModelParams& p, const FloquetOptions& options = {});

/// Seasonal R0 on a grid (OpenMP over cells). Cells whose bracket fails hold NaN.
GridResult r0_heatmap(const ModelParams& base, const Axis& a1, const Axis& a2,
                      const FloquetOptions& options = {});

/// Grid cell value shared by the parallel and serial heatmaps.
double r0_heatmap_cell(const ModelParams& p, const FloquetOptions& options);

}  // namespace dengue
