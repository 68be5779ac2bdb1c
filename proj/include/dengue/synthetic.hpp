#pragma once

#include <cstdint>
#include <span>

#include "dengue/cases.hpp"
#include "dengue/likelihood.hpp"

namespace dengue {

inline constexpr double kDefaultSyntheticInfectious = 20.0;

/// Daily series y(t_i) + N(0, sigma_obs^2) clamped at 0 for days 0..days-1,
/// simulated from `theta_true` (seasonality components) on top of
/// setup.base. The initial state uses setup.i0 (default 20 infectious) and
/// setup.e0. Requires days >= 30.
CaseSeries generate_synthetic(const FitSetup& setup, std::span<const double> theta_true,
                              double sigma_obs, std::size_t days, std::uint64_t seed);

}  // namespace dengue
