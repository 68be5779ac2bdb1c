#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dengue/likelihood.hpp"
#include "dengue/model.hpp"
#include "dengue/priors.hpp"

namespace dengue {

inline constexpr double kFitPopulation = 171'000'000.0;
inline constexpr double kStochasticPopulation = 1'000'000.0;

/// Every tunable of a run. Keys in config files and command-line flags are the
/// same kebab-case names (see config_keys()).
struct RunConfig {
    std::size_t warmup_or_default() const { return warmup ? *warmup : std::min<std::size_t>(5000, iters / 4); }

    ModelParams model;
    std::optional<double> pop;  // unset: per-command default population

    PriorSpec priors;

    std::size_t chains = 4;
    std::size_t iters = 50000;
    std::optional<std::size_t> warmup;  // unset: min(5000, iters / 4)
    std::uint64_t seed = 1;
    ErrorModel likelihood = ErrorModel::gaussian;
    Observable observable = Observable::incidence;
    double step = 0.1;
    std::optional<double> i0;
    std::optional<double> e0;
    std::size_t draws = 500;

    std::optional<std::uint64_t> n;  // unset: 10000 for single estimates, 1000 per grid cell
    std::int64_t ol = 100;
    double t0 = 0.0;
    double t_max = 1825.0;

    std::size_t grid_rows = 20;
    std::size_t grid_cols = 20;
    std::string axis1 = "beta_np:0:0.15";
    std::string axis2 = "beta_peak:0:0.6";

    double sigma_obs = 25.0;
    std::size_t days = 365;
    std::optional<double> beta_bar;

    std::string data;
    std::string posterior;
    std::string rainfall;
    std::string out = "out";
    int workers = 0;  // 0: OpenMP default

    /// Model parameters with the population resolved (explicit pop, else
    /// `default_pop`), validated.
    ModelParams params(double default_pop) const;

    bool operator==(const RunConfig&) const = default;
};

struct ConfigKey {
    std::string name;
    std::string help;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

/// All keys in a fixed order.
const std::vector<ConfigKey>& config_keys();

/// Sets one key from its textual value; ConfigError for unknown keys or bad
/// values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const RunConfig& cfg, const std::string& key);

/// `key = value` lines; blank lines and '#' comments ignored. Unknown keys are
/// a hard error.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
std::string serialize_config(const RunConfig& cfg);

}  // namespace dengue
