#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dengue/model.hpp"
#include "dengue/random.hpp"

namespace dengue {

/// Integer compartment counts for the jump process.
struct CountState {
    std::int64_t S = 0;
    std::int64_t E = 0;
    std::int64_t I = 0;
    std::int64_t R = 0;

    bool operator==(const CountState&) const = default;
};

enum class EventKind : std::uint8_t {
    birth,
    susceptible_death,
    recovered_death,
    infection,
    exposed_death,
    progression,
    infected_death,
    recovery,
};

struct EventSpec {
    EventKind kind;
    std::array<int, 4> delta;  // change of (S, E, I, R)
    std::string_view name;
};

inline constexpr std::array<EventSpec, 8> kEventTable = {{
    {EventKind::birth, {+1, 0, 0, 0}, "birth"},
    {EventKind::susceptible_death, {-1, 0, 0, 0}, "susceptible_death"},
    {EventKind::recovered_death, {0, 0, 0, -1}, "recovered_death"},
    {EventKind::infection, {-1, +1, 0, 0}, "infection"},
    {EventKind::exposed_death, {0, -1, 0, 0}, "exposed_death"},
    {EventKind::progression, {0, -1, +1, 0}, "progression"},
    {EventKind::infected_death, {0, 0, -1, 0}, "infected_death"},
    {EventKind::recovery, {0, 0, -1, +1}, "recovery"},
}};

/// Instantaneous rate of an event in state x at time t.
double event_rate(const ModelParams& p, EventKind kind, const CountState& x, double t);

/// Applies the state delta of `kind`.
CountState apply_event(const CountState& x, EventKind kind);

enum class Outcome : std::uint8_t { extinct, outbreak, censored };

std::string_view to_string(Outcome o);

struct PathOutcome {
    Outcome outcome = Outcome::censored;
    double t_end = 0.0;
    std::uint64_t events = 0;  // realized events; thinned candidates excluded

    bool operator==(const PathOutcome&) const = default;
};

struct EventRecord {
    double t;
    EventKind kind;
    CountState after;
};

struct PathOptions {
    double t0 = 0.0;
    std::int64_t outbreak_level = 100;
    double t_max = 1825.0;  // absolute stop time, days
};

/// Introduction of one infectious individual into a fully susceptible
/// population: (N - 1, 0, 1, 0).
CountState single_introduction(const ModelParams& p);

/// Exact simulation of one path by thinning. The infection channel is
/// proposed at beta_max I S / N and accepted with probability
/// beta(t) / beta_max. Stops at E + I = 0, E + I >= outbreak_level, or
/// t >= t_max. When `log` is non-null every realized event is appended.
PathOutcome simulate_path(const ModelParams& p, const CountState& init, const PathOptions& options,
                          Rng& rng, std::vector<EventRecord>* log = nullptr);

struct EnsembleSummary {
    std::uint64_t n = 0;
    std::uint64_t n_ext = 0;
    std::uint64_t n_outbreak = 0;
    std::uint64_t n_censored = 0;

    double p_ext() const;
    double p_outbreak() const { return 1.0 - p_ext(); }
    double std_error() const;
    double censored_fraction() const;

    EnsembleSummary& operator+=(const EnsembleSummary& o);
    bool operator==(const EnsembleSummary&) const = default;
};

/// Seed of path `index` under the master seed.
std::uint64_t path_seed(std::uint64_t master, std::uint64_t index);

/// Monte Carlo outbreak probability over n independent paths (OpenMP over
/// paths). When `per_path` is non-null it receives every PathOutcome in path
/// order.
EnsembleSummary outbreak_probability(const ModelParams& p, const CountState& init,
                                     const PathOptions& options, std::uint64_t n,
                                     std::uint64_t seed,
                                     std::vector<PathOutcome>* per_path = nullptr);

}  // namespace dengue
