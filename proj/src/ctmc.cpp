#include "dengue/ctmc.hpp"

#include <cmath>
#include <string>

#include "dengue/errors.hpp"

namespace dengue {

double event_rate(const ModelParams& p, EventKind kind, const CountState& x, double t) {
    const auto S = static_cast<double>(x.S);
    const auto E = static_cast<double>(x.E);
    const auto I = static_cast<double>(x.I);
    const auto R = static_cast<double>(x.R);
    switch (kind) {
        case EventKind::birth: return p.recruitment();
        case EventKind::susceptible_death: return p.mu * S;
        case EventKind::recovered_death: return p.mu * R;
        case EventKind::infection: return transmission_rate(p, t) * I * S / p.pop;
        case EventKind::exposed_death: return p.mu * E;
        case EventKind::progression: return p.delta * E;
        case EventKind::infected_death: return p.mu * I;
        case EventKind::recovery: return p.gamma * I;
    }
    return 0.0;
}

CountState apply_event(const CountState& x, EventKind kind) {
    const auto& d = kEventTable[static_cast<std::size_t>(kind)].delta;
    return {x.S + d[0], x.E + d[1], x.I + d[2], x.R + d[3]};
}

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::extinct: return "extinct";
        case Outcome::outbreak: return "outbreak";
        case Outcome::censored: return "censored";
    }
    return "censored";
}

CountState single_introduction(const ModelParams& p) {
    return {static_cast<std::int64_t>(std::llround(p.pop)) - 1, 0, 1, 0};
}

PathOutcome simulate_path(const ModelParams& p, const CountState& init, const PathOptions& options,
                          Rng& rng, std::vector<EventRecord>* log) {
    p.validate();
    if (init.S < 0 || init.E < 0 || init.I < 0 || init.R < 0)
        throw DomainError("initial counts must be non-negative");
    if (!(options.t_max > options.t0)) throw DomainError("t_max must exceed t0");
    const std::int64_t infected0 = init.E + init.I;
    if (infected0 > 0 && options.outbreak_level <= infected0)
        throw DomainError("outbreak level must exceed the initial E + I");

    const double beta_max = p.beta_max();
    const double births = p.recruitment();
    const double inv_pop = 1.0 / p.pop;

    CountState x = init;
    double t = options.t0;
    PathOutcome out;
    for (;;) {
        const std::int64_t infected = x.E + x.I;
        if (infected == 0) {
            out.outcome = Outcome::extinct;
            break;
        }
        if (infected >= options.outbreak_level) {
            out.outcome = Outcome::outbreak;
            break;
        }
        const auto S = static_cast<double>(x.S);
        const auto E = static_cast<double>(x.E);
        const auto I = static_cast<double>(x.I);
        const auto R = static_cast<double>(x.R);
        // Candidate rates in event-table order; infection at its upper bound.
        const double rates[8] = {births,        p.mu * S,    p.mu * R, beta_max * I * S * inv_pop,
                                 p.mu * E,      p.delta * E, p.mu * I, p.gamma * I};
        double total = 0.0;
        for (double r : rates) total += r;
        if (!(total > 0.0)) {
            t = options.t_max;
            out.outcome = Outcome::censored;
            break;
        }
        t += exponential(rng, total);
        if (t >= options.t_max) {
            t = options.t_max;
            out.outcome = Outcome::censored;
            break;
        }
        double pick = uniform01(rng) * total;
        std::size_t k = 0;
        while (k < 7 && pick >= rates[k]) {
            pick -= rates[k];
            ++k;
        }
        while (k > 0 && rates[k] == 0.0) --k;  // rounding at the top of the range
        const auto kind = static_cast<EventKind>(k);
        if (kind == EventKind::infection &&
            uniform01(rng) * beta_max >= transmission_rate(p, t))
            continue;  // thinned candidate
        x = apply_event(x, kind);
        ++out.events;
        if (log != nullptr) log->push_back({t, kind, x});
    }
    out.t_end = t;
    return out;
}

double EnsembleSummary::p_ext() const {
    return n == 0 ? 0.0 : static_cast<double>(n_ext) / static_cast<double>(n);
}

double EnsembleSummary::std_error() const {
    if (n == 0) return 0.0;
    const double q = p_ext();
    return std::sqrt(q * (1.0 - q) / static_cast<double>(n));
}

double EnsembleSummary::censored_fraction() const {
    return n == 0 ? 0.0 : static_cast<double>(n_censored) / static_cast<double>(n);
}

EnsembleSummary& EnsembleSummary::operator+=(const EnsembleSummary& o) {
    n += o.n;
    n_ext += o.n_ext;
    n_outbreak += o.n_outbreak;
    n_censored += o.n_censored;
    return *this;
}

std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
    return stream_seed(master, index);
}

EnsembleSummary outbreak_probability(const ModelParams& p, const CountState& init,
                                     const PathOptions& options, std::uint64_t n,
                                     std::uint64_t seed, std::vector<PathOutcome>* per_path) {
    if (n == 0) throw DomainError("outbreak_probability needs n >= 1");
    p.validate();
    if (!(options.t_max > options.t0)) throw DomainError("t_max must exceed t0");
    if (init.E + init.I > 0 && options.outbreak_level <= init.E + init.I)
        throw DomainError("outbreak level must exceed the initial E + I");
    if (per_path != nullptr) per_path->assign(n, PathOutcome{});

    std::uint64_t ext = 0, outbreak = 0, censored = 0;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : ext, outbreak, censored)
    for (long long i = 0; i < count; ++i) {
        Rng rng{path_seed(seed, static_cast<std::uint64_t>(i))};
        const PathOutcome o = simulate_path(p, init, options, rng);
        switch (o.outcome) {
            case Outcome::extinct: ++ext; break;
            case Outcome::outbreak: ++outbreak; break;
            case Outcome::censored: ++censored; break;
        }
        if (per_path != nullptr) (*per_path)[static_cast<std::size_t>(i)] = o;
    }
    return {n, ext, outbreak, censored};
}

}  // namespace dengue
