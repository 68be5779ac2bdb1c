#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dengue/comparison.hpp"
#include "dengue/ctmc.hpp"
#include "dengue/diagnostics.hpp"
#include "dengue/errors.hpp"
#include "dengue/grid.hpp"
#include "dengue/io.hpp"
#include "dengue/mcmc.hpp"
#include "dengue/predictive.hpp"
#include "dengue/reproduction.hpp"
#include "dengue/svg.hpp"
#include "dengue/synthetic.hpp"

namespace dengue::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultPaths = 10000;
constexpr std::uint64_t kDefaultGridPaths = 1000;

template <class Writer>
void write_csv(const fs::path& path, Writer&& writer) {
    std::ostringstream out;
    writer(out);
    write_text_file(path, out.str());
}

fs::path output(const RunConfig& cfg, const char* name) { return fs::path(cfg.out) / name; }

FitSetup fit_setup(const RunConfig& cfg) {
    FitSetup setup;
    setup.base = cfg.params(kFitPopulation);
    setup.observable = cfg.observable;
    setup.error = cfg.likelihood;
    setup.step = cfg.step;
    setup.i0 = cfg.i0;
    setup.e0 = cfg.e0;
    return setup;
}

Theta theta_from_model(const ModelParams& p, double sigma_obs) {
    return {p.beta_np, p.a_beta, p.t_p, p.sigma, p.beta_peak, sigma_obs};
}

PathOptions path_options(const RunConfig& cfg) {
    return {cfg.t0, cfg.ol, cfg.t_max};
}

SamplerConfig sampler(const RunConfig& cfg) {
    SamplerConfig s;
    s.chains = cfg.chains;
    s.iters = cfg.iters;
    s.warmup = cfg.warmup_or_default();
    s.seed = cfg.seed;
    return s;
}

std::vector<std::string> prior_labels(const RunConfig& cfg) {
    std::vector<std::string> out;
    for (const auto& p : cfg.priors.priors) out.push_back(p.describe());
    return out;
}

const CaseSeries require_data(const RunConfig& cfg) {
    if (cfg.data.empty()) throw ConfigError("--data <cases.csv> is required");
    return load_case_csv(cfg.data);
}

std::pair<Axis, Axis> axes(const RunConfig& cfg) {
    Axis a1 = Axis::parse(cfg.axis1, cfg.grid_rows);
    Axis a2 = Axis::parse(cfg.axis2, cfg.grid_cols);
    validate_axes(a1, a2);
    return {a1, a2};
}

void print_rhat_range(const PosteriorSummary& summary) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : summary) {
        lo = std::min(lo, s.r_hat);
        hi = std::max(hi, s.r_hat);
    }
    std::printf("R-hat range [%.4f, %.4f]", lo, hi);
    if (hi > kRhatWarn) std::fprintf(stderr, "warning: R-hat above %.2f, chains have not converged\n", kRhatWarn);
}

void run_simulate(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kFitPopulation);
    const SeirState init = seeded_state(p, cfg.i0.value_or(kDefaultSyntheticInfectious), cfg.e0.value_or(-1.0));
    const Trajectory traj = integrate(p, init, static_cast<double>(cfg.days), cfg.step, cfg.observable);
    write_csv(output(cfg, "trajectory.csv"), [&](std::ostream& o) { write_trajectory_csv(o, traj); });
    emit_plot(TimeseriesPlot{"Seasonal SEIR trajectory", "day", std::string(to_string(cfg.observable)),
                             {{std::string(to_string(cfg.observable)), traj.t, traj.observable}}},
              output(cfg, "trajectory.svg"));
    const auto peak = std::max_element(traj.observable.begin(), traj.observable.end());
    std::printf("simulate: peak %s %s on day %s, final R %s\n", std::string(to_string(cfg.observable)).c_str(),
                format_number(*peak).c_str(),
                format_number(traj.t[static_cast<std::size_t>(peak - traj.observable.begin())]).c_str(),
                format_number(traj.states.back().R).c_str());
}

void run_synth(const RunConfig& cfg, const CommandFlags&) {
    FitSetup setup = fit_setup(cfg);
    const Theta truth = theta_from_model(setup.base, cfg.sigma_obs);
    const CaseSeries series = generate_synthetic(setup, truth, cfg.sigma_obs, cfg.days, cfg.seed);
    write_csv(output(cfg, "synthetic.csv"), [&](std::ostream& o) { write_case_csv(o, series); });
    std::printf("synth: %zu days, sigma_obs %s, seed %llu\n", series.size(),
                format_number(cfg.sigma_obs).c_str(), static_cast<unsigned long long>(cfg.seed));
}

void run_fit(const RunConfig& cfg, const CommandFlags&) {
    const CaseSeries data = require_data(cfg);
    const PosteriorChains chains = run_mh(data, cfg.priors, fit_setup(cfg), sampler(cfg));
    const auto labels = prior_labels(cfg);
    const PosteriorSummary summary = summarize(chains, labels);
    write_csv(output(cfg, "posterior.csv"), [&](std::ostream& o) { write_posterior_csv(o, chains); });
    write_csv(output(cfg, "summary.csv"), [&](std::ostream& o) { write_summary_csv(o, summary); });
    for (std::size_t c = 0; c < chains.chains.size(); ++c)
        if (chains.chains[c].adaptation_warning)
            std::fprintf(stderr, "warning: chain %zu rejected every proposal in a warm-up window\n", c);
    double acc = 0.0;
    for (const auto& c : chains.chains) acc += c.acceptance_rate;
    std::printf("fit: %zu chains x %zu draws, mean acceptance %.3f, ", chains.chains.size(),
                chains.draws_per_chain(), acc / static_cast<double>(chains.chains.size()));
    print_rhat_range(summary);
    std::printf("\n");
}

void run_summarize(const RunConfig& cfg, const CommandFlags&) {
    if (cfg.posterior.empty()) throw ConfigError("--posterior <posterior.csv> is required");
    const PosteriorChains chains = load_posterior_csv(cfg.posterior);
    const auto labels = prior_labels(cfg);
    const PosteriorSummary summary = summarize(chains, labels);
    write_csv(output(cfg, "summary.csv"), [&](std::ostream& o) { write_summary_csv(o, summary); });
    std::printf("summarize: %zu parameters, ", summary.size());
    print_rhat_range(summary);
    std::printf("\n");
}

void run_ppc(const RunConfig& cfg, const CommandFlags&) {
    if (cfg.posterior.empty()) throw ConfigError("--posterior <posterior.csv> is required");
    const CaseSeries data = require_data(cfg);
    const PosteriorChains chains = load_posterior_csv(cfg.posterior);
    PredictiveOptions opts;
    opts.draws = cfg.draws;
    opts.seed = cfg.seed;
    const PredictiveBand band = posterior_predictive(chains, data, fit_setup(cfg), opts);
    write_csv(output(cfg, "ppc.csv"), [&](std::ostream& o) { write_band_csv(o, band); });
    std::vector<double> x(band.day.begin(), band.day.end());
    emit_plot(BandPlot{"Posterior predictive check", x, band.observed, band.model_mean, band.lower, band.upper},
              output(cfg, "ppc.svg"));
    std::printf("ppc: %zu replicates, 95%% band covers %.3f of observations\n", opts.draws, band.coverage());
}

void run_ctmc(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    const CountState init = single_introduction(p);
    Rng rng{path_seed(cfg.seed, 0)};
    std::vector<EventRecord> events;
    const PathOutcome o = simulate_path(p, init, path_options(cfg), rng, &events);
    write_csv(output(cfg, "ctmc_path.csv"),
              [&](std::ostream& out) { write_event_log_csv(out, init, cfg.t0, events); });
    std::printf("ctmc: %s at t=%s after %llu events\n", std::string(to_string(o.outcome)).c_str(),
                format_number(o.t_end).c_str(), static_cast<unsigned long long>(o.events));
}

void run_outbreak(const RunConfig& cfg, const CommandFlags& flags) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    std::vector<PathOutcome> paths;
    const EnsembleSummary s = outbreak_probability(p, single_introduction(p), path_options(cfg),
                                                   cfg.n.value_or(kDefaultPaths), cfg.seed,
                                                   flags.path_log ? &paths : nullptr);
    write_csv(output(cfg, "outbreak.csv"), [&](std::ostream& o) {
        o << "n,n_ext,n_outbreak,n_censored,p_ext,p_outbreak,std_error\n"
          << s.n << ',' << s.n_ext << ',' << s.n_outbreak << ',' << s.n_censored << ','
          << format_number(s.p_ext()) << ',' << format_number(s.p_outbreak()) << ','
          << format_number(s.std_error()) << '\n';
    });
    if (flags.path_log)
        write_csv(output(cfg, "paths.csv"), [&](std::ostream& o) { write_path_log_csv(o, paths); });
    std::printf("outbreak: P_outbreak = %.4f (se %.4f), P_ext = %.4f, censored %llu of %llu\n", s.p_outbreak(),
                s.std_error(), s.p_ext(), static_cast<unsigned long long>(s.n_censored),
                static_cast<unsigned long long>(s.n));
    if (s.censored_fraction() >= 0.01)
        std::fprintf(stderr, "warning: %.1f%% of paths were censored at t-max\n", 100.0 * s.censored_fraction());
}

void run_r0(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    const double beta_bar = cfg.beta_bar.value_or(mean_transmission_rate(p));
    const double r0 = basic_r0(beta_bar, p.delta, p.gamma, p.mu);
    std::printf("r0: R0 = %.4f (beta_bar = %.4f)\n", r0, beta_bar);
}

void run_r0_seasonal(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    const FloquetResult r = seasonal_r0(p);
    std::printf("r0-seasonal: R0_seasonal = %.4f (rho = %.8f after %d bisection steps)\n", r.r0,
                r.spectral_radius, r.iterations);
}

void run_heatmap_r0(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    const auto [a1, a2] = axes(cfg);
    const GridResult g = r0_heatmap(p, a1, a2);
    write_csv(output(cfg, "heatmap_r0.csv"), [&](std::ostream& o) { write_grid_csv(o, g); });
    emit_plot(HeatmapPlot{"Seasonal R0", "R0 seasonal", g}, output(cfg, "heatmap_r0.svg"));
    const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
    std::printf("heatmap-r0: %zux%zu cells, R0_seasonal in [%.4f, %.4f]\n", a1.count, a2.count, *lo, *hi);
}

void run_heatmap_outbreak(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    const auto [a1, a2] = axes(cfg);
    OutbreakGridOptions opts{path_options(cfg), cfg.n.value_or(kDefaultGridPaths), cfg.seed};
    const GridResult g = outbreak_probability_grid(p, a1, a2, opts);
    write_csv(output(cfg, "heatmap_outbreak.csv"), [&](std::ostream& o) { write_grid_csv(o, g); });
    emit_plot(HeatmapPlot{"Probability of outbreak", "P outbreak", g}, output(cfg, "heatmap_outbreak.svg"));
    const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
    std::printf("heatmap-outbreak: %zux%zu cells, %llu paths each, P_outbreak in [%.4f, %.4f]\n", a1.count,
                a2.count, static_cast<unsigned long long>(opts.n), *lo, *hi);
}

void run_plot(const RunConfig& cfg, const CommandFlags&) {
    const ModelParams p = cfg.params(kStochasticPopulation);
    std::vector<double> t, beta;
    for (int i = 0; i <= 365 * 4; ++i) {
        t.push_back(i * 0.25);
        beta.push_back(transmission_rate(p, i * 0.25));
    }
    if (cfg.rainfall.empty()) {
        emit_plot(TimeseriesPlot{"Seasonal transmission rate", "day of year", "beta(t) (1/day)",
                                 {{"beta(t)", t, beta}}},
                  output(cfg, "beta.svg"));
        std::printf("plot: beta(t) max %s at day %s\n",
                    format_number(*std::max_element(beta.begin(), beta.end())).c_str(),
                    format_number(t[static_cast<std::size_t>(std::max_element(beta.begin(), beta.end()) - beta.begin())]).c_str());
        return;
    }
    const RainfallSeries rain = load_rainfall_csv(cfg.rainfall);
    emit_plot(SeasonalRainfallPlot{"Transmission rate and monthly rainfall", t, beta, rain},
              output(cfg, "beta_rainfall.svg"));
    std::printf("plot: beta(t) with rainfall, wettest month %d\n",
                rain.month[static_cast<std::size_t>(std::max_element(rain.mm.begin(), rain.mm.end()) - rain.mm.begin())]);
}

void run_compare(const RunConfig& cfg, const CommandFlags&) {
    ModelParams base = comparison_base(cfg.pop.value_or(kStochasticPopulation));
    base.delta = cfg.model.delta;
    base.gamma = cfg.model.gamma;
    base.mu = cfg.model.mu;
    ComparisonOptions opts;
    opts.path = path_options(cfg);
    opts.n = cfg.n.value_or(kDefaultPaths);
    opts.seed = cfg.seed;
    const auto rows = reproduce_comparison_table(base, opts);
    write_csv(output(cfg, "comparison.csv"), [&](std::ostream& o) { write_comparison_csv(o, rows); });
    double d_bar = 0, d_r0 = 0, d_rs = 0, d_p = 0;
    for (const auto& r : rows) {
        d_bar = std::max(d_bar, std::abs(r.beta_bar - r.published.beta_bar));
        d_r0 = std::max(d_r0, std::abs(r.r0 - r.published.r0));
        d_rs = std::max(d_rs, std::abs(r.seasonal.r0 - r.published.r0_seasonal));
        d_p = std::max(d_p, std::abs(r.outbreak.p_outbreak() - r.published.p_outbreak));
    }
    std::printf("compare: max |delta| beta_bar %.4f, R0 %.4f, R0_seasonal %.4f, P_outbreak %.4f\n", d_bar, d_r0,
                d_rs, d_p);
}

}  // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> list = {
        {"simulate", "Integrate the seasonal SEIR ODE and write the trajectory", run_simulate},
        {"fit", "Fit the seasonality parameters to a case CSV by Metropolis-Hastings", run_fit},
        {"summarize", "Summarize a posterior draws CSV (mean, 95% CI, R-hat, ESS)", run_summarize},
        {"ppc", "Posterior predictive band for a fitted posterior", run_ppc},
        {"ctmc", "Simulate one CTMC sample path with its event log", run_ctmc},
        {"outbreak", "Monte Carlo outbreak probability from CTMC sample paths", run_outbreak},
        {"r0", "Basic reproduction number from the mean transmission rate", run_r0},
        {"r0-seasonal", "Seasonal reproduction number from the Floquet monodromy", run_r0_seasonal},
        {"heatmap-r0", "Seasonal R0 over a two-parameter grid", run_heatmap_r0},
        {"heatmap-outbreak", "Outbreak probability over a two-parameter grid", run_heatmap_outbreak},
        {"synth", "Generate a synthetic case CSV from the model", run_synth},
        {"plot", "Plot beta(t), optionally over monthly rainfall", run_plot},
        {"compare", "Recompute the published R0 / seasonal R0 / outbreak comparison rows", run_compare},
    };
    return list;
}

}  // namespace dengue::cli
