#include "dengue/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double to_real(const std::string& key, const std::string& s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || s.empty())
        throw ConfigError("key '" + key + "' expects a number, got '" + s + "'");
    return v;
}

template <class Int>
Int to_int(const std::string& key, const std::string& s) {
    Int v{};
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || s.empty())
        throw ConfigError("key '" + key + "' expects an integer, got '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

ConfigKey real_key(std::string name, std::string help, double RunConfig::*member) {
    return {name, std::move(help),
            [member](const RunConfig& c) { return shortest(c.*member); },
            [member, name](RunConfig& c, const std::string& v) { c.*member = to_real(name, v); }};
}

ConfigKey model_key(std::string name, std::string help, double ModelParams::*member) {
    return {name, std::move(help),
            [member](const RunConfig& c) { return shortest(c.model.*member); },
            [member, name](RunConfig& c, const std::string& v) { c.model.*member = to_real(name, v); }};
}

ConfigKey optional_key(std::string name, std::string help, std::optional<double> RunConfig::*member) {
    return {name, std::move(help),
            [member](const RunConfig& c) { return (c.*member) ? shortest(*(c.*member)) : "auto"; },
            [member, name](RunConfig& c, const std::string& v) {
                if (v == "auto") c.*member = std::nullopt;
                else c.*member = to_real(name, v);
            }};
}

template <class Int>
ConfigKey int_key(std::string name, std::string help, Int RunConfig::*member) {
    return {name, std::move(help),
            [member](const RunConfig& c) { return std::to_string(c.*member); },
            [member, name](RunConfig& c, const std::string& v) { c.*member = to_int<Int>(name, v); }};
}

ConfigKey string_key(std::string name, std::string help, std::string RunConfig::*member) {
    return {name, std::move(help), [member](const RunConfig& c) { return c.*member; },
            [member](RunConfig& c, const std::string& v) { c.*member = v; }};
}

ConfigKey prior_key(std::string name, std::size_t index) {
    return {name, "prior for " + std::string(theta_names()[index]) + " (U(lo,hi), N(mean,sd), Exp(rate))",
            [index](const RunConfig& c) {
                const Prior& p = c.priors.priors[index];
                auto num = [](double v) { return shortest(v); };
                switch (p.kind()) {
                    case Prior::Kind::uniform: return "U(" + num(p.first()) + "," + num(p.second()) + ")";
                    case Prior::Kind::normal: return "N(" + num(p.first()) + "," + num(p.second()) + ")";
                    case Prior::Kind::exponential: return "Exp(" + num(p.first()) + ")";
                }
                return std::string{};
            },
            [index, name](RunConfig& c, const std::string& v) {
                try {
                    c.priors.priors[index] = Prior::parse(v);
                } catch (const DomainError& e) {
                    throw ConfigError("key '" + name + "': " + e.what());
                }
            }};
}

std::vector<ConfigKey> build_keys() {
    std::vector<ConfigKey> k;
    k.push_back(model_key("beta-np", "baseline transmission rate (1/day)", &ModelParams::beta_np));
    k.push_back(model_key("a-beta", "Gaussian seasonal amplitude (1/day)", &ModelParams::a_beta));
    k.push_back(model_key("beta-peak", "logistic peak transmission rate (1/day)", &ModelParams::beta_peak));
    k.push_back(model_key("t-p", "seasonal peak time (day of year)", &ModelParams::t_p));
    k.push_back(model_key("sigma", "seasonal width (days)", &ModelParams::sigma));
    k.push_back(model_key("delta", "incubation rate (1/day)", &ModelParams::delta));
    k.push_back(model_key("gamma", "recovery rate (1/day)", &ModelParams::gamma));
    k.push_back(model_key("mu", "natural death rate (1/day)", &ModelParams::mu));
    k.push_back(optional_key("pop", "population N; auto = 1.71e8 for ODE fits, 1e6 for CTMC runs",
                             &RunConfig::pop));
    k.push_back(model_key("omega", "forcing period (days)", &ModelParams::omega));
    const char* prior_names[] = {"prior-beta-np", "prior-a-beta", "prior-t-p",
                                 "prior-sigma",   "prior-beta-peak", "prior-sigma-obs"};
    for (std::size_t i = 0; i < kThetaDim; ++i) k.push_back(prior_key(prior_names[i], i));
    k.push_back(int_key("chains", "number of MCMC chains", &RunConfig::chains));
    k.push_back(int_key("iters", "MCMC iterations per chain, warm-up included", &RunConfig::iters));
    k.push_back({"warmup", "MCMC warm-up iterations per chain; auto = min(5000, iters/4)",
                 [](const RunConfig& c) { return c.warmup ? std::to_string(*c.warmup) : std::string("auto"); },
                 [](RunConfig& c, const std::string& v) {
                     if (v == "auto") c.warmup = std::nullopt;
                     else c.warmup = to_int<std::size_t>("warmup", v);
                 }});
    k.push_back(int_key("seed", "master random seed", &RunConfig::seed));
    k.push_back({"likelihood", "error model: gaussian | simplified",
                 [](const RunConfig& c) { return std::string(to_string(c.likelihood)); },
                 [](RunConfig& c, const std::string& v) {
                     try {
                         c.likelihood = parse_error_model(v);
                     } catch (const DomainError& e) {
                         throw ConfigError(e.what());
                     }
                 }});
    k.push_back({"observable", "fitted observable: incidence (delta*E) | prevalence (I)",
                 [](const RunConfig& c) { return std::string(to_string(c.observable)); },
                 [](RunConfig& c, const std::string& v) {
                     try {
                         c.observable = parse_observable(v);
                     } catch (const DomainError& e) {
                         throw ConfigError(e.what());
                     }
                 }});
    k.push_back(real_key("step", "RK4 step (days)", &RunConfig::step));
    k.push_back(optional_key("i0", "initial infectious; auto = derived from the first observation",
                             &RunConfig::i0));
    k.push_back(optional_key("e0", "initial exposed; auto = (gamma+mu)/delta * I(0)", &RunConfig::e0));
    k.push_back(int_key("draws", "posterior predictive replicates", &RunConfig::draws));
    k.push_back({"n", "CTMC sample paths; auto = 10000 (1000 per heatmap cell)",
                 [](const RunConfig& c) { return c.n ? std::to_string(*c.n) : std::string("auto"); },
                 [](RunConfig& c, const std::string& v) {
                     if (v == "auto") c.n = std::nullopt;
                     else c.n = to_int<std::uint64_t>("n", v);
                 }});
    k.push_back(int_key("ol", "outbreak level on E+I", &RunConfig::ol));
    k.push_back(real_key("t0", "introduction time (day)", &RunConfig::t0));
    k.push_back(real_key("t-max", "CTMC censoring time (day)", &RunConfig::t_max));
    k.push_back({"grid", "grid size ROWSxCOLS",
                 [](const RunConfig& c) {
                     return std::to_string(c.grid_rows) + "x" + std::to_string(c.grid_cols);
                 },
                 [](RunConfig& c, const std::string& v) {
                     const auto x = v.find('x');
                     if (x == std::string::npos) throw ConfigError("grid must look like 20x20");
                     c.grid_rows = to_int<std::size_t>("grid", v.substr(0, x));
                     c.grid_cols = to_int<std::size_t>("grid", v.substr(x + 1));
                     if (c.grid_rows == 0 || c.grid_cols == 0) throw ConfigError("grid dimensions must be >= 1");
                 }});
    k.push_back(string_key("axis1", "grid row axis name:lo:hi", &RunConfig::axis1));
    k.push_back(string_key("axis2", "grid column axis name:lo:hi", &RunConfig::axis2));
    k.push_back(real_key("sigma-obs", "observation noise sd for synthetic data", &RunConfig::sigma_obs));
    k.push_back(int_key("days", "length of synthetic series / simulation horizon", &RunConfig::days));
    k.push_back(optional_key("beta-bar", "mean transmission rate for r0; auto = period average",
                             &RunConfig::beta_bar));
    k.push_back(string_key("data", "case CSV (date,cases)", &RunConfig::data));
    k.push_back(string_key("posterior", "posterior draws CSV", &RunConfig::posterior));
    k.push_back(string_key("rainfall", "monthly rainfall CSV (month,mm)", &RunConfig::rainfall));
    k.push_back(string_key("out", "output directory", &RunConfig::out));
    k.push_back(int_key("workers", "OpenMP threads; 0 = runtime default", &RunConfig::workers));
    return k;
}

}  // namespace

ModelParams RunConfig::params(double default_pop) const {
    ModelParams p = model;
    p.pop = pop.value_or(default_pop);
    p.validate();
    return p;
}

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = build_keys();
    return keys;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& k : config_keys()) {
        if (k.name == key) {
            k.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown config key '" + key + "'");
}

std::string get_config_value(const RunConfig& cfg, const std::string& key) {
    for (const auto& k : config_keys())
        if (k.name == key) return k.get(cfg);
    throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(row) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        try {
            set_config_value(base, key, trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(row) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, std::move(base));
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& k : config_keys()) out += k.name + " = " + k.get(cfg) + "\n";
    return out;
}

}  // namespace dengue
