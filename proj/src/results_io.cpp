#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dengue/errors.hpp"
#include "dengue/io.hpp"

namespace dengue {

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw DataError("not a number: '" + s + "'");
}

std::string quoted(const std::string& s) {
    return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

void write_posterior_csv(std::ostream& out, const PosteriorChains& chains) {
    out << "chain,iter";
    for (const auto& n : chains.names) out << ',' << n;
    out << ",log_post\n";
    for (std::size_t c = 0; c < chains.chains.size(); ++c) {
        const ChainResult& chain = chains.chains[c];
        for (std::size_t i = 0; i < chain.size(); ++i) {
            out << c << ',' << chains.warmup + i;
            for (std::size_t j = 0; j < chain.dim; ++j) out << ',' << format_number(chain.at(i, j));
            out << ',' << format_number(chain.log_post[i]) << '\n';
        }
    }
}

PosteriorChains read_posterior_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("posterior CSV is empty");
    const auto header = split(strip_cr(line));
    if (header.size() < 4 || header[0] != "chain" || header[1] != "iter" || header.back() != "log_post")
        throw DataError("posterior CSV header must be chain,iter,<params...>,log_post");
    PosteriorChains chains;
    chains.names.assign(header.begin() + 2, header.end() - 1);
    const std::size_t dim = chains.names.size();
    bool first = true;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != dim + 3) throw DataError("posterior CSV row has wrong column count");
        const auto c = static_cast<std::size_t>(to_double(cells[0]));
        const auto iter = static_cast<std::size_t>(to_double(cells[1]));
        if (first) {
            chains.warmup = iter;
            first = false;
        }
        if (c >= chains.chains.size()) {
            if (c != chains.chains.size()) throw DataError("posterior CSV chains out of order");
            chains.chains.emplace_back();
            chains.chains.back().dim = dim;
        }
        ChainResult& chain = chains.chains[c];
        for (std::size_t j = 0; j < dim; ++j) chain.draws.push_back(to_double(cells[2 + j]));
        chain.log_post.push_back(to_double(cells.back()));
    }
    if (chains.chains.empty()) throw DataError("posterior CSV has no draws");
    for (const auto& c : chains.chains)
        if (c.size() != chains.chains.front().size())
            throw DataError("posterior CSV chains differ in length");
    return chains;
}

PosteriorChains load_posterior_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open posterior file " + path.string());
    return read_posterior_csv(in);
}

void write_summary_csv(std::ostream& out, const PosteriorSummary& summary) {
    out << "parameter,prior,mean,ci_low,ci_high,r_hat,ess\n";
    for (const auto& s : summary)
        out << s.name << ',' << quoted(s.prior) << ',' << format_number(s.mean) << ','
            << format_number(s.ci_low) << ',' << format_number(s.ci_high) << ','
            << format_number(s.r_hat) << ',' << format_number(s.ess) << '\n';
}

void write_grid_csv(std::ostream& out, const GridResult& grid) {
    out << grid.axis1.name << '\\' << grid.axis2.name;
    for (std::size_t j = 0; j < grid.axis2.count; ++j) out << ',' << format_number(grid.axis2.value(j));
    out << '\n';
    for (std::size_t i = 0; i < grid.axis1.count; ++i) {
        out << format_number(grid.axis1.value(i));
        for (std::size_t j = 0; j < grid.axis2.count; ++j) out << ',' << format_number(grid.at(i, j));
        out << '\n';
    }
}

GridResult read_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("grid CSV is empty");
    const auto header = split(strip_cr(line));
    const auto slash = header.empty() ? std::string::npos : header[0].find('\\');
    if (slash == std::string::npos || header.size() < 2)
        throw DataError("grid CSV must start with '<axis1>\\<axis2>,...'");
    GridResult g;
    g.axis1.name = header[0].substr(0, slash);
    g.axis2.name = header[0].substr(slash + 1);
    g.axis2.count = header.size() - 1;
    g.axis2.lo = to_double(header[1]);
    g.axis2.hi = to_double(header.back());
    std::vector<double> rows;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw DataError("grid CSV row has wrong column count");
        rows.push_back(to_double(cells[0]));
        for (std::size_t j = 1; j < cells.size(); ++j) g.values.push_back(to_double(cells[j]));
    }
    if (rows.empty()) throw DataError("grid CSV has no rows");
    g.axis1.count = rows.size();
    g.axis1.lo = rows.front();
    g.axis1.hi = rows.back();
    return g;
}

void write_band_csv(std::ostream& out, const PredictiveBand& band) {
    out << "day,observed,model_mean,mean,lower,upper\n";
    for (std::size_t i = 0; i < band.day.size(); ++i)
        out << band.day[i] << ',' << format_number(band.observed[i]) << ','
            << format_number(band.model_mean[i]) << ',' << format_number(band.mean[i]) << ','
            << format_number(band.lower[i]) << ',' << format_number(band.upper[i]) << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,S,E,I,R,y\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const SeirState& s = traj.states[i];
        out << format_number(traj.t[i]) << ',' << format_number(s.S) << ',' << format_number(s.E)
            << ',' << format_number(s.I) << ',' << format_number(s.R) << ','
            << format_number(traj.observable[i]) << '\n';
    }
}

void write_path_log_csv(std::ostream& out, std::span<const PathOutcome> outcomes) {
    out << "path_id,outcome,t_end,events\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        out << i << ',' << to_string(outcomes[i].outcome) << ',' << format_number(outcomes[i].t_end)
            << ',' << outcomes[i].events << '\n';
}

void write_event_log_csv(std::ostream& out, const CountState& init, double t0,
                         std::span<const EventRecord> events) {
    out << "t,event,S,E,I,R\n";
    out << format_number(t0) << ",start," << init.S << ',' << init.E << ',' << init.I << ','
        << init.R << '\n';
    for (const auto& e : events)
        out << format_number(e.t) << ',' << kEventTable[static_cast<std::size_t>(e.kind)].name << ','
            << e.after.S << ',' << e.after.E << ',' << e.after.I << ',' << e.after.R << '\n';
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonResult> rows) {
    out << "sigma,beta_np,beta_p,beta_bar,beta_bar_ref,beta_bar_delta,r0,r0_ref,r0_delta,"
           "r0_seasonal,r0_seasonal_ref,r0_seasonal_delta,p_outbreak,p_outbreak_ref,"
           "p_outbreak_delta,p_outbreak_se,censored\n";
    for (const auto& r : rows) {
        const auto& ref = r.published;
        const double p = r.outbreak.n > 0 ? r.outbreak.p_outbreak() : std::nan("");
        out << format_number(ref.sigma) << ',' << format_number(ref.beta_np) << ','
            << format_number(ref.beta_peak) << ',' << format_number(r.beta_bar) << ','
            << format_number(ref.beta_bar) << ',' << format_number(std::abs(r.beta_bar - ref.beta_bar))
            << ',' << format_number(r.r0) << ',' << format_number(ref.r0) << ','
            << format_number(std::abs(r.r0 - ref.r0)) << ',' << format_number(r.seasonal.r0) << ','
            << format_number(ref.r0_seasonal) << ','
            << format_number(std::abs(r.seasonal.r0 - ref.r0_seasonal)) << ',' << format_number(p)
            << ',' << format_number(ref.p_outbreak) << ',' << format_number(std::abs(p - ref.p_outbreak))
            << ',' << format_number(r.outbreak.std_error()) << ',' << r.outbreak.n_censored << '\n';
    }
}

}  // namespace dengue
