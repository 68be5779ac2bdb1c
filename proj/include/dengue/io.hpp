#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dengue/cases.hpp"
#include "dengue/comparison.hpp"
#include "dengue/ctmc.hpp"
#include "dengue/diagnostics.hpp"
#include "dengue/grid.hpp"
#include "dengue/mcmc.hpp"
#include "dengue/model.hpp"
#include "dengue/predictive.hpp"

namespace dengue {

/// Six significant digits, locale independent. NaN/inf print as nan/inf.
std::string format_number(double v);

/// ISO-8601 date helpers.
std::chrono::sys_days parse_iso_date(std::string_view text);
std::string format_iso_date(std::chrono::sys_days d);

/// Reads `date,cases`. Dates must be consecutive days; gaps raise DataError
/// naming the missing dates.
CaseSeries load_case_csv(const std::filesystem::path& path);
CaseSeries parse_case_csv(std::istream& in);
void write_case_csv(std::ostream& out, const CaseSeries& cases);

struct RainfallSeries {
    std::vector<int> month;  // 1..12
    std::vector<double> mm;
};

/// Reads `month,mm` with exactly the months 1..12.
RainfallSeries load_rainfall_csv(const std::filesystem::path& path);
RainfallSeries parse_rainfall_csv(std::istream& in);

/// `chain,iter,<names...>,log_post`; iter counts from the end of warm-up.
void write_posterior_csv(std::ostream& out, const PosteriorChains& chains);
PosteriorChains read_posterior_csv(std::istream& in);
PosteriorChains load_posterior_csv(const std::filesystem::path& path);

/// `parameter,prior,mean,ci_low,ci_high,r_hat,ess`
void write_summary_csv(std::ostream& out, const PosteriorSummary& summary);

/// First row: "<axis1>\<axis2>" then axis2 values; each later row starts with
/// the axis1 value.
void write_grid_csv(std::ostream& out, const GridResult& grid);
GridResult read_grid_csv(std::istream& in);

void write_band_csv(std::ostream& out, const PredictiveBand& band);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_path_log_csv(std::ostream& out, std::span<const PathOutcome> outcomes);
void write_event_log_csv(std::ostream& out, const CountState& init, double t0,
                         std::span<const EventRecord> events);
void write_comparison_csv(std::ostream& out, std::span<const ComparisonResult> rows);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dengue
