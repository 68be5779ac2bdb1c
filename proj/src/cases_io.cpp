#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dengue/errors.hpp"
#include "dengue/io.hpp"

namespace dengue {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_real(std::string_view s, const std::string& where) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        throw DataError(where + ": not a number '" + std::string(s) + "'");
    return v;
}

}  // namespace

void CaseSeries::validate() const {
    if (day.size() != count.size()) throw DataError("case series day/count length mismatch");
    for (std::size_t i = 0; i < day.size(); ++i) {
        if (i > 0 && day[i] <= day[i - 1]) throw DataError("case series days must strictly increase");
        if (!(count[i] >= 0.0)) throw DataError("case counts must be >= 0");
    }
    if (!day.empty() && day.front() < 0) throw DataError("case series days must be >= 0");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::chrono::sys_days parse_iso_date(std::string_view text) {
    int y = 0;
    unsigned m = 0, d = 0;
    auto bad = [&] { return DataError("bad ISO date '" + std::string(text) + "'"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
    auto num = [&](std::size_t pos, std::size_t len, auto& out) {
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        if (ec != std::errc() || ptr != text.data() + pos + len) throw bad();
    };
    num(0, 4, y);
    num(5, 2, m);
    num(8, 2, d);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) throw bad();
    return std::chrono::sys_days{ymd};
}

std::string format_iso_date(std::chrono::sys_days d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

CaseSeries parse_case_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "date,cases")
        throw DataError("case CSV must start with the header 'date,cases'");
    CaseSeries series;
    std::vector<std::chrono::sys_days> dates;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::string where = "line " + std::to_string(row);
        if (comma == std::string::npos) throw DataError(where + ": expected 'date,cases'");
        const auto date = parse_iso_date(std::string_view(line).substr(0, comma));
        const double value = parse_real(std::string_view(line).substr(comma + 1), where);
        if (value < 0.0) throw DataError(where + ": negative case count");
        if (!dates.empty() && date <= dates.back())
            throw DataError(where + ": dates must be strictly increasing");
        dates.push_back(date);
        series.count.push_back(value);
    }
    if (dates.empty()) throw DataError("case CSV has no rows");

    std::vector<std::string> missing;
    for (std::size_t i = 1; i < dates.size(); ++i)
        for (auto d = dates[i - 1] + std::chrono::days{1}; d < dates[i]; d += std::chrono::days{1})
            missing.push_back(format_iso_date(d));
    if (!missing.empty()) {
        std::string msg = "case CSV has " + std::to_string(missing.size()) + " missing date(s):";
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
        if (missing.size() > 20) msg += " ...";
        throw DataError(msg);
    }

    series.start = dates.front();
    series.day.resize(dates.size());
    for (std::size_t i = 0; i < dates.size(); ++i) series.day[i] = static_cast<int>(i);
    return series;
}

CaseSeries load_case_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open case file " + path.string());
    return parse_case_csv(in);
}

void write_case_csv(std::ostream& out, const CaseSeries& cases) {
    out << "date,cases\n";
    for (std::size_t i = 0; i < cases.size(); ++i)
        out << format_iso_date(cases.start + std::chrono::days{cases.day[i]}) << ','
            << format_number(cases.count[i]) << '\n';
}

RainfallSeries parse_rainfall_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "month,mm")
        throw DataError("rainfall CSV must start with the header 'month,mm'");
    RainfallSeries r;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(row);
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DataError(where + ": expected 'month,mm'");
        const double month = parse_real(std::string_view(line).substr(0, comma), where);
        const double mm = parse_real(std::string_view(line).substr(comma + 1), where);
        if (mm < 0.0) throw DataError(where + ": negative rainfall");
        r.month.push_back(static_cast<int>(month));
        r.mm.push_back(mm);
    }
    if (r.month.size() != 12) throw DataError("rainfall CSV must have 12 monthly rows");
    for (int m = 1; m <= 12; ++m)
        if (r.month[static_cast<std::size_t>(m - 1)] != m)
            throw DataError("rainfall months must be 1..12 in order");
    return r;
}

RainfallSeries load_rainfall_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open rainfall file " + path.string());
    return parse_rainfall_csv(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

}  // namespace dengue
