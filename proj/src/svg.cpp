#include "dengue/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 80.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 4> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void add(const std::vector<double>& vs) {
        for (double v : vs) add(v);
    }
    Range padded() const {
        Range r = *this;
        if (!(r.lo <= r.hi)) return {0.0, 1.0};
        if (r.hi == r.lo) {
            r.lo -= 0.5;
            r.hi += 0.5;
        }
        return r;
    }
};

// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(const Range& r) {
    const double span = r.hi - r.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> out;
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * span; v += step)
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
}

class Canvas {
public:
    Canvas(const std::string& title) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(kWidth) << "\" height=\""
             << px(kHeight) << "\" viewBox=\"0 0 " << px(kWidth) << ' ' << px(kHeight) << "\">\n"
             << "<rect x=\"0\" y=\"0\" width=\"" << px(kWidth) << "\" height=\"" << px(kHeight)
             << "\" fill=\"white\"/>\n";
        text(kWidth / 2, kTop / 2 + 6, title, "middle", 16);
    }

    void set_x(Range r) { x_ = r.padded(); }
    void set_y(Range r) { y_ = r.padded(); }

    double sx(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
    double sy(double v, const Range& r) const {
        return kHeight - kBottom - (v - r.lo) / (r.hi - r.lo) * (kHeight - kTop - kBottom);
    }
    double sy(double v) const { return sy(v, y_); }
    const Range& y_range() const { return y_; }

    void text(double x, double y, const std::string& s, const char* anchor, int size = 12,
              const char* extra = "") {
        out_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"sans-serif\" font-size=\""
             << size << "\" text-anchor=\"" << anchor << "\"" << extra << ">" << escape(s) << "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* color, double width = 1.0) {
        out_ << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2) << "\" y2=\""
             << px(y2) << "\" stroke=\"" << color << "\" stroke-width=\"" << px(width) << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill, const char* extra = "") {
        out_ << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w) << "\" height=\""
             << px(h) << "\" fill=\"" << fill << "\"" << extra << "/>\n";
    }

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const char* color,
                  const Range& yr, double width = 1.5) {
        out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << px(width)
             << "\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(ys[i])) continue;
            out_ << (first ? "" : " ") << px(sx(xs[i])) << ',' << px(sy(ys[i], yr));
            first = false;
        }
        out_ << "\"/>\n";
    }

    void polygon(const std::vector<std::pair<double, double>>& pts, const char* fill, double opacity) {
        out_ << "<polygon fill=\"" << fill << "\" fill-opacity=\"" << px(opacity) << "\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out_ << (i ? " " : "") << px(pts[i].first) << ',' << px(pts[i].second);
        out_ << "\"/>\n";
    }

    void circle(double x, double y, double r, const char* fill) {
        out_ << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"" << px(r) << "\" fill=\"" << fill
             << "\"/>\n";
    }

    void axes(const std::string& x_label, const std::string& y_label) {
        const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
        line(x0, y0, x1, y0, "black");
        line(x0, y0, x0, y1, "black");
        for (double t : ticks(x_)) {
            line(sx(t), y0, sx(t), y0 + 5, "black");
            text(sx(t), y0 + 18, format_number(t), "middle", 11);
        }
        for (double t : ticks(y_)) {
            line(x0 - 5, sy(t), x0, sy(t), "black");
            text(x0 - 8, sy(t) + 4, format_number(t), "end", 11);
        }
        text((x0 + x1) / 2, kHeight - 15, x_label, "middle");
        text(18, (y0 + y1) / 2, y_label, "middle", 12,
             (" transform=\"rotate(-90 18 " + px((y0 + y1) / 2) + ")\"").c_str());
    }

    void right_axis(const Range& r, const std::string& label) {
        const double x = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
        line(x, y0, x, y1, "black");
        for (double t : ticks(r)) {
            line(x, sy(t, r), x + 5, sy(t, r), "black");
            text(x + 8, sy(t, r) + 4, format_number(t), "start", 11);
        }
        const double ym = (y0 + y1) / 2;
        text(kWidth - 18, ym, label, "middle", 12,
             (" transform=\"rotate(90 " + px(kWidth - 18) + " " + px(ym) + ")\"").c_str());
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = kTop + 12;
        const double x = kLeft + 12;
        for (const auto& [label, color] : entries) {
            rect(x, y - 8, 14, 8, color);
            text(x + 20, y, label, "start", 11);
            y += 16;
        }
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

    std::ostringstream& raw() { return out_; }

private:
    std::ostringstream out_;
    Range x_{0.0, 1.0};
    Range y_{0.0, 1.0};
};

void require(bool ok, const char* what) {
    if (!ok) throw DataError(what);
}

std::string render(const TimeseriesPlot& plot) {
    require(!plot.series.empty(), "timeseries plot needs at least one series");
    Range xr, yr;
    for (const auto& s : plot.series) {
        require(!s.x.empty() && s.x.size() == s.y.size(), "timeseries x/y must be non-empty and aligned");
        xr.add(s.x);
        yr.add(s.y);
    }
    Canvas c(plot.title);
    c.set_x(xr);
    c.set_y(yr);
    c.axes(plot.x_label, plot.y_label);
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const char* color = kPalette[i % kPalette.size()];
        c.polyline(plot.series[i].x, plot.series[i].y, color, c.y_range());
        legend.emplace_back(plot.series[i].label, color);
    }
    c.legend(legend);
    return c.finish();
}

std::string render(const BandPlot& plot) {
    const std::size_t n = plot.x.size();
    require(n > 0, "band plot needs data");
    require(plot.observed.size() == n && plot.center.size() == n && plot.lower.size() == n &&
                plot.upper.size() == n,
            "band plot series must be aligned");
    Range xr, yr;
    xr.add(plot.x);
    yr.add(plot.observed);
    yr.add(plot.lower);
    yr.add(plot.upper);
    Canvas c(plot.title);
    c.set_x(xr);
    c.set_y(yr);
    c.axes("day", "daily cases");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(c.sx(plot.x[i]), c.sy(plot.upper[i]));
    for (std::size_t i = n; i-- > 0;) pts.emplace_back(c.sx(plot.x[i]), c.sy(plot.lower[i]));
    c.polygon(pts, "#d62728", 0.3);
    for (std::size_t i = 0; i < n; ++i) c.circle(c.sx(plot.x[i]), c.sy(plot.observed[i]), 1.5, "black");
    c.polyline(plot.x, plot.center, "#1f77b4", c.y_range(), 2.0);
    c.legend({{"observed", "black"}, {"predicted", "#1f77b4"}, {"95% credible band", "#d62728"}});
    return c.finish();
}

std::string render(const HeatmapPlot& plot) {
    const GridResult& g = plot.grid;
    require(g.axis1.count > 0 && g.axis2.count > 0, "heatmap needs a non-empty grid");
    require(g.values.size() == g.axis1.count * g.axis2.count, "heatmap values do not match the grid");
    Range vr;
    vr.add(g.values);
    vr = vr.padded();
    Canvas c(plot.title);
    // Columns run along x (axis2), rows along y (axis1); cells centered on grid values.
    auto half_step = [](const Axis& a) { return a.count > 1 ? 0.5 * (a.hi - a.lo) / double(a.count - 1) : 0.5; };
    const double hx = half_step(g.axis2), hy = half_step(g.axis1);
    c.set_x({g.axis2.lo - hx, g.axis2.hi + hx});
    c.set_y({g.axis1.lo - hy, g.axis1.hi + hy});
    c.raw() << "<g id=\"cells\">\n";
    for (std::size_t i = 0; i < g.axis1.count; ++i) {
        for (std::size_t j = 0; j < g.axis2.count; ++j) {
            const double v = g.at(i, j);
            const double x0 = c.sx(g.axis2.value(j) - hx), x1 = c.sx(g.axis2.value(j) + hx);
            const double y0 = c.sy(g.axis1.value(i) + hy), y1 = c.sy(g.axis1.value(i) - hy);
            const std::string fill = std::isfinite(v) ? ramp_color((v - vr.lo) / (vr.hi - vr.lo)) : "#bbbbbb";
            c.rect(x0, y0, x1 - x0, y1 - y0, fill, " class=\"cell\"");
        }
    }
    c.raw() << "</g>\n";
    c.axes(g.axis2.name, g.axis1.name);
    // Color bar legend along the right margin.
    const double bx = kWidth - kRight + 20, top = kTop, bottom = kHeight - kBottom;
    constexpr int kSteps = 50;
    for (int k = 0; k < kSteps; ++k) {
        const double f0 = double(k) / kSteps;
        const double y = bottom - (f0 + 1.0 / kSteps) * (bottom - top);
        c.rect(bx, y, 16, (bottom - top) / kSteps + 0.5, ramp_color(f0 + 0.5 / kSteps));
    }
    c.text(bx + 8, top - 6, plot.value_label, "middle", 11);
    c.text(bx + 20, top + 10, format_number(vr.hi), "start", 10);
    c.text(bx + 20, bottom, format_number(vr.lo), "start", 10);
    return c.finish();
}

std::string render(const SeasonalRainfallPlot& plot) {
    require(!plot.t.empty() && plot.t.size() == plot.beta.size(), "transmission curve must be non-empty");
    require(plot.rainfall.mm.size() == 12, "rainfall series must have 12 months");
    Range xr{0.0, 365.0}, yr, rr{0.0, 0.0};
    yr.add(plot.beta);
    yr.add(0.0);
    rr.add(plot.rainfall.mm);
    rr = rr.padded();
    Canvas c(plot.title);
    c.set_x(xr);
    c.set_y(yr);
    constexpr double kMonthDays = 365.0 / 12.0;
    for (std::size_t m = 0; m < 12; ++m) {
        const double x0 = c.sx(kMonthDays * double(m) + 2.0), x1 = c.sx(kMonthDays * double(m + 1) - 2.0);
        const double top = c.sy(plot.rainfall.mm[m], rr), base = c.sy(0.0, rr);
        c.rect(x0, top, x1 - x0, base - top, "#9ecae1", " class=\"bar\"");
    }
    c.polyline(plot.t, plot.beta, "#d62728", c.y_range(), 2.0);
    c.axes("day of year", "transmission rate beta(t) (1/day)");
    c.right_axis(rr, "mean monthly rainfall (mm)");
    c.legend({{"beta(t)", "#d62728"}, {"rainfall", "#9ecae1"}});
    return c.finish();
}

}  // namespace

std::string ramp_color(double fraction) {
    static constexpr std::array<std::array<int, 3>, 5> kStops = {{
        {0x44, 0x01, 0x54}, {0x3b, 0x52, 0x8b}, {0x21, 0x91, 0x8c}, {0x5e, 0xc9, 0x62}, {0xfd, 0xe7, 0x25}}};
    const double f = std::clamp(std::isfinite(fraction) ? fraction : 0.0, 0.0, 1.0) * 4.0;
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(f), 3);
    const double w = f - static_cast<double>(k);
    char buf[8];
    int rgb[3];
    for (int ch = 0; ch < 3; ++ch)
        rgb[ch] = static_cast<int>(std::lround(kStops[k][ch] + w * (kStops[k + 1][ch] - kStops[k][ch])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::string render_svg(const Plot& plot) {
    return std::visit([](const auto& p) { return render(p); }, plot);
}

void emit_plot(const Plot& plot, const std::filesystem::path& path) {
    write_text_file(path, render_svg(plot));
}

}  // namespace dengue
