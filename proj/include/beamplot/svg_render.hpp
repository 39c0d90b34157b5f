#pragma once

#include "beamplot/beam_model.hpp"
#include "beamplot/error.hpp"
#include "beamplot/format.hpp"
#include "beamplot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace beamplot {

struct Margins {
    int top = 70;
    int right = 40;
    int bottom = 70;
    int left = 80;
};

struct MarkerSizes {
    double diamond = 5.0;
    double triangle = 5.0;
    double circle = 5.0;
};

/// Visual constants for the beamplot. Top and bottom margins hold the
/// count axis and the value axis respectively.
struct RenderConfig {
    int width_px = 900;
    int height_px = 600;
    Margins margins;
    std::string value_color = "black";
    std::string count_color = "red";
    MarkerSizes marker_sizes;
    std::string dash_pattern = "2 3";
    int max_ticks = 8;
    double stack_offset = 3.0; // vertical step between coincident diamonds
};

struct PlotArea {
    double left = 0;
    double right = 0;
    double top = 0;
    double bottom = 0;

    double width() const { return right - left; }
    double height() const { return bottom - top; }
};

inline PlotArea plot_area(const RenderConfig& config)
{
    const PlotArea area{
        static_cast<double>(config.margins.left),
        static_cast<double>(config.width_px - config.margins.right),
        static_cast<double>(config.margins.top),
        static_cast<double>(config.height_px - config.margins.bottom),
    };
    const auto& m = config.margins;
    if (config.width_px <= 0 || config.height_px <= 0 || m.top < 0 || m.right < 0 || m.bottom < 0 || m.left < 0
        || area.width() <= 0 || area.height() <= 0) {
        throw Error(ErrorCode::DegenerateCanvas,
                    "plot area " + std::to_string(config.width_px) + "x" + std::to_string(config.height_px)
                        + " minus margins is empty");
    }
    return area;
}

/// Upper end of the value scale. An all-zero dataset still gets a unit
/// scale so that zero sits on the left edge.
inline double value_domain_max(const BeamplotModel& model)
{
    const double max = to_double(model.max_value());
    return max > 0 ? max : 1.0;
}

inline double count_domain_max(const BeamplotModel& model)
{
    return static_cast<double>(std::max<std::size_t>(model.max_paper_count(), 1));
}

inline double value_to_x(double value, const BeamplotModel& model, const RenderConfig& config)
{
    const auto area = plot_area(config);
    const double max = value_domain_max(model);
    if (!(value >= 0.0 && value <= max)) {
        throw Error(ErrorCode::OutOfRange, "value " + std::to_string(value) + " outside [0, "
                                               + std::to_string(max) + "]");
    }
    return area.left + value / max * area.width();
}

inline double value_to_x(const Rational& value, const BeamplotModel& model, const RenderConfig& config)
{
    if (value < 0 || (model.max_value() > 0 && value > model.max_value())) {
        throw Error(ErrorCode::OutOfRange, "value " + format_decimal(value) + " outside the value scale");
    }
    return value_to_x(to_double(value), model, config);
}

inline double count_to_x(std::size_t count, const BeamplotModel& model, const RenderConfig& config)
{
    const auto area = plot_area(config);
    const double max = count_domain_max(model);
    if (static_cast<double>(count) > max) {
        throw Error(ErrorCode::OutOfRange,
                    "count " + std::to_string(count) + " above " + std::to_string(model.max_paper_count()));
    }
    return area.left + static_cast<double>(count) / max * area.width();
}

/// Rows are evenly spaced bands, earliest year at the top; the marker line
/// for a year runs through the middle of its band.
inline double year_to_y(int year, const BeamplotModel& model, const RenderConfig& config)
{
    const auto area = plot_area(config);
    if (model.rows.empty() || year < model.rows.front().year || year > model.rows.back().year) {
        throw Error(ErrorCode::OutOfRange, "year " + std::to_string(year) + " outside the plotted span");
    }
    const double band = area.height() / static_cast<double>(model.rows.size());
    const auto index = static_cast<double>(year - model.rows.front().year);
    return area.top + (index + 0.5) * band;
}

/// Integer ticks 0, s, 2s, ... <= max for the finest step s in
/// {1, 2, 5} x 10^k that keeps the tick count within max_ticks.
inline std::vector<std::int64_t> axis_ticks(double max, int max_ticks)
{
    max_ticks = std::max(max_ticks, 2);
    std::int64_t step = 1;
    for (std::int64_t decade = 1;; decade *= 10) {
        bool found = false;
        for (const std::int64_t m : {1, 2, 5}) {
            step = m * decade;
            if (std::floor(max / static_cast<double>(step)) + 1 <= max_ticks) {
                found = true;
                break;
            }
        }
        if (found) {
            break;
        }
    }
    std::vector<std::int64_t> ticks;
    for (std::int64_t t = 0; static_cast<double>(t) <= max; t += step) {
        ticks.push_back(t);
    }
    return ticks;
}

namespace detail {

inline std::string xml_escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

class SvgWriter {
public:
    void raw(std::string_view text) { out_ << text; }

    void line(std::string_view cls, double x1, double y1, double x2, double y2, std::string_view stroke,
              std::string_view extra = {})
    {
        out_ << "<line class=\"" << cls << "\" x1=\"" << format_coord(x1) << "\" y1=\"" << format_coord(y1)
             << "\" x2=\"" << format_coord(x2) << "\" y2=\"" << format_coord(y2) << "\" stroke=\""
             << xml_escape(stroke) << '"' << extra << "/>\n";
    }

    void polygon(std::string_view cls, std::initializer_list<std::pair<double, double>> points,
                 std::string_view fill)
    {
        out_ << "<path class=\"" << cls << "\" d=\"";
        char op = 'M';
        for (const auto& [x, y] : points) {
            out_ << op << format_coord(x) << ',' << format_coord(y) << ' ';
            op = 'L';
        }
        out_ << "Z\" fill=\"" << xml_escape(fill) << "\"/>\n";
    }

    void circle(std::string_view cls, double cx, double cy, double r, std::string_view fill)
    {
        out_ << "<circle class=\"" << cls << "\" cx=\"" << format_coord(cx) << "\" cy=\"" << format_coord(cy)
             << "\" r=\"" << format_coord(r) << "\" fill=\"" << xml_escape(fill) << "\"/>\n";
    }

    void text(std::string_view cls, double x, double y, std::string_view anchor, std::string_view fill,
              std::string_view content, std::string_view extra = {})
    {
        out_ << "<text class=\"" << cls << "\" x=\"" << format_coord(x) << "\" y=\"" << format_coord(y)
             << "\" text-anchor=\"" << anchor << "\" fill=\"" << xml_escape(fill) << '"' << extra << '>'
             << xml_escape(content) << "</text>\n";
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

} // namespace detail

/// Renders the complete beamplot: a diamond per paper, a beam per year
/// spanning its value range, a median triangle under each non-empty beam,
/// a count circle per year, dashed median reference lines for values and
/// counts, the value axis below, the count axis above, and one y label per
/// year of the span. Identical inputs give identical bytes.
inline std::string render_beamplot(const BeamplotModel& model, const RenderConfig& config = {})
{
    const auto area = plot_area(config);
    if (model.rows.empty()) {
        throw Error(ErrorCode::EmptyDataset, "model has no rows");
    }
    const auto& vc = config.value_color;
    const auto& cc = config.count_color;
    const auto& sizes = config.marker_sizes;
    const auto width = std::to_string(config.width_px);
    const auto height = std::to_string(config.height_px);

    detail::SvgWriter svg;
    svg.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + width + "\" height=\"" + height
            + "\" viewBox=\"0 0 " + width + " " + height
            + "\" font-family=\"sans-serif\" font-size=\"12\">\n");
    svg.raw("<!-- beamplot census_year=" + std::to_string(model.census_year) + " mode="
            + std::string(to_string(model.mode)) + " -->\n");
    svg.raw("<title>Beamplot</title>\n");

    // axes
    svg.raw("<g class=\"axes\">\n");
    svg.line("axis-line", area.left, area.bottom, area.right, area.bottom, vc);
    for (const auto tick : axis_ticks(value_domain_max(model), config.max_ticks)) {
        const double x = value_to_x(static_cast<double>(tick), model, config);
        svg.line("axis-tick", x, area.bottom, x, area.bottom + 5, vc);
        svg.text("axis-value", x, area.bottom + 18, "middle", vc, std::to_string(tick));
    }
    svg.text("axis-title", area.left + area.width() / 2, area.bottom + 40, "middle", vc,
             model.mode == ValueMode::Raw ? "Citations" : "Age-weighted citations");

    svg.line("axis-line", area.left, area.top, area.right, area.top, cc);
    for (const auto tick : axis_ticks(count_domain_max(model), config.max_ticks)) {
        const double x = count_to_x(static_cast<std::size_t>(tick), model, config);
        svg.line("axis-tick", x, area.top - 5, x, area.top, cc);
        svg.text("axis-count", x, area.top - 9, "middle", cc, std::to_string(tick));
    }
    svg.text("axis-title", area.left + area.width() / 2, area.top - 30, "middle", cc, "Number of papers");

    svg.line("axis-line", area.left, area.top, area.left, area.bottom, vc);
    for (const auto& row : model.rows) {
        const double y = year_to_y(row.year, model, config);
        svg.text("axis-year", area.left - 8, y + 4, "end", vc, std::to_string(row.year));
    }
    svg.text("axis-title", 16, area.top + area.height() / 2, "middle", vc, "Publication year",
             " transform=\"rotate(-90 16 " + format_coord(area.top + area.height() / 2) + ")\"");
    svg.raw("</g>\n");

    // reference lines
    const std::string dash = " stroke-dasharray=\"" + detail::xml_escape(config.dash_pattern) + "\"";
    svg.raw("<g class=\"medians\">\n");
    const double vx = value_to_x(model.overall_value_median, model, config);
    svg.line("value-median-line", vx, area.top, vx, area.bottom, vc, dash);
    const double cx = area.left + to_double(model.overall_count_median) / count_domain_max(model) * area.width();
    svg.line("count-median-line", cx, area.top, cx, area.bottom, cc, dash);
    svg.raw("</g>\n");

    svg.raw("<g class=\"rows\">\n");
    for (const auto& row : model.rows) {
        const double y = year_to_y(row.year, model, config);
        if (row.paper_count >= 2 && row.min_value != row.max_value) {
            svg.line("beam", value_to_x(*row.min_value, model, config), y,
                     value_to_x(*row.max_value, model, config), y, vc, " stroke-width=\"1.5\"");
        }
        if (row.median_value) {
            const double mx = value_to_x(*row.median_value, model, config);
            const double s = sizes.triangle;
            const double ty = y + s + 2;
            svg.polygon("year-median", {{mx, ty - s}, {mx + s, ty + s}, {mx - s, ty + s}}, vc);
        }
        std::size_t stacked = 0;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            stacked = (i > 0 && row.values[i] == row.values[i - 1]) ? stacked + 1 : 0;
            const double px = value_to_x(row.values[i], model, config);
            const double py = y - static_cast<double>(stacked) * config.stack_offset;
            const double s = sizes.diamond;
            svg.polygon("paper-point", {{px, py - s}, {px + s, py}, {px, py + s}, {px - s, py}}, vc);
        }
        svg.circle("pub-count", count_to_x(row.paper_count, model, config), y, sizes.circle, cc);
    }
    svg.raw("</g>\n");
    svg.raw("</svg>\n");
    return svg.str();
}

} // namespace beamplot
