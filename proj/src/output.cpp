#include "bathdiff/output.hpp"

#include "bathdiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bathdiff {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string dynamics_csv(const ScenarioResult& result) {
    std::ostringstream out;
    out << "t,n_fermion,n_spin";
    if (result.me2) out << ",n_me2";
    out << '\n';
    for (int i = 0; i < result.grid.n_samples(); ++i) {
        out << format_double(result.grid.time(i)) << ',' << format_double(result.fermion.values[i])
            << ',' << format_double(result.spin.values[i]);
        if (result.me2) out << ',' << format_double(result.me2->values[i]);
        out << '\n';
    }
    return out.str();
}

std::string heatmap_csv(const HeatmapResult& result) {
    std::ostringstream out;
    out << "N_E,n_exc,delta_max\n";
    for (const HeatmapRow& row : result.rows) {
        if (!row.ok) continue;
        out << row.n_bath << ',' << row.n_exc << ',' << format_double(row.delta_max) << '\n';
    }
    return out.str();
}

namespace {

struct PlotFrame {
    static constexpr int width = 840;
    static constexpr int height = 520;
    static constexpr int left = 70;
    static constexpr int right = 810;
    static constexpr int top = 30;
    static constexpr int bottom = 460;

    double x_min, x_max, y_min, y_max;

    [[nodiscard]] double px(double x) const {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    }
    [[nodiscard]] double py(double y) const {
        return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
    }
};

std::string polyline(const PlotFrame& frame, const TimeGrid& grid,
                     const std::vector<double>& values, const std::string& color,
                     const std::string& dash) {
    std::ostringstream out;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (!dash.empty()) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (int i = 0; i < grid.n_samples(); ++i) {
        if (i) out << ' ';
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f", frame.px(grid.time(i)),
                      frame.py(values[i]));
        out << buf;
    }
    out << "\"/>\n";
    return out.str();
}

std::string axis_text(double x, double y, const std::string& text, const std::string& anchor) {
    std::ostringstream out;
    out << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"13\" font-family=\"sans-serif\""
        << " text-anchor=\"" << anchor << "\">" << text << "</text>\n";
    return out.str();
}

} // namespace

std::string dynamics_svg(const ScenarioResult& result) {
    PlotFrame frame{0.0, result.grid.t_max, 0.0, 1.0};
    double y_max = 0.0;
    for (double v : result.fermion.values) y_max = std::max(y_max, v);
    for (double v : result.spin.values) y_max = std::max(y_max, v);
    if (result.me2) {
        for (double v : result.me2->values) y_max = std::max(y_max, v);
    }
    frame.y_max = std::max(1e-12, 1.05 * y_max);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << PlotFrame::width
        << "\" height=\"" << PlotFrame::height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << PlotFrame::left << "\" y=\"" << PlotFrame::top << "\" width=\""
        << PlotFrame::right - PlotFrame::left << "\" height=\"" << PlotFrame::bottom - PlotFrame::top
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double t = frame.x_min + i * (frame.x_max - frame.x_min) / 5.0;
        const double n = frame.y_min + i * (frame.y_max - frame.y_min) / 5.0;
        char label[32];
        std::snprintf(label, sizeof(label), "%.3g", t);
        out << axis_text(frame.px(t), PlotFrame::bottom + 18, label, "middle");
        std::snprintf(label, sizeof(label), "%.3g", n);
        out << axis_text(PlotFrame::left - 8, frame.py(n) + 4, label, "end");
    }
    out << axis_text((PlotFrame::left + PlotFrame::right) / 2.0, PlotFrame::height - 12, "t",
                     "middle");
    out << axis_text(18, (PlotFrame::top + PlotFrame::bottom) / 2.0, "n_S", "middle");

    out << polyline(frame, result.grid, result.fermion.values, "#d62728", "6,3");
    out << polyline(frame, result.grid, result.spin.values, "#1f77b4", "2,3");
    if (result.me2) out << polyline(frame, result.grid, result.me2->values, "black", "");

    double ly = PlotFrame::top + 18;
    const auto legend = [&](const std::string& color, const std::string& name) {
        out << "<line x1=\"" << PlotFrame::right - 150 << "\" y1=\"" << ly << "\" x2=\""
            << PlotFrame::right - 110 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << axis_text(PlotFrame::right - 102, ly + 4, name, "start");
        ly += 18;
    };
    legend("#d62728", "fermion");
    legend("#1f77b4", "spin");
    if (result.me2) legend("black", "me2");

    out << "</svg>\n";
    return out.str();
}

std::string heatmap_svg(const HeatmapResult& result) {
    int n_min = 1 << 20, n_max = 0;
    double d_max = 0.0;
    for (const HeatmapRow& row : result.rows) {
        n_min = std::min(n_min, row.n_bath);
        n_max = std::max(n_max, row.n_bath);
        if (row.ok) d_max = std::max(d_max, row.delta_max);
    }
    if (result.rows.empty()) throw ArgumentError("heatmap_svg: no rows");
    if (d_max <= 0) d_max = 1.0;

    const int cell = 34;
    const int left = 70, top = 30;
    const int width = left + (n_max - n_min + 1) * cell + 80;
    const int height = top + (n_max + 1) * cell + 60;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const HeatmapRow& row : result.rows) {
        const int x = left + (row.n_bath - n_min) * cell;
        const int y = top + (n_max - row.n_exc) * cell;
        std::string fill = "#cccccc";
        if (row.ok) {
            const double u = row.delta_max / d_max;
            const int r = static_cast<int>(255);
            const int g = static_cast<int>(250 - 210 * u);
            const int b = static_cast<int>(240 - 230 * u);
            char buf[16];
            std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
            fill = buf;
        }
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
            << "\" fill=\"" << fill << "\" stroke=\"#888\"/>\n";
    }

    for (int n = n_min; n <= n_max; ++n) {
        out << axis_text(left + (n - n_min) * cell + cell / 2.0, top + (n_max + 1) * cell + 18,
                         std::to_string(n), "middle");
    }
    for (int x = 0; x <= n_max; ++x) {
        out << axis_text(left - 8, top + (n_max - x) * cell + cell / 2.0 + 4, std::to_string(x),
                         "end");
    }
    out << axis_text(left + (n_max - n_min + 1) * cell / 2.0, height - 14, "N_E", "middle");
    out << axis_text(20, top + (n_max + 1) * cell / 2.0, "n_exc", "middle");
    char scale[64];
    std::snprintf(scale, sizeof(scale), "delta_max (max %.3g)", d_max);
    out << axis_text(left, 18, scale, "start");
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    out << content;
    if (!out) {
        throw ConfigError("failed writing output file '" + path + "'");
    }
}

} // namespace bathdiff
