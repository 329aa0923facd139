#include "ealab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ealab::svg {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series, bool log_y) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (log_y && y <= 0.0) throw std::invalid_argument("log-scaled chart needs positive values");
            const double yy = log_y ? std::log10(y) : y;
            if (first) {
                xmin = xmax = x;
                ymin = ymax = yy;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, yy);
                ymax = std::max(ymax, yy);
            }
        }
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) {
        const double yy = log_y ? std::log10(y) : y;
        return kTop + (ymax - yy) / (ymax - ymin) * plot_h;
    };

    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" font-family=\"sans-serif\">"
       << title << "</text>\n";

    // axes
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
       << kTop + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
       << "\" stroke=\"black\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / ticks;
        os << "<line x1=\"" << px(fx) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px(fx) << "\" y2=\""
           << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(fx) << "\" y=\"" << kTop + plot_h + 20
           << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(fx) << "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / ticks;
        const double vy = log_y ? std::pow(10.0, fy) : fy;
        const double y_pix = kTop + plot_h - plot_h * i / ticks;
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y_pix << "\" x2=\"" << kLeft << "\" y2=\"" << y_pix
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_pix + 4
           << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(vy) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label << "</text>\n";
    os << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "font-family=\"sans-serif\" transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">" << y_label
       << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream pts;
        for (const auto& [x, y] : series[s].points) pts << px(x) << ',' << py(y) << ' ';
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"" << pts.str()
           << "\"/>\n";
        for (const auto& [x, y] : series[s].points)
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.6\" fill=\"" << color << "\"/>\n";
        const double ly = kTop + 16 + 16 * static_cast<double>(s);
        os << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + plot_w - 126
           << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kLeft + plot_w - 120 << "\" y=\"" << ly
           << "\" font-size=\"12\" font-family=\"sans-serif\">" << series[s].label << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace ealab::svg
