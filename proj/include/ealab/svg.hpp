#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ealab::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Minimal polyline chart writer; no plotting dependency. With log_y the
// y axis is log10-scaled and nonpositive values are rejected.
void write_line_chart(const std::string& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series, bool log_y);

}  // namespace ealab::svg
