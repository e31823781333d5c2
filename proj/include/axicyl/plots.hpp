#pragma once

#include <string>
#include <vector>

namespace axicyl {

struct Series2D {
  std::string label;
  std::vector<double> x, y;
};

// Static SVG line chart with linear axes.
std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, const std::vector<Series2D>& series,
                           bool log_x = false);

struct Bar {
  std::string label;
  std::vector<double> values;  // one value per group
};

// Grouped bar chart; groups name the bars within each cluster. An optional
// reference line is drawn at `reference` when it is positive.
std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& groups,
                          const std::vector<Bar>& bars, double reference = 0.0);

}  // namespace axicyl
