#pragma once

// Minimal static SVG line charts for experiment outputs.

#include <string>
#include <vector>

namespace wrank::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

}  // namespace wrank::svg
