#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lrprop {

// Scalar quantity on a (distance, time) mesh; the universal output format.
// values is row-major: one row per distance, one column per time.
struct SpacetimeGrid {
  std::vector<int> delta_values;   // ascending, positive
  std::vector<double> t_values;    // ascending, nonnegative
  std::vector<double> values;
  std::map<std::string, std::string> meta;

  double& at(size_t delta_index, size_t t_index) {
    return values[delta_index * t_values.size() + t_index];
  }
  double at(size_t delta_index, size_t t_index) const {
    return values[delta_index * t_values.size() + t_index];
  }
  size_t rows() const { return delta_values.size(); }
  size_t cols() const { return t_values.size(); }
};

// Named columns of equal length; cells may be absent (e.g. a bound outside
// its validity window).
struct Curve {
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> columns;  // columns[c][row]
  std::map<std::string, std::string> meta;

  size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

}  // namespace lrprop
