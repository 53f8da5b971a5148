#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "unicont/errors.hpp"

namespace unicont {

/// A finite metric space carrying a real function. Distances in the value
/// space are absolute differences.
class FiniteMetricSpace {
public:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> dist,
                    std::vector<double> values)
      : labels_(std::move(labels)), dist_(std::move(dist)), values_(std::move(values)) {
    const std::size_t n = values_.size();
    if (labels_.size() != n || dist_.size() != n) {
      throw precondition_violated("labels, distance matrix and values must agree in size");
    }
    double scale = 0.0;
    for (const auto& row : dist_) {
      if (row.size() != n) throw precondition_violated("distance matrix must be square");
      for (double d : row) {
        if (!(d >= 0.0) || !std::isfinite(d)) {
          throw precondition_violated("distances must be finite and nonnegative");
        }
        scale = std::max(scale, d);
      }
    }
    // Distances derived from coordinates may break the triangle inequality by a rounding.
    const double slack = 8.0 * scale * 0x1p-52;
    for (std::size_t i = 0; i < n; ++i) {
      if (dist_[i][i] != 0.0) throw precondition_violated("dist[i][i] must be 0");
      for (std::size_t j = 0; j < n; ++j) {
        if (dist_[i][j] != dist_[j][i]) throw precondition_violated("distance matrix must be symmetric");
        for (std::size_t k = 0; k < n; ++k) {
          if (dist_[i][k] > dist_[i][j] + dist_[j][k] + slack) {
            throw precondition_violated("triangle inequality fails at (" + labels_[i] + ", " +
                                        labels_[j] + ", " + labels_[k] + ")");
          }
        }
      }
    }
  }

  /// Points on the real line with d(x, y) = |x - y|.
  static FiniteMetricSpace on_line(const std::vector<double>& points, std::vector<double> values) {
    const std::size_t n = points.size();
    std::vector<std::string> labels;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("p" + std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) dist[i][j] = std::fabs(points[j] - points[i]);
    }
    // |b - a| and |a - b| agree bitwise, so the matrix is exactly symmetric.
    return FiniteMetricSpace(std::move(labels), std::move(dist), std::move(values));
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double distance(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> dist_;
  std::vector<double> values_;
};

}  // namespace unicont
