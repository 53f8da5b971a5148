#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "unicont/errors.hpp"

namespace unicont {

/// Closed interval [lo, hi]. Singletons are allowed.
class Interval {
public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw precondition_violated("interval endpoints must be finite");
    }
    if (lo > hi) {
      throw precondition_violated("interval requires lo <= hi");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  bool degenerate() const noexcept { return lo_ == hi_; }

  /// Endpoint rounding allowance: 2^-40 of the width.
  double tolerance() const noexcept { return std::ldexp(width(), -40); }

  bool contains(double x, double tol = 0.0) const noexcept {
    return x >= lo_ - tol && x <= hi_ + tol;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  double lo_;
  double hi_;
};

/// `count` equally spaced points lo + (hi - lo) * (i / (count - 1)); the last
/// point is hi exactly. With count = 2^n + 1 this is the dyadic net of level n,
/// so nets and grids built here share bit-identical points.
inline std::vector<double> uniform_grid(const Interval& domain, std::size_t count) {
  if (count < 2) {
    throw precondition_violated("grid resolution must be at least 2");
  }
  std::vector<double> xs(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    xs[i] = domain.lo() + domain.width() * (static_cast<double>(i) / last);
  }
  xs[count - 1] = domain.hi();
  return xs;
}

}  // namespace unicont
