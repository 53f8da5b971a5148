#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "unicont/function.hpp"
#include "unicont/optimal_delta.hpp"

namespace unicont {

inline constexpr int kMaxNetLevel = 24;

/// E_n = { a + (b - a) k / 2^n : k = 0..2^n }.
struct DyadicNet {
  int level;
  std::vector<double> points;

  double mesh() const { return std::ldexp(points.back() - points.front(), -level); }
};

/// Builds E_n from the same formula as uniform_grid, so E_n is a subset of
/// E_{n+1} bit for bit.
inline DyadicNet dyadic_net(const Interval& domain, int level) {
  if (domain.degenerate()) throw precondition_violated("dyadic net needs a nondegenerate interval");
  if (level < 0) throw precondition_violated("net level must be nonnegative");
  if (level > kMaxNetLevel) {
    throw level_too_large("net level " + std::to_string(level) + " exceeds the guard " +
                          std::to_string(kMaxNetLevel));
  }
  return DyadicNet{level, uniform_grid(domain, (std::size_t{1} << level) + 1)};
}

struct LevelRecord {
  int level;
  double mesh;
  double max_value;  ///< M_n
  double min_value;  ///< m_n
  double argmax;     ///< x_n, smallest k on ties
  double argmin;
  std::optional<double> certified_gap;
};

struct RefinementTrace {
  std::vector<LevelRecord> levels;
  bool stopped_early = false;

  const LevelRecord& final_level() const { return levels.back(); }

  const LevelRecord* find(int level) const {
    for (const auto& r : levels)
      if (r.level == level) return &r;
    return nullptr;
  }
  LevelRecord* find(int level) {
    for (auto& r : levels)
      if (r.level == level) return &r;
    return nullptr;
  }
};

/// Max and min of f over the nets E_0 .. E_L. Values of E_n are reused at
/// level n + 1, so M_n is non-decreasing and m_n non-increasing exactly.
///
/// With stall_tol > 0 the run stops at level L once both M and m moved by
/// less than stall_tol across each of the last two transitions. The last
/// argmax stands in for the limit point x_inf, which the existence argument
/// only reaches through a subsequence.
inline RefinementTrace refine_extrema(const RealFunction& f, int max_level, double stall_tol = 0.0) {
  if (max_level < 0) throw precondition_violated("max level must be nonnegative");
  if (max_level > kMaxNetLevel) {
    throw level_too_large("net level " + std::to_string(max_level) + " exceeds the guard " +
                          std::to_string(kMaxNetLevel));
  }
  const Interval& dom = f.domain();
  if (dom.degenerate()) throw precondition_violated("refinement needs a nondegenerate domain");

  RefinementTrace trace;
  std::vector<double> values{f(dom.lo()), f(dom.hi())};
  for (int n = 0; n <= max_level; ++n) {
    const DyadicNet net = dyadic_net(dom, n);
    if (n > 0) {
      std::vector<double> next(net.points.size());
      for (std::size_t k = 0; k < next.size(); ++k) {
        next[k] = (k % 2 == 0) ? values[k / 2] : f(net.points[k]);
      }
      values = std::move(next);
    }
    std::size_t kmax = 0;
    std::size_t kmin = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
      if (values[k] > values[kmax]) kmax = k;
      if (values[k] < values[kmin]) kmin = k;
    }
    trace.levels.push_back(LevelRecord{n, net.mesh(), values[kmax], values[kmin], net.points[kmax],
                                       net.points[kmin], std::nullopt});
    if (n >= 2 && stall_tol > 0.0 && n < max_level) {
      const auto& l = trace.levels;
      const std::size_t c = l.size() - 1;
      bool stalled = true;
      for (std::size_t i = c - 1; i < c + 1; ++i) {
        stalled = stalled && std::fabs(l[i].max_value - l[i - 1].max_value) < stall_tol &&
                  std::fabs(l[i].min_value - l[i - 1].min_value) < stall_tol;
      }
      if (stalled) {
        trace.stopped_early = true;
        break;
      }
    }
  }
  return trace;
}

/// sup f <= M_n + w(mesh_n): every point has a net point within one mesh.
/// Records w(mesh_n) as the level's certified gap.
inline double certified_max_bound(const RealFunction& f, RefinementTrace& trace, int level,
                                  std::size_t modulus_resolution) {
  LevelRecord* rec = trace.find(level);
  if (!rec) throw precondition_violated("level " + std::to_string(level) + " not in trace");
  const double w = modulus_of_continuity(f, rec->mesh, modulus_resolution);
  rec->certified_gap = w;
  return rec->max_value + w;
}

/// Mirror image: inf f >= m_n - w(mesh_n).
inline double certified_min_bound(const RealFunction& f, RefinementTrace& trace, int level,
                                  std::size_t modulus_resolution) {
  LevelRecord* rec = trace.find(level);
  if (!rec) throw precondition_violated("level " + std::to_string(level) + " not in trace");
  const double w = modulus_of_continuity(f, rec->mesh, modulus_resolution);
  rec->certified_gap = w;
  return rec->min_value - w;
}

struct EnvelopePoint {
  double x;
  double g;
};

/// Running maximum g(x_i) = max f(x_0..x_i) on the uniform grid; a grid
/// lower bound of g(x) = sup f([a, x]).
inline std::vector<EnvelopePoint> envelope(const RealFunction& f, std::size_t resolution) {
  const auto xs = uniform_grid(f.domain(), resolution);
  std::vector<EnvelopePoint> out;
  out.reserve(xs.size());
  double g = -std::numeric_limits<double>::infinity();
  for (double x : xs) {
    g = std::max(g, f(x));
    out.push_back({x, g});
  }
  return out;
}

/// Smallest grid x with g(x) >= g(b) - value_tol: the grid version of
/// x_0 = inf{ x : g(x) = g(b) }. This is the leftmost maximiser.
inline double first_maximizer(const RealFunction& f, std::size_t resolution, double value_tol = 0.0) {
  if (!(value_tol >= 0.0)) throw precondition_violated("value tolerance must be nonnegative");
  const auto g = envelope(f, resolution);
  const double top = g.back().g;
  for (const auto& p : g) {
    if (p.g >= top - value_tol) return p.x;
  }
  return g.back().x;
}

}  // namespace unicont
