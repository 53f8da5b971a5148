#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unicont/finite_space.hpp"
#include "unicont/function.hpp"

namespace unicont {

enum class Method { closed_form, grid, exhaustive };
enum class Bias { exact, upper_bound };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::grid: return "grid";
    case Method::exhaustive: return "exhaustive";
  }
  return "?";
}

inline std::string_view to_string(Bias b) { return b == Bias::exact ? "exact" : "upper_bound"; }

/// Two inputs and their values.
struct PairWitness {
  double x;
  double y;
  double fx;
  double fy;
};

/// One value of delta(eps) = inf{ |x - y| : |f(x) - f(y)| >= eps }.
/// Grid samples minimise over a subset of the level set, so they can only
/// overshoot: method grid always comes with bias upper_bound.
struct DeltaSample {
  double epsilon;
  double delta;
  Method method;
  Bias bias;
  std::optional<PairWitness> witness;
};

struct DeltaProfile {
  std::string function_id;
  double M_estimate;
  std::vector<DeltaSample> samples;
};

struct GridConfig {
  std::size_t resolution = 4096;
  std::size_t refine_rounds = 2;
  double zoom_factor = 2.0;

  void validate() const {
    if (resolution < 2) throw precondition_violated("grid resolution must be at least 2");
    if (!(zoom_factor >= 2.0) || !std::isfinite(zoom_factor)) {
      throw precondition_violated("zoom factor must be at least 2");
    }
  }
};

struct VerificationReport {
  double epsilon;
  double delta_claimed;
  bool valid;
  bool maximal;
  std::optional<PairWitness> violation;  ///< pair closer than the claim that reaches eps
  std::optional<PairWitness> tight_pair; ///< pair reaching eps within the maximality margin
};

/// Relative margin for "strictly closer than" tests on computed distances.
inline constexpr double kRoundingSlack = 8.0 * std::numeric_limits<double>::epsilon();
/// Cap on window re-centring moves per zoom round.
inline constexpr int kMaxWindowWalks = 64;
/// Relative margin within which a witness pair counts as realising the claimed delta.
inline constexpr double kMaximalityMargin = 1e-3;

namespace detail {

inline bool reaches_gap(double fx, double fy, double epsilon) { return std::fabs(fx - fy) >= epsilon; }

struct PairHit {
  std::size_t i;
  std::size_t j;
  double distance;
};

/// Closest pair of sorted points whose values differ by at least epsilon.
/// Ties go to the lexicographically smallest (i, j).
inline std::optional<PairHit> closest_gap_pair(std::span<const double> xs, std::span<const double> fs,
                                               double epsilon) {
  std::optional<PairHit> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double d = xs[j] - xs[i];
      if (d >= best_distance) break;
      if (reaches_gap(fs[i], fs[j], epsilon)) {
        best_distance = d;
        best = PairHit{i, j, d};
        break;
      }
    }
  }
  return best;
}

inline std::vector<double> evaluate_all(const RealFunction& f, std::span<const double> xs) {
  std::vector<double> fs(xs.size());
  std::transform(xs.begin(), xs.end(), fs.begin(), [&f](double x) { return f(x); });
  return fs;
}

inline void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw precondition_violated("epsilon must be positive and finite");
  }
}

}  // namespace detail

/// delta(eps) by brute force over the function's sample points, then
/// `refine_rounds` rounds of local zoom: each round lays `resolution` points
/// on a window of half-width zoom_factor * (previous step) around each end
/// of the best pair and re-minimises. Every evaluated pair is a genuine pair
/// of the domain, so the result is an upper bound on delta(eps).
inline DeltaSample optimal_delta_grid(const RealFunction& f, double epsilon, const GridConfig& cfg = {}) {
  detail::check_epsilon(epsilon);
  cfg.validate();
  const auto xs = sample_points(f, cfg.resolution);
  const auto fs = detail::evaluate_all(f, xs);
  const auto [lo_it, hi_it] = std::minmax_element(fs.begin(), fs.end());
  const double spread = *hi_it - *lo_it;
  if (epsilon > spread) {
    throw empty_level_set("epsilon = " + format_number(epsilon) +
                          " exceeds the grid range spread M ~ " + format_number(spread) +
                          "; the level set is empty");
  }
  const auto hit = detail::closest_gap_pair(xs, fs, epsilon);
  if (!hit) {
    throw empty_level_set("no grid pair reaches gap " + format_number(epsilon) +
                          " although the grid spread is " + format_number(spread) +
                          "; resolution too coarse");
  }

  PairWitness best{xs[hit->i], xs[hit->j], fs[hit->i], fs[hit->j]};
  double best_distance = hit->distance;
  double step = f.domain().width() / static_cast<double>(cfg.resolution - 1);
  const Interval& dom = f.domain();

  for (std::size_t round = 0; round < cfg.refine_rounds; ++round) {
    const double half = cfg.zoom_factor * step;
    const double fine = 2.0 * half / static_cast<double>(cfg.resolution - 1);
    auto window = [&](double c) {
      return Interval(std::max(dom.lo(), c - half), std::min(dom.hi(), c + half));
    };
    // The optimum can lie along a flat valley far from the coarse winner, so
    // the windows follow the best pair while it keeps landing on an inner
    // window edge, then the next round zooms in.
    for (int walk = 0; walk < kMaxWindowWalks; ++walk) {
      const Interval wx = window(best.x);
      const Interval wy = window(best.y);
      std::vector<double> pts = sample_points(f, wx, cfg.resolution);
      const auto around_y = sample_points(f, wy, cfg.resolution);
      pts.insert(pts.end(), around_y.begin(), around_y.end());
      pts.push_back(best.x);
      pts.push_back(best.y);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      const auto vals = detail::evaluate_all(f, pts);
      const auto local = detail::closest_gap_pair(pts, vals, epsilon);
      if (!local || !(local->distance < best_distance)) break;
      best = PairWitness{pts[local->i], pts[local->j], vals[local->i], vals[local->j]};
      best_distance = local->distance;
      // The two window grids are independent, so the best corner pair can sit
      // a few points inside the edge; an eighth of the half-width is the band.
      const double band = half / 8.0;
      auto on_inner_edge = [&](double p, const Interval& w) {
        return (w.lo() > dom.lo() && p - w.lo() < band) ||
               (w.hi() < dom.hi() && w.hi() - p < band);
      };
      if (!on_inner_edge(best.x, wx) && !on_inner_edge(best.y, wy)) break;
    }
    step = fine;
  }
  return DeltaSample{epsilon, best_distance, Method::grid, Bias::upper_bound, best};
}

/// Exact delta(eps) for the families with a known formula:
///   power:    b - (b^alpha - eps)^(1/alpha) for alpha >= 1, eps^(1/alpha) for alpha <= 1
///   chainsaw: 1/(n(2n+1)) at eps = 1/n
inline DeltaSample optimal_delta_closed_form(const RealFunction& f, double epsilon) {
  detail::check_epsilon(epsilon);
  if (const auto* p = std::get_if<PowerFamily>(&f.rule())) {
    const double range = std::pow(p->b, p->alpha);
    if (!(epsilon < range)) {
      throw out_of_range("power family needs epsilon < b^alpha = " + format_number(range));
    }
    const double delta = p->alpha >= 1.0 ? p->b - std::pow(range - epsilon, 1.0 / p->alpha)
                                         : std::pow(epsilon, 1.0 / p->alpha);
    return DeltaSample{epsilon, delta, Method::closed_form, Bias::exact, std::nullopt};
  }
  if (f.is<Chainsaw>()) {
    const double n = std::round(1.0 / epsilon);
    if (n < 1.0 || std::fabs(epsilon * n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
      throw out_of_range("chainsaw closed form exists only at epsilon = 1/n");
    }
    return DeltaSample{epsilon, 1.0 / (n * (2.0 * n + 1.0)), Method::closed_form, Bias::exact,
                       std::nullopt};
  }
  throw unsupported_family("no closed form for " + f.to_string());
}

inline bool has_closed_form(const RealFunction& f, double epsilon) {
  try {
    optimal_delta_closed_form(f, epsilon);
    return true;
  } catch (const unsupported_family&) {
    return false;
  } catch (const out_of_range&) {
    return false;
  }
}

/// Exact delta(eps) on a finite space by exhaustive pair scan.
inline DeltaSample optimal_delta_finite(const FiniteMetricSpace& space, double epsilon) {
  detail::check_epsilon(epsilon);
  std::optional<PairWitness> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (detail::reaches_gap(space.value(i), space.value(j), epsilon) &&
          space.distance(i, j) < best_distance) {
        best_distance = space.distance(i, j);
        // x, y carry point indices here; the space has no coordinates.
        best = PairWitness{static_cast<double>(i), static_cast<double>(j), space.value(i),
                           space.value(j)};
      }
    }
  }
  if (!best) {
    throw empty_level_set("no pair of the space has value gap >= " + format_number(epsilon));
  }
  return DeltaSample{epsilon, best_distance, Method::exhaustive, Bias::exact, best};
}

/// w(delta) = max |f(x) - f(y)| over sample-point pairs with |x - y| <= delta.
/// A lower bound on the true modulus.
inline double modulus_of_continuity(const RealFunction& f, double delta, std::size_t resolution) {
  if (!(delta >= 0.0) || std::isnan(delta)) throw precondition_violated("delta must be nonnegative");
  const auto xs = sample_points(f, resolution);
  const auto fs = detail::evaluate_all(f, xs);
  double w = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size() && xs[j] - xs[i] <= delta; ++j) {
      w = std::max(w, std::fabs(fs[j] - fs[i]));
    }
  }
  return w;
}

/// One sample per epsilon, closed form where the family has one and grid
/// search otherwise, sorted by epsilon.
inline DeltaProfile build_profile(const RealFunction& f, std::vector<double> epsilons,
                                  const GridConfig& cfg = {}) {
  if (epsilons.empty()) throw precondition_violated("profile needs at least one epsilon");
  cfg.validate();
  const double spread = range_bounds(f, cfg.resolution).spread();
  if (!(spread > 0.0)) {
    throw empty_level_set("range spread of " + f.to_string() +
                          " is 0 on the grid; every epsilon is out of range");
  }
  std::sort(epsilons.begin(), epsilons.end());
  DeltaProfile profile{f.to_string(), spread, {}};
  for (double eps : epsilons) {
    detail::check_epsilon(eps);
    try {
      if (eps > spread) {
        throw empty_level_set("exceeds the range spread M ~ " + format_number(spread));
      }
      profile.samples.push_back(has_closed_form(f, eps) ? optimal_delta_closed_form(f, eps)
                                                        : optimal_delta_grid(f, eps, cfg));
    } catch (const empty_level_set& e) {
      throw empty_level_set("epsilon = " + format_number(eps) + ": " + e.what());
    }
  }
  return profile;
}

/// Checks a claimed delta against the sample points: `valid` when no pair
/// closer than the claim reaches eps, `maximal` when some pair within a
/// relative 1e-3 above the claim does.
inline VerificationReport verify_largest_delta(const RealFunction& f, double epsilon,
                                               double delta_claimed, std::size_t resolution) {
  detail::check_epsilon(epsilon);
  if (!(delta_claimed > 0.0)) throw precondition_violated("claimed delta must be positive");
  const auto xs = sample_points(f, resolution);
  const auto fs = detail::evaluate_all(f, xs);
  VerificationReport report{epsilon, delta_claimed, true, false, std::nullopt, std::nullopt};
  const auto hit = detail::closest_gap_pair(xs, fs, epsilon);
  if (!hit) return report;
  const PairWitness w{xs[hit->i], xs[hit->j], fs[hit->i], fs[hit->j]};
  if (hit->distance < delta_claimed * (1.0 - kRoundingSlack)) {
    report.valid = false;
    report.violation = w;
  }
  if (hit->distance < delta_claimed * (1.0 + kMaximalityMargin)) {
    report.maximal = true;
    report.tight_pair = w;
  }
  return report;
}

}  // namespace unicont
