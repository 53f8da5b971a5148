#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unicont/extremum.hpp"
#include "unicont/function.hpp"
#include "unicont/target_set.hpp"

namespace unicont {

struct BisectionStep {
  int k;
  double a;         ///< bracket lower end before the step
  double b;         ///< bracket upper end before the step
  double midpoint;  ///< a + (b - a) / 2
  double value;     ///< f(midpoint)
  Region region;    ///< classification of f(midpoint)
};

/// Bracket history of a bisection against a target set D. The end recorded
/// by `inside_at_lo` maps into D and the other end maps outside D at every
/// step. After n halvings the bracket width is (b - a) 2^-n.
struct BisectionTrace {
  double initial_lo;
  double initial_hi;
  bool inside_at_lo;
  std::vector<BisectionStep> steps;
  double final_lo;
  double final_hi;
  int completed_steps = 0;
  double error_bound;
  std::optional<double> boundary_point;  ///< set when some f(x) was classified boundary

  double midpoint() const { return final_lo + (final_hi - final_lo) / 2.0; }
  /// Best single estimate: the boundary hit if any, else the bracket midpoint.
  double estimate() const { return boundary_point.value_or(midpoint()); }
};

/// Bisection towards the boundary of D. Requires f(lo) and f(hi) to differ in
/// D-membership (openness flags count). A value classified as boundary,
/// within boundary_tol, ends the run at that point; otherwise the run makes
/// `steps` halvings and returns the bracket.
///
/// Continuity of f is not needed, only that the preimages of Int(D) and
/// Ext(D) be open, and that hypothesis is not (cannot be) checked here.
template <class F>
BisectionTrace bisect_boundary(F&& f, const Interval& domain, const TargetSet& target, int steps,
                               double boundary_tol = 0.0) {
  if (steps < 1) throw precondition_violated("bisection needs at least one step");
  if (!(boundary_tol >= 0.0)) throw precondition_violated("boundary tolerance must be nonnegative");
  if (domain.degenerate()) throw precondition_violated("bisection needs a nondegenerate interval");

  double lo = domain.lo();
  double hi = domain.hi();
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  BisectionTrace trace{lo, hi, true, {}, lo, hi, 0, domain.width(), std::nullopt};

  if (target.classify(f_lo, boundary_tol) == Region::boundary) {
    trace.boundary_point = lo;
    return trace;
  }
  if (target.classify(f_hi, boundary_tol) == Region::boundary) {
    trace.boundary_point = hi;
    return trace;
  }
  const bool in_lo = target.contains(f_lo);
  const bool in_hi = target.contains(f_hi);
  if (in_lo == in_hi) {
    throw precondition_violated("f(a) = " + format_number(f_lo) + " and f(b) = " + format_number(f_hi) +
                                " are both " + (in_lo ? "in " : "outside ") + target.to_string());
  }
  trace.inside_at_lo = in_lo;

  for (int k = 0; k < steps; ++k) {
    const double mid = lo + (hi - lo) / 2.0;
    const double value = f(mid);
    const Region region = target.classify(value, boundary_tol);
    trace.steps.push_back({k, lo, hi, mid, value, region});
    if (region == Region::boundary) {
      trace.boundary_point = mid;
      break;
    }
    // Keep the half whose ends still straddle D.
    if (target.contains(value) == trace.inside_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++trace.completed_steps;
  }
  trace.final_lo = lo;
  trace.final_hi = hi;
  trace.error_bound = std::ldexp(domain.width(), -trace.completed_steps);
  return trace;
}

inline BisectionTrace bisect_boundary(const RealFunction& f, const TargetSet& target, int steps,
                                      double boundary_tol = 0.0) {
  return bisect_boundary(f, f.domain(), target, steps, boundary_tol);
}

/// Classical intermediate value search for f(x) = c, run as a boundary
/// search for D = (-inf, c).
inline BisectionTrace classical_ivt(const RealFunction& f, double c, int steps) {
  const double fa = f(f.domain().lo());
  const double fb = f(f.domain().hi());
  if (!(std::min(fa, fb) < c && c < std::max(fa, fb))) {
    throw precondition_violated("c = " + format_number(c) + " is not strictly between f(a) = " +
                                format_number(fa) + " and f(b) = " + format_number(fb));
  }
  return bisect_boundary(f, TargetSet::below(c), steps, 0.0);
}

struct FixedPointResult {
  std::optional<double> endpoint;        ///< a or b when it is (numerically) fixed
  std::optional<BisectionTrace> trace;   ///< otherwise the bracket for g(x) = f(x) - x
};

inline constexpr int kSelfMapCheckLevel = 10;

/// Fixed point of a self-map of [a, b], continuous or not, through the
/// boundary search for g(x) = f(x) - x against D = (0, inf). The self-map
/// property is checked on the dyadic net of level 10 only.
inline FixedPointResult fixed_point(const RealFunction& f, int steps, double endpoint_tol = 0.0) {
  if (!(endpoint_tol >= 0.0)) throw precondition_violated("endpoint tolerance must be nonnegative");
  const Interval& dom = f.domain();
  const double tol = dom.tolerance();
  for (double x : dyadic_net(dom, kSelfMapCheckLevel).points) {
    const double fx = f(x);
    if (!dom.contains(fx, tol)) {
      throw not_self_map(x, fx, "f(" + format_number(x) + ") = " + format_number(fx) + " leaves [" +
                                    format_number(dom.lo()) + ", " + format_number(dom.hi()) + "]");
    }
  }
  const double a = dom.lo();
  const double b = dom.hi();
  if (std::fabs(f(a) - a) <= endpoint_tol) return {a, std::nullopt};
  if (std::fabs(f(b) - b) <= endpoint_tol) return {b, std::nullopt};
  auto g = [&f](double x) { return f(x) - x; };
  return {std::nullopt, bisect_boundary(g, dom, TargetSet::above(0.0), steps, 0.0)};
}

}  // namespace unicont
