#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "unicont/expression.hpp"
#include "unicont/interval.hpp"
#include "unicont/text.hpp"

namespace unicont {

/// x^alpha on [0, b].
struct PowerFamily {
  double alpha;
  double b;
};

/// The decreasing chainsaw on [0, 1]: f(0) = 0 and, on [1/(n+1), 1/n],
///   1/(n+1) - (2n+1)(t - 1/(n+1))   for t in [1/(n+1), 2/(2n+1)]
///   (2n+1)(t - 2/(2n+1))            for t in [2/(2n+1), 1/n]
/// Peaks of height 1/n at t = 1/n, zeros at t = 2/(2n+1).
struct Chainsaw {};

/// c0 + c1 x + c2 x^2 + ...
struct Polynomial {
  std::vector<double> coefficients;
};

/// Linear interpolation through (x, y) breakpoints with non-decreasing x.
/// Two breakpoints may share an abscissa; that encodes a jump, and the
/// function takes the later (right-hand) value at the jump point.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> breakpoints;
};

struct ExpressionRule {
  Expression expression;
};

using Rule = std::variant<PowerFamily, Chainsaw, Polynomial, PiecewiseLinear, ExpressionRule>;

/// A real function on a compact interval. Immutable; evaluation is pure.
class RealFunction {
public:
  static RealFunction power(double alpha, double b) {
    if (!(alpha > 0.0) || !(b > 0.0) || !std::isfinite(alpha) || !std::isfinite(b)) {
      throw precondition_violated("power family needs alpha > 0 and b > 0");
    }
    return RealFunction(Interval(0.0, b), PowerFamily{alpha, b});
  }

  static RealFunction chainsaw() { return RealFunction(Interval(0.0, 1.0), Chainsaw{}); }

  static RealFunction polynomial(std::vector<double> coefficients, Interval domain = {0.0, 1.0}) {
    if (coefficients.empty()) throw precondition_violated("polynomial needs a coefficient");
    return RealFunction(domain, Polynomial{std::move(coefficients)});
  }

  static RealFunction piecewise_linear(std::vector<std::pair<double, double>> breakpoints) {
    if (breakpoints.size() < 2) throw precondition_violated("pwl needs at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
      if (breakpoints[i].first < breakpoints[i - 1].first) {
        throw precondition_violated("pwl abscissae must be non-decreasing");
      }
      if (i >= 2 && breakpoints[i].first == breakpoints[i - 2].first) {
        throw precondition_violated("pwl allows at most two breakpoints per abscissa");
      }
    }
    if (breakpoints.front().first == breakpoints.back().first) {
      throw precondition_violated("pwl needs a nondegenerate domain");
    }
    Interval domain(breakpoints.front().first, breakpoints.back().first);
    return RealFunction(domain, PiecewiseLinear{std::move(breakpoints)});
  }

  static RealFunction expression(Expression e, Interval domain) {
    return RealFunction(domain, ExpressionRule{std::move(e)});
  }

  const Interval& domain() const noexcept { return domain_; }
  const Rule& rule() const noexcept { return rule_; }

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(rule_);
  }

  /// Same rule on another domain. Only polynomials and expressions carry a
  /// free domain; the other families fix theirs.
  RealFunction with_domain(Interval domain) const {
    if (!is<Polynomial>() && !is<ExpressionRule>()) {
      if (domain == domain_) return *this;
      throw precondition_violated("only poly and expr functions accept a custom domain");
    }
    return RealFunction(domain, rule_);
  }

  /// f(x). Points within 2^-40 of the domain width outside the domain are
  /// clamped onto it; anything further raises domain_error, as does a
  /// non-finite result.
  double operator()(double x) const {
    const double tol = domain_.tolerance();
    if (!domain_.contains(x, tol) || std::isnan(x)) {
      throw domain_error("x = " + format_number(x) + " outside domain [" +
                         format_number(domain_.lo()) + ", " + format_number(domain_.hi()) + "]");
    }
    x = std::clamp(x, domain_.lo(), domain_.hi());
    const double y = std::visit([x](const auto& r) { return apply(r, x); }, rule_);
    if (!std::isfinite(y)) {
      throw domain_error("non-finite value at x = " + format_number(x));
    }
    return y;
  }

  /// Abscissae where the rule has kinks or jumps, restricted to the domain.
  /// The chainsaw has infinitely many; only those of the first `chainsaw_teeth`
  /// teeth (t >= 1/(n+1)) are listed.
  std::vector<double> breakpoints(std::size_t chainsaw_teeth) const {
    std::vector<double> out;
    if (const auto* p = std::get_if<PiecewiseLinear>(&rule_)) {
      for (const auto& bp : p->breakpoints) out.push_back(bp.first);
    } else if (is<Chainsaw>()) {
      out.push_back(0.0);
      for (std::size_t n = 1; n <= chainsaw_teeth; ++n) {
        const double nd = static_cast<double>(n);
        out.push_back(1.0 / nd);
        out.push_back(2.0 / (2.0 * nd + 1.0));
      }
      out.push_back(1.0 / static_cast<double>(chainsaw_teeth + 1));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Canonical text in the function grammar; numbers carry 17 significant digits.
  std::string to_string() const {
    return std::visit([this](const auto& r) { return print(r); }, rule_);
  }

private:
  RealFunction(Interval domain, Rule rule) : domain_(domain), rule_(std::move(rule)) {}

  static double apply(const PowerFamily& p, double x) { return std::pow(x, p.alpha); }

  static double apply(const Chainsaw&, double t) {
    if (t <= 0.0) return 0.0;
    // Tooth n covers [1/(n+1), 1/n]. floor(1/t) can be one off at a tooth
    // boundary, so nudge n until 1/(n+1) <= t < 1/n (t = 1 stays on tooth 1).
    double n = std::max(1.0, std::floor(1.0 / t));
    while (n > 1.0 && t >= 1.0 / n) n -= 1.0;
    while (t < 1.0 / (n + 1.0)) n += 1.0;
    const double left = 1.0 / (n + 1.0);
    const double zero = 2.0 / (2.0 * n + 1.0);
    const double slope = 2.0 * n + 1.0;
    if (t < zero) return left - slope * (t - left);
    return slope * (t - zero);
  }

  static double apply(const Polynomial& p, double x) {
    double acc = 0.0;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  static double apply(const PiecewiseLinear& p, double x) {
    const auto& bps = p.breakpoints;
    // Last breakpoint with abscissa <= x; at a jump this is the right-hand one.
    auto it = std::upper_bound(bps.begin(), bps.end(), x,
                               [](double v, const auto& bp) { return v < bp.first; });
    if (it == bps.begin()) return bps.front().second;
    if (it == bps.end()) return bps.back().second;
    const auto& [x0, y0] = *(it - 1);
    const auto& [x1, y1] = *it;
    return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
  }

  static double apply(const ExpressionRule& e, double x) { return e.expression(x); }

  std::string domain_suffix() const {
    if (domain_ == Interval(0.0, 1.0)) return "";
    return ",lo=" + format_number(domain_.lo()) + ",hi=" + format_number(domain_.hi());
  }

  std::string print(const PowerFamily& p) const {
    return "power(alpha=" + format_number(p.alpha) + ",b=" + format_number(p.b) + ")";
  }
  std::string print(const Chainsaw&) const { return "chainsaw"; }
  std::string print(const Polynomial& p) const {
    std::string out = "poly(";
    for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
      if (i) out += ',';
      out += format_number(p.coefficients[i]);
    }
    return out + domain_suffix() + ")";
  }
  std::string print(const PiecewiseLinear& p) const {
    std::string out = "pwl(";
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
      if (i) out += ',';
      out += "(" + format_number(p.breakpoints[i].first) + "," +
             format_number(p.breakpoints[i].second) + ")";
    }
    return out + ")";
  }
  std::string print(const ExpressionRule& e) const {
    return "expr(" + e.expression.to_string() + ",lo=" + format_number(domain_.lo()) +
           ",hi=" + format_number(domain_.hi()) + ")";
  }

  Interval domain_;
  Rule rule_;
};

namespace detail {

inline Interval parse_domain_keywords(Scanner& in) {
  in.expect_keyword("lo");
  in.expect('=');
  const double lo = in.number();
  in.expect(',');
  in.expect_keyword("hi");
  in.expect('=');
  const double hi = in.number();
  if (!(lo < hi)) in.fail("expected lo < hi");
  return Interval(lo, hi);
}

inline RealFunction parse_function(Scanner& in) {
  const std::size_t start = in.position();
  const std::string_view name = in.identifier();
  if (name == "chainsaw") return RealFunction::chainsaw();
  if (name == "power") {
    in.expect('(');
    in.expect_keyword("alpha");
    in.expect('=');
    const double alpha = in.number();
    in.expect(',');
    in.expect_keyword("b");
    in.expect('=');
    const double b = in.number();
    in.expect(')');
    if (!(alpha > 0.0) || !(b > 0.0)) in.fail("power needs alpha > 0 and b > 0");
    return RealFunction::power(alpha, b);
  }
  if (name == "poly") {
    in.expect('(');
    std::vector<double> coefficients{in.number()};
    Interval domain(0.0, 1.0);
    while (in.accept(',')) {
      if (std::isalpha(static_cast<unsigned char>(in.peek()))) {
        domain = parse_domain_keywords(in);
        break;
      }
      coefficients.push_back(in.number());
    }
    in.expect(')');
    return RealFunction::polynomial(std::move(coefficients), domain);
  }
  if (name == "pwl") {
    in.expect('(');
    std::vector<std::pair<double, double>> bps;
    do {
      in.expect('(');
      const double x = in.number();
      in.expect(',');
      const double y = in.number();
      in.expect(')');
      if (!bps.empty() && x < bps.back().first) in.fail("pwl abscissae must be non-decreasing");
      if (bps.size() >= 2 && x == bps[bps.size() - 2].first) {
        in.fail("pwl allows at most two breakpoints per abscissa");
      }
      bps.emplace_back(x, y);
    } while (in.accept(','));
    in.expect(')');
    if (bps.size() < 2 || bps.front().first == bps.back().first) {
      in.fail("pwl needs two breakpoints spanning a nondegenerate interval");
    }
    return RealFunction::piecewise_linear(std::move(bps));
  }
  if (name == "expr") {
    in.expect('(');
    Expression e = Expression::parse(in);
    in.expect(',');
    const Interval domain = parse_domain_keywords(in);
    in.expect(')');
    return RealFunction::expression(std::move(e), domain);
  }
  throw parse_error(start, "expected power, chainsaw, poly, pwl or expr");
}

}  // namespace detail

/// Parses the function mini-language:
///   power(alpha=<r>,b=<r>) | chainsaw | poly(<r>{,<r>}[,lo=<r>,hi=<r>])
///   | pwl((<r>,<r>){,(<r>,<r>)}) | expr(<expression>,lo=<r>,hi=<r>)
inline RealFunction parse_function(std::string_view text) {
  detail::Scanner in(text);
  RealFunction f = detail::parse_function(in);
  if (!in.at_end()) in.fail("unexpected trailing input");
  return f;
}

/// Grid minimum and maximum of f.
struct RangeBounds {
  double low;
  double high;
  double spread() const noexcept { return high - low; }
};

/// Min and max of f over the uniform grid of `resolution` points on its domain.
inline RangeBounds range_bounds(const RealFunction& f, std::size_t resolution) {
  const auto xs = uniform_grid(f.domain(), resolution);
  RangeBounds r{f(xs.front()), f(xs.front())};
  for (double x : xs) {
    const double y = f(x);
    r.low = std::min(r.low, y);
    r.high = std::max(r.high, y);
  }
  return r;
}

/// The point set used by pair scans: the uniform grid of `resolution` points
/// merged with the rule's breakpoints. For the chainsaw, teeth are listed
/// while they stay wider than about one grid step (n <= sqrt(resolution)).
inline std::vector<double> sample_points(const RealFunction& f, const Interval& window,
                                         std::size_t resolution) {
  std::vector<double> xs = uniform_grid(window, resolution);
  const auto teeth = static_cast<std::size_t>(std::sqrt(static_cast<double>(resolution)));
  for (double b : f.breakpoints(teeth)) {
    if (window.contains(b)) xs.push_back(b);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline std::vector<double> sample_points(const RealFunction& f, std::size_t resolution) {
  return sample_points(f, f.domain(), resolution);
}

}  // namespace unicont
