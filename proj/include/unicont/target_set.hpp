#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "unicont/text.hpp"

namespace unicont {

enum class Region { interior, boundary, exterior };

inline std::string_view to_string(Region r) {
  switch (r) {
    case Region::interior: return "interior";
    case Region::boundary: return "boundary";
    case Region::exterior: return "exterior";
  }
  return "?";
}

/// One interval of a target set; infinite ends are always open.
struct Piece {
  double lo;
  double hi;
  bool lo_open;
  bool hi_open;

  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
  bool contains(double y) const {
    return (lo_open ? y > lo : y >= lo) && (hi_open ? y < hi : y <= hi);
  }
};

/// Finite union of intervals, kept sorted, disjoint and non-mergeable.
class TargetSet {
public:
  explicit TargetSet(std::vector<Piece> pieces) {
    for (auto& p : pieces) {
      if (std::isnan(p.lo) || std::isnan(p.hi)) throw precondition_violated("NaN endpoint");
      if (std::isinf(p.lo)) p.lo_open = true;
      if (std::isinf(p.hi)) p.hi_open = true;
    }
    std::erase_if(pieces, [](const Piece& p) { return p.empty(); });
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return !a.lo_open && b.lo_open;
    });
    for (const auto& p : pieces) {
      if (!pieces_.empty() && touches(pieces_.back(), p)) {
        Piece& last = pieces_.back();
        if (p.hi > last.hi) {
          last.hi = p.hi;
          last.hi_open = p.hi_open;
        } else if (p.hi == last.hi) {
          last.hi_open = last.hi_open && p.hi_open;
        }
      } else {
        pieces_.push_back(p);
      }
    }
  }

  /// (-inf, c)
  static TargetSet below(double c) {
    return TargetSet({Piece{-std::numeric_limits<double>::infinity(), c, true, true}});
  }
  /// (c, inf)
  static TargetSet above(double c) {
    return TargetSet({Piece{c, std::numeric_limits<double>::infinity(), true, true}});
  }

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  /// Set membership, honouring the openness flags.
  bool contains(double y) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [y](const Piece& p) { return p.contains(y); });
  }

  /// The finite endpoints, sorted and deduplicated. This is the boundary.
  std::vector<double> boundary() const {
    std::vector<double> out;
    for (const auto& p : pieces_) {
      if (std::isfinite(p.lo)) out.push_back(p.lo);
      if (std::isfinite(p.hi)) out.push_back(p.hi);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// boundary if within boundary_tol of an endpoint, interior if strictly
  /// inside a piece, exterior otherwise. Openness flags play no part.
  Region classify(double y, double boundary_tol = 0.0) const {
    for (double e : boundary()) {
      if (std::fabs(y - e) <= boundary_tol) return Region::boundary;
    }
    for (const auto& p : pieces_) {
      if (y > p.lo && y < p.hi) return Region::interior;
    }
    return Region::exterior;
  }

  /// Text form, e.g. "(-inf,0)" or "[0,1]u(2,3)"; "{}" for the empty set.
  std::string to_string() const {
    if (pieces_.empty()) return "{}";
    std::string out;
    for (const auto& p : pieces_) {
      if (!out.empty()) out += 'u';
      out += p.lo_open ? '(' : '[';
      out += format_number(p.lo) + "," + format_number(p.hi);
      out += p.hi_open ? ')' : ']';
    }
    return out;
  }

private:
  // Union of a and b (b.lo >= a.lo) is a single interval.
  static bool touches(const Piece& a, const Piece& b) {
    if (b.lo < a.hi) return true;
    return b.lo == a.hi && (!a.hi_open || !b.lo_open);
  }

  std::vector<Piece> pieces_;
};

/// Parses `(-inf,0)`, `[0,1]`, `(0,1)u(2,3)`; `u` or `U` joins pieces.
inline TargetSet parse_target_set(std::string_view text) {
  detail::Scanner in(text);
  std::vector<Piece> pieces;
  do {
    Piece p{};
    if (in.accept('(')) {
      p.lo_open = true;
    } else if (in.accept('[')) {
      p.lo_open = false;
    } else {
      in.fail("expected '(' or '['");
    }
    p.lo = in.number(true);
    if (p.lo == std::numeric_limits<double>::infinity()) in.fail("lower endpoint cannot be +inf");
    if (std::isinf(p.lo) && !p.lo_open) in.fail("infinite endpoint must be open");
    in.expect(',');
    p.hi = in.number(true);
    if (p.hi == -std::numeric_limits<double>::infinity()) in.fail("upper endpoint cannot be -inf");
    if (in.accept(')')) {
      p.hi_open = true;
    } else if (in.accept(']')) {
      if (std::isinf(p.hi)) in.fail("infinite endpoint must be open");
      p.hi_open = false;
    } else {
      in.fail("expected ')' or ']'");
    }
    if (p.lo > p.hi) in.fail("interval has lo > hi");
    pieces.push_back(p);
  } while (in.accept('u') || in.accept('U'));
  if (!in.at_end()) in.fail("expected 'u' or end of input");
  return TargetSet(std::move(pieces));
}

}  // namespace unicont
