#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "unicont/errors.hpp"

namespace unicont {

/// `%.<digits>g` formatting; infinities print as inf / -inf.
inline std::string format_number(double v, int digits = 17) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace detail {

/// Hand-rolled scanner shared by the function and target-set grammars.
class Scanner {
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t position() const noexcept { return pos_; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  /// Letters, digits and underscores starting with a letter; empty if none.
  std::string_view identifier() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void expect_keyword(std::string_view word) {
    const std::size_t start = pos_;
    if (identifier() != word) {
      pos_ = start;
      fail("expected '" + std::string(word) + "'");
    }
  }

  /// Signed decimal literal. `allow_inf` also admits inf, +inf, -inf.
  double number(bool allow_inf = false) {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (allow_inf && text_.substr(pos_, 3) == "inf") {
      pos_ += 3;
      const double inf = std::numeric_limits<double>::infinity();
      return negative ? -inf : inf;
    }
    if (pos_ >= text_.size() ||
        !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      pos_ = start;
      fail("expected a number");
    }
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr == first || !std::isfinite(value)) {
      pos_ = start;
      fail("expected a number");
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return negative ? -value : value;
  }

  [[noreturn]] void fail(const std::string& message) const { throw parse_error(pos_, message); }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail
}  // namespace unicont
