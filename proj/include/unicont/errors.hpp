#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unicont {

/// Root of every error the library raises on purpose.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside a function's domain, or a non-finite value inside it.
class domain_error : public error {
public:
  using error::error;
};

/// Malformed function or target-set text.
class parse_error : public error {
public:
  parse_error(std::size_t position, const std::string& message)
      : error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// No pair reaches the requested output gap (the level set A_eps is empty).
class empty_level_set : public error {
public:
  using error::error;
};

class unsupported_family : public error {
public:
  using error::error;
};

class out_of_range : public error {
public:
  using error::error;
};

class level_too_large : public error {
public:
  using error::error;
};

class precondition_violated : public error {
public:
  using error::error;
};

/// The function leaves [a, b] somewhere; carries the offending point.
class not_self_map : public error {
public:
  not_self_map(double x, double fx, const std::string& message)
      : error(message), x_(x), fx_(fx) {}

  double x() const noexcept { return x_; }
  double fx() const noexcept { return fx_; }

private:
  double x_;
  double fx_;
};

}  // namespace unicont
