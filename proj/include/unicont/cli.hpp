#pragma once

// Command-line front end. `run` is the whole program minus process plumbing,
// so tests can drive it with string streams.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unicont/serialize.hpp"

namespace unicont::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageFailure = 2;

struct CommandInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> operations;  ///< library operations the command reaches
};

inline const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table{
      {"delta-profile", "delta(eps) for several eps", {"build_profile", "range_bounds", "optimal_delta_grid", "optimal_delta_closed_form"}},
      {"delta", "one delta(eps) sample", {"optimal_delta_grid", "optimal_delta_closed_form", "optimal_delta_finite"}},
      {"modulus", "modulus of continuity w(delta)", {"modulus_of_continuity"}},
      {"verify-delta", "check a claimed delta is valid and maximal", {"verify_largest_delta"}},
      {"maximize", "dyadic-net extrema with a certified bound", {"dyadic_net", "refine_extrema", "certified_max_bound"}},
      {"envelope", "running-maximum envelope and first maximiser", {"envelope", "first_maximizer"}},
      {"bisect", "boundary search against a target set", {"bisect_boundary", "classify"}},
      {"ivt", "classical intermediate value search f(x) = c", {"classical_ivt"}},
      {"fixpoint", "fixed point of a self-map", {"fixed_point"}},
  };
  return table;
}

namespace detail {

enum class Format { json, csv };

struct Options {
  std::string fn;
  std::vector<double> eps;
  double delta = 0.0;
  std::optional<double> lo;
  std::optional<double> hi;
  double c = 0.0;
  int steps = 20;
  int level = 10;
  std::size_t resolution = 4096;
  std::size_t refine = 2;
  std::string target;
  bool closed_form = false;
  bool exhaustive = false;
  std::string output = "json";
};

inline void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--fn", o.fn, "function text, e.g. chainsaw or power(alpha=2,b=1)")->required();
  sub->add_option("--lo", o.lo, "domain lower end (poly and expr only)");
  sub->add_option("--hi", o.hi, "domain upper end (poly and expr only)");
  sub->add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

inline RealFunction load_function(const Options& o) {
  RealFunction f = parse_function(o.fn);
  if (o.lo || o.hi) {
    f = f.with_domain(Interval(o.lo.value_or(f.domain().lo()), o.hi.value_or(f.domain().hi())));
  }
  return f;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int delta_profile(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  const GridConfig cfg{o.resolution, o.refine, 2.0};
  const DeltaProfile p = build_profile(f, o.eps, cfg);
  if (o.output == "csv") {
    write_csv(out, p);
  } else {
    emit(out, to_json(p));
  }
  return kOk;
}

inline int delta(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  if (o.eps.size() != 1) throw precondition_violated("delta takes exactly one --eps");
  const double eps = o.eps.front();
  DeltaSample s = [&] {
    if (o.closed_form) return optimal_delta_closed_form(f, eps);
    if (o.exhaustive) {
      if (o.resolution > 2048) throw precondition_violated("--exhaustive allows --resolution up to 2048");
      const auto xs = sample_points(f, o.resolution);
      std::vector<double> fs;
      for (double x : xs) fs.push_back(f(x));
      DeltaSample exact = optimal_delta_finite(FiniteMetricSpace::on_line(xs, fs), eps);
      auto& w = *exact.witness;  // indices -> coordinates
      w.x = xs[static_cast<std::size_t>(w.x)];
      w.y = xs[static_cast<std::size_t>(w.y)];
      return exact;
    }
    return optimal_delta_grid(f, eps, GridConfig{o.resolution, o.refine, 2.0});
  }();
  if (o.output == "csv") {
    write_csv(out, std::vector<DeltaSample>{s});
  } else {
    json j = to_json(s);
    j["function_id"] = f.to_string();
    emit(out, j);
  }
  return kOk;
}

inline int modulus(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  const double w = modulus_of_continuity(f, o.delta, o.resolution);
  if (o.output == "csv") {
    out << "delta,modulus\n" << format_number(o.delta, kCsvDigits) << ',' << format_number(w, kCsvDigits) << '\n';
  } else {
    emit(out, {{"function_id", f.to_string()}, {"delta", o.delta}, {"resolution", o.resolution}, {"modulus", w}});
  }
  return kOk;
}

inline int verify_delta(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  if (o.eps.size() != 1) throw precondition_violated("verify-delta takes exactly one --eps");
  const VerificationReport r = verify_largest_delta(f, o.eps.front(), o.delta, o.resolution);
  if (o.output == "csv") {
    out << "epsilon,delta_claimed,valid,maximal\n"
        << format_number(r.epsilon, kCsvDigits) << ',' << format_number(r.delta_claimed, kCsvDigits) << ','
        << (r.valid ? "true" : "false") << ',' << (r.maximal ? "true" : "false") << '\n';
  } else {
    json j = to_json(r);
    j["function_id"] = f.to_string();
    emit(out, j);
  }
  return kOk;
}

inline int maximize(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  RefinementTrace t = refine_extrema(f, o.level);
  const int last = t.final_level().level;
  const double bound = certified_max_bound(f, t, last, o.resolution);
  if (o.output == "csv") {
    write_csv(out, t);
  } else {
    emit(out, {{"function_id", f.to_string()},
               {"max_estimate", t.final_level().max_value},
               {"argmax", t.final_level().argmax},
               {"certified_upper_bound", bound},
               {"trace", to_json(t)}});
  }
  return kOk;
}

inline int envelope(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  const auto env = unicont::envelope(f, o.resolution);
  if (o.output == "csv") {
    write_csv(out, env);
  } else {
    emit(out, {{"function_id", f.to_string()},
               {"first_maximizer", first_maximizer(f, o.resolution, 0.0)},
               {"points", to_json(env)}});
  }
  return kOk;
}

inline void emit_trace(const Options& o, std::ostream& out, const RealFunction& f, const BisectionTrace& t,
                       json extra) {
  if (o.output == "csv") {
    write_csv(out, t);
    return;
  }
  json j{{"function_id", f.to_string()}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  j["trace"] = to_json(t);
  emit(out, j);
}

inline int bisect(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  const TargetSet d = parse_target_set(o.target);
  emit_trace(o, out, f, bisect_boundary(f, d, o.steps), {{"target", d.to_string()}});
  return kOk;
}

inline int ivt(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  emit_trace(o, out, f, classical_ivt(f, o.c, o.steps), {{"c", o.c}});
  return kOk;
}

inline int fixpoint(const Options& o, std::ostream& out) {
  const RealFunction f = load_function(o);
  const FixedPointResult r = fixed_point(f, o.steps);
  if (r.endpoint) {
    if (o.output == "csv") {
      out << "fixed_endpoint\n" << format_number(*r.endpoint, kCsvDigits) << '\n';
    } else {
      emit(out, {{"function_id", f.to_string()}, {"fixed_endpoint", *r.endpoint}, {"trace", nullptr}});
    }
    return kOk;
  }
  emit_trace(o, out, f, *r.trace, {{"fixed_endpoint", nullptr}});
  return kOk;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options o;
  CLI::App app{"Optimal uniform-continuity delta, certified extrema and boundary bisection", "unicont"};
  app.require_subcommand(1);

  std::map<std::string, std::function<int(const Options&, std::ostream&)>> handlers{
      {"delta-profile", detail::delta_profile}, {"delta", detail::delta},
      {"modulus", detail::modulus},             {"verify-delta", detail::verify_delta},
      {"maximize", detail::maximize},           {"envelope", detail::envelope},
      {"bisect", detail::bisect},               {"ivt", detail::ivt},
      {"fixpoint", detail::fixpoint}};

  for (const auto& info : commands()) {
    CLI::App* sub = app.add_subcommand(info.name, info.summary);
    detail::add_common(sub, o);
    const std::string& n = info.name;
    if (n == "delta-profile" || n == "delta" || n == "verify-delta") {
      sub->add_option("--eps", o.eps, "output gap epsilon")->required()->delimiter(',');
    }
    if (n == "delta") {
      sub->add_flag("--closed-form", o.closed_form, "use the closed form (power, chainsaw at 1/n)");
      sub->add_flag("--exhaustive", o.exhaustive, "exact scan over the sample points (finite-space oracle)");
    }
    if (n == "modulus" || n == "verify-delta") sub->add_option("--delta", o.delta, "input distance")->required();
    if (n == "delta-profile" || n == "delta") sub->add_option("--refine", o.refine, "zoom rounds");
    if (n != "bisect" && n != "ivt" && n != "fixpoint") {
      sub->add_option("--resolution", o.resolution, "grid points")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    }
    if (n == "maximize") sub->add_option("--level", o.level, "deepest dyadic level")->check(CLI::Range(0, kMaxNetLevel));
    if (n == "bisect") sub->add_option("--target", o.target, "target set, e.g. (-inf,0) or [0,1]u(2,3)")->required();
    if (n == "ivt") sub->add_option("--c", o.c, "target value")->required();
    if (n == "bisect" || n == "ivt" || n == "fixpoint") {
      sub->add_option("--steps", o.steps, "bisection steps")->check(CLI::Range(1, 1000));
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageFailure;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    std::ostringstream buffer;  // nothing reaches `out` unless the command succeeds
    const int code = handlers.at(name)(o, buffer);
    out << buffer.str();
    return code;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

}  // namespace unicont::cli
