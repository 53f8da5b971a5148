#pragma once

// JSON and CSV encodings of the result types. JSON numbers round-trip
// doubles exactly; CSV numbers carry 12 significant digits for plotting.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unicont/extremum.hpp"
#include "unicont/intermediate.hpp"
#include "unicont/optimal_delta.hpp"

namespace unicont {

using json = nlohmann::ordered_json;

inline constexpr int kCsvDigits = 12;

namespace detail {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline std::string csv_number(double v) { return format_number(v, kCsvDigits); }

}  // namespace detail

inline json to_json(const PairWitness& w) { return {{"x", w.x}, {"y", w.y}, {"fx", w.fx}, {"fy", w.fy}}; }

inline json to_json(const std::optional<PairWitness>& w) { return w ? to_json(*w) : json(nullptr); }

inline json to_json(const DeltaSample& s) {
  return {{"epsilon", s.epsilon},
          {"delta", s.delta},
          {"method", to_string(s.method)},
          {"bias", to_string(s.bias)},
          {"witness", to_json(s.witness)}};
}

inline json to_json(const DeltaProfile& p) {
  json samples = json::array();
  for (const auto& s : p.samples) samples.push_back(to_json(s));
  return {{"function_id", p.function_id}, {"M_estimate", p.M_estimate}, {"samples", samples}};
}

inline json to_json(const VerificationReport& r) {
  return {{"epsilon", r.epsilon},         {"delta_claimed", r.delta_claimed},
          {"valid", r.valid},             {"maximal", r.maximal},
          {"violation", to_json(r.violation)}, {"tight_pair", to_json(r.tight_pair)}};
}

inline json to_json(const RefinementTrace& t) {
  json levels = json::array();
  for (const auto& l : t.levels) {
    levels.push_back({{"level", l.level},
                      {"mesh", l.mesh},
                      {"M_n", l.max_value},
                      {"m_n", l.min_value},
                      {"argmax", l.argmax},
                      {"argmin", l.argmin},
                      {"certified_gap", detail::optional_json(l.certified_gap)}});
  }
  return {{"levels", levels}, {"stopped_early", t.stopped_early}};
}

inline json to_json(const std::vector<EnvelopePoint>& env) {
  json out = json::array();
  for (const auto& p : env) out.push_back({{"x", p.x}, {"g", p.g}});
  return out;
}

inline json to_json(const BisectionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"k", s.k},
                     {"a_k", s.a},
                     {"b_k", s.b},
                     {"midpoint", s.midpoint},
                     {"value", s.value},
                     {"class", to_string(s.region)}});
  }
  return {{"initial_bracket", {t.initial_lo, t.initial_hi}},
          {"inside_end", t.inside_at_lo ? "lo" : "hi"},
          {"steps", steps},
          {"final_bracket", {t.final_lo, t.final_hi}},
          {"completed_steps", t.completed_steps},
          {"error_bound", t.error_bound},
          {"boundary_point", detail::optional_json(t.boundary_point)}};
}

inline void write_csv(std::ostream& out, const std::vector<DeltaSample>& samples) {
  out << "epsilon,delta,method,bias\n";
  for (const auto& s : samples) {
    out << detail::csv_number(s.epsilon) << ',' << detail::csv_number(s.delta) << ','
        << to_string(s.method) << ',' << to_string(s.bias) << '\n';
  }
}

inline void write_csv(std::ostream& out, const DeltaProfile& p) { write_csv(out, p.samples); }

inline void write_csv(std::ostream& out, const RefinementTrace& t) {
  out << "level,mesh,M_n,m_n,argmax,argmin,certified_gap\n";
  for (const auto& l : t.levels) {
    out << l.level << ',' << detail::csv_number(l.mesh) << ',' << detail::csv_number(l.max_value)
        << ',' << detail::csv_number(l.min_value) << ',' << detail::csv_number(l.argmax) << ','
        << detail::csv_number(l.argmin) << ','
        << (l.certified_gap ? detail::csv_number(*l.certified_gap) : std::string()) << '\n';
  }
}

inline void write_csv(std::ostream& out, const std::vector<EnvelopePoint>& env) {
  out << "x,g\n";
  for (const auto& p : env) out << detail::csv_number(p.x) << ',' << detail::csv_number(p.g) << '\n';
}

inline void write_csv(std::ostream& out, const BisectionTrace& t) {
  out << "k,a_k,b_k,midpoint,class\n";
  for (const auto& s : t.steps) {
    out << s.k << ',' << detail::csv_number(s.a) << ',' << detail::csv_number(s.b) << ','
        << detail::csv_number(s.midpoint) << ',' << to_string(s.region) << '\n';
  }
}

}  // namespace unicont
