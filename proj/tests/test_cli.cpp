#include <catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "unicont/cli.hpp"

using unicont::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = unicont::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Result r = run(std::move(args));
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("delta with the closed form") {
  const json j = run_json({"delta", "--fn", "chainsaw", "--eps", "0.5", "--closed-form"});
  CHECK(j["delta"].get<double>() == 0.1);
  CHECK(j["method"] == "closed_form");
  CHECK(j["bias"] == "exact");
}

TEST_CASE("delta without the closed form uses the grid") {
  const json j = run_json({"delta", "--fn", "chainsaw", "--eps", "0.6"});
  CHECK(j["method"] == "grid");
  CHECK(j["bias"] == "upper_bound");
  CHECK(j["witness"].is_object());
}

TEST_CASE("delta exhaustive matches the base grid pass") {
  const json a = run_json({"delta", "--fn", "power(alpha=2,b=1)", "--eps", "0.3", "--exhaustive", "--resolution", "200"});
  const json b = run_json({"delta", "--fn", "power(alpha=2,b=1)", "--eps", "0.3", "--resolution", "200", "--refine", "0"});
  CHECK(a["method"] == "exhaustive");
  CHECK(a["delta"] == b["delta"]);
  CHECK(a["witness"]["x"] == b["witness"]["x"]);
}

TEST_CASE("ivt on x^3 - 2") {
  const json j = run_json({"ivt", "--fn", "poly(-2,0,0,1)", "--lo", "0", "--hi", "2", "--c", "0", "--steps", "20"});
  const auto& t = j["trace"];
  const double lo = t["final_bracket"][0].get<double>();
  const double hi = t["final_bracket"][1].get<double>();
  CHECK(lo <= 1.2599210);
  CHECK(hi >= 1.2599211);
  CHECK(hi - lo == 2.0 / (1 << 20));
  CHECK(t["error_bound"].get<double>() == 2.0 / (1 << 20));
  CHECK(j["function_id"] == "poly(-2,0,0,1,lo=0,hi=2)");
}

TEST_CASE("every command runs and produces both formats") {
  const std::vector<std::vector<std::string>> invocations{
      {"delta-profile", "--fn", "chainsaw", "--eps", "1,0.5", "--eps", "0.25", "--resolution", "512"},
      {"delta", "--fn", "power(alpha=2,b=1)", "--eps", "0.19", "--resolution", "512"},
      {"modulus", "--fn", "power(alpha=2,b=1)", "--delta", "0.1", "--resolution", "1025"},
      {"verify-delta", "--fn", "chainsaw", "--eps", "0.5", "--delta", "0.1", "--resolution", "1024"},
      {"maximize", "--fn", "poly(0,1,-1)", "--level", "6", "--resolution", "257"},
      {"envelope", "--fn", "pwl((0,0),(0.25,1),(0.5,0),(0.75,1),(1,0))", "--resolution", "5"},
      {"bisect", "--fn", "pwl((0,-1),(0.375,-1),(0.375,1),(1,1))", "--target", "(-inf,0)", "--steps", "12"},
      {"ivt", "--fn", "expr(x^3,lo=0,hi=2)", "--c", "2", "--steps", "20"},
      {"fixpoint", "--fn", "expr(cos(x),lo=0,hi=1)", "--steps", "30"},
  };
  std::set<std::string> seen;
  for (auto args : invocations) {
    seen.insert(args.front());
    INFO(args.front());
    const Result j = run(args);
    INFO(j.err);
    CHECK(j.code == 0);
    CHECK_NOTHROW(json::parse(j.out));
    args.insert(args.end(), {"--output", "csv"});
    const Result c = run(args);
    CHECK(c.code == 0);
    CHECK(c.out.find(',') != std::string::npos);
  }
  for (const auto& info : unicont::cli::commands()) CHECK(seen.count(info.name) == 1);
}

TEST_CASE("dispatch table reaches every library operation") {
  const std::set<std::string> operations{
      "range_bounds",      "optimal_delta_grid", "optimal_delta_closed_form", "optimal_delta_finite",
      "modulus_of_continuity", "build_profile",  "verify_largest_delta",      "dyadic_net",
      "refine_extrema",    "certified_max_bound", "envelope",                 "first_maximizer",
      "classify",          "bisect_boundary",    "classical_ivt",             "fixed_point"};
  std::set<std::string> reached;
  for (const auto& info : unicont::cli::commands()) reached.insert(info.operations.begin(), info.operations.end());
  for (const auto& op : operations) {
    INFO(op);
    CHECK(reached.count(op) == 1);
  }
}

TEST_CASE("csv layouts") {
  Result r = run({"delta-profile", "--fn", "chainsaw", "--eps", "0.5,1", "--output", "csv"});
  CHECK(r.out == "epsilon,delta,method,bias\n0.5,0.1,closed_form,exact\n1,0.333333333333,closed_form,exact\n");

  r = run({"maximize", "--fn", "poly(0,1,-1)", "--level", "1", "--resolution", "3", "--output", "csv"});
  CHECK(r.out == "level,mesh,M_n,m_n,argmax,argmin,certified_gap\n0,1,0,0,0,0,\n1,0.5,0.25,0,0.5,0,0.25\n");

  r = run({"envelope", "--fn", "pwl((0,0),(0.5,1),(1,0))", "--resolution", "3", "--output", "csv"});
  CHECK(r.out == "x,g\n0,0\n0.5,1\n1,1\n");

  r = run({"bisect", "--fn", "pwl((0,-1),(1,3))", "--target", "(-inf,0)", "--steps", "2", "--output", "csv"});
  CHECK(r.out == "k,a_k,b_k,midpoint,class\n0,0,1,0.5,exterior\n1,0,0.5,0.25,boundary\n");
}

TEST_CASE("exit codes") {
  CHECK(run({"delta", "--fn", "power(alpha=2,b=1)", "--eps", "3"}).code == 1);                    // empty level set
  CHECK(run({"ivt", "--fn", "poly(0,0,1)", "--c", "2"}).code == 1);                             // precondition
  CHECK(run({"fixpoint", "--fn", "expr(2*x,lo=0,hi=1)"}).code == 1);                            // not a self-map
  CHECK(run({"delta", "--fn", "pwl((0,0),(1,1))", "--eps", "0.1", "--closed-form"}).code == 1);  // no closed form

  const Result bad_fn = run({"delta", "--fn", "sawtooth", "--eps", "0.1"});
  CHECK(bad_fn.code == 2);
  CHECK(bad_fn.err.find("position 0") != std::string::npos);
  CHECK(run({"bisect", "--fn", "chainsaw", "--target", "[0,1"}).code == 2);

  const Result usage = run({"delta", "--eps", "0.1"});
  CHECK(usage.code == 2);
  CHECK(usage.err.find("--fn") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"maximize", "--fn", "chainsaw", "--level", "30"}).code == 2);
  CHECK(run({"delta", "--fn", "chainsaw", "--eps", "0.5", "--output", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("domain overrides apply to poly and expr only") {
  CHECK(run_json({"maximize", "--fn", "poly(0,1)", "--lo", "2", "--hi", "3", "--level", "2"})["max_estimate"] == 3.0);
  CHECK(run({"maximize", "--fn", "chainsaw", "--lo", "0", "--hi", "2"}).code == 1);
}

TEST_CASE("identical invocations give identical bytes") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"delta", "--fn", "chainsaw", "--eps", "0.5", "--closed-form"},
        std::vector<std::string>{"ivt", "--fn", "poly(-2,0,0,1)", "--lo", "0", "--hi", "2", "--c", "0", "--steps", "20"},
        std::vector<std::string>{"delta", "--fn", "chainsaw", "--eps", "0.6"},
        std::vector<std::string>{"delta-profile", "--fn", "power(alpha=3,b=2)", "--eps", "0.5,2,4,7", "--output", "csv"}}) {
    const Result a = run(args);
    const Result b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
