#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "random_spaces.hpp"
#include "unicont/optimal_delta.hpp"

using namespace unicont;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const RealFunction identity = RealFunction::piecewise_linear({{0, 0}, {1, 1}});
const RealFunction square = RealFunction::power(2, 1);
const RealFunction saw = RealFunction::chainsaw();
}  // namespace

TEST_CASE("grid delta: identity") {
  const GridConfig aligned{11, 0, 2};
  const auto s = optimal_delta_grid(identity, 0.3, aligned);
  CHECK(s.method == Method::grid);
  CHECK(s.bias == Bias::upper_bound);
  CHECK(s.delta >= 0.3 - 1e-12);
  CHECK(s.delta <= 0.3 + 0.1);
  REQUIRE(s.witness);
  CHECK(std::fabs(s.witness->fy - s.witness->fx) >= 0.3);
}

TEST_CASE("grid delta: square against brute force") {
  // delta(0.19) = 1 - sqrt(0.81) = 0.1
  const auto xs = oracle::grid(0, 1, 1 << 12);
  const double brute = oracle::min_distance_all_pairs(xs, [](double x) { return x * x; }, 0.19);
  CHECK_THAT(brute, WithinAbs(0.1, 1.0 / 4095));

  const auto base = optimal_delta_grid(square, 0.19, GridConfig{1 << 12, 0, 2});
  CHECK(base.delta == brute);

  const auto refined = optimal_delta_grid(square, 0.19, GridConfig{1 << 14, 2, 2});
  CHECK_THAT(refined.delta, WithinAbs(0.1, 1e-3));
  CHECK(refined.delta >= 0.1 - 1e-12);
  CHECK(refined.delta <= optimal_delta_grid(square, 0.19, GridConfig{1 << 14, 0, 2}).delta);
}

TEST_CASE("grid delta: chainsaw at eps = 1/2") {
  const auto s = optimal_delta_grid(saw, 0.5, GridConfig{1 << 14, 2, 2});
  CHECK_THAT(s.delta, WithinAbs(0.1, 1e-3));
  REQUIRE(s.witness);
  CHECK(s.witness->x == 0.4);
  CHECK(s.witness->y == 0.5);
}

TEST_CASE("refinement follows a flat valley to the domain edge") {
  // For x^2 at eps = 0.1 the optimal pair is (sqrt(0.9), 1), but the coarse
  // winner sits well inside the domain on a nearly level stretch of pairs.
  const double exact = 1.0 - std::sqrt(0.9);
  const auto s = optimal_delta_grid(square, 0.1, GridConfig{4096, 2, 2});
  CHECK(s.delta >= exact - 1e-15);
  CHECK_THAT(s.delta, WithinRel(exact, 1e-6));
  CHECK_THAT(s.witness->y, WithinAbs(1.0, 1e-9));
}

TEST_CASE("grid delta errors") {
  CHECK_THROWS_AS(optimal_delta_grid(square, 0.0), precondition_violated);
  CHECK_THROWS_AS(optimal_delta_grid(square, 0.5, GridConfig{1, 0, 2}), precondition_violated);
  CHECK_THROWS_AS(optimal_delta_grid(square, 0.5, GridConfig{16, 0, 1.5}), precondition_violated);
  CHECK_THROWS_WITH(optimal_delta_grid(square, 1.5, GridConfig{64, 0, 2}), ContainsSubstring("exceeds the grid range spread"));
  CHECK_THROWS_AS(optimal_delta_grid(RealFunction::polynomial({5}), 0.1), empty_level_set);
}

TEST_CASE("closed form") {
  CHECK_THAT(optimal_delta_closed_form(square, 0.19).delta, WithinAbs(0.1, 1e-15));
  CHECK_THAT(optimal_delta_closed_form(RealFunction::power(0.5, 1), 0.5).delta, WithinAbs(0.25, 1e-15));
  CHECK(optimal_delta_closed_form(saw, 1.0 / 3).delta == 1.0 / 21);
  CHECK_THAT(optimal_delta_closed_form(RealFunction::power(1, 1), 0.4).delta, WithinAbs(0.4, 1e-15));
  const auto s = optimal_delta_closed_form(saw, 0.5);
  CHECK(s.method == Method::closed_form);
  CHECK(s.bias == Bias::exact);

  CHECK_THROWS_AS(optimal_delta_closed_form(identity, 0.1), unsupported_family);
  CHECK_THROWS_AS(optimal_delta_closed_form(square, 1.0), out_of_range);
  CHECK_THROWS_AS(optimal_delta_closed_form(saw, 0.3), out_of_range);
  CHECK_THROWS_AS(optimal_delta_closed_form(saw, 2.0), out_of_range);
}

TEST_CASE("closed form agrees with the grid oracle") {
  const GridConfig cfg{1 << 12, 2, 2};
  CHECK_THAT(optimal_delta_grid(square, 0.19, cfg).delta, WithinRel(0.1, 1e-3));
  CHECK_THAT(optimal_delta_grid(RealFunction::power(0.5, 1), 0.5, cfg).delta, WithinRel(0.25, 1e-3));
}

TEST_CASE("finite spaces") {
  const FiniteMetricSpace triangle({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {0, 0, 1});
  const auto s = optimal_delta_finite(triangle, 0.5);
  CHECK(s.delta == 1.0);
  CHECK(s.bias == Bias::exact);

  const auto line = FiniteMetricSpace::on_line({0, 0.3, 1}, {0, 0.3, 1});
  CHECK(optimal_delta_finite(line, 0.5).delta == 1.0 - 0.3);

  const FiniteMetricSpace flat({"p", "q"}, {{0, 2}, {2, 0}}, {0, 0});
  CHECK_THROWS_AS(optimal_delta_finite(flat, 0.1), empty_level_set);

  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, {0, 0, 0}),
                  precondition_violated);
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {{0, 1}, {2, 0}}, {0, 0}), precondition_violated);
}

TEST_CASE("modulus of continuity") {
  CHECK(modulus_of_continuity(saw, 0.0, 256) == 0.0);
  CHECK(modulus_of_continuity(square, 0.0, 256) == 0.0);
  CHECK_THAT(modulus_of_continuity(identity, 0.25, 5), WithinAbs(0.25, 1e-15));

  // monotone f: w(0.1) = f(1) - f(0.9) = 0.19
  const double w = modulus_of_continuity(square, 0.1, 1 << 12);
  CHECK_THAT(w, WithinAbs(0.19, 1e-3));
  CHECK(w <= 0.19 + 1e-12);

  // Exact agreement with the all-pairs scan on the same grid.
  const auto xs = oracle::grid(0, 1, 1025);
  CHECK(modulus_of_continuity(square, 0.1, 1025) ==
        oracle::max_gap_all_pairs(xs, [](double x) { return std::pow(x, 2.0); }, 0.1));

  CHECK_THROWS_AS(modulus_of_continuity(square, -1.0, 16), precondition_violated);
}

TEST_CASE("profiles") {
  const auto p = build_profile(saw, {1.0 / 3, 1.0, 0.5});
  REQUIRE(p.samples.size() == 3);
  CHECK(p.samples[0].delta == 1.0 / 21);
  CHECK(p.samples[1].delta == 1.0 / 10);
  CHECK(p.samples[2].delta == 1.0 / 3);
  CHECK(p.function_id == "chainsaw");
  CHECK_THAT(p.M_estimate, WithinAbs(1.0, 1e-15));

  CHECK_THROWS_WITH(build_profile(RealFunction::polynomial({5}), {0.1}), ContainsSubstring("range spread"));
  CHECK_THROWS_WITH(build_profile(square, {0.5, 2.0}), ContainsSubstring("epsilon = 2"));
  CHECK_THROWS_AS(build_profile(square, {}), precondition_violated);

  const auto q = build_profile(square, {0.5, 0.1, 0.19});
  for (std::size_t i = 0; i + 1 < q.samples.size(); ++i) {
    CHECK(q.samples[i].epsilon < q.samples[i + 1].epsilon);
    CHECK(q.samples[i].delta <= q.samples[i + 1].delta);
  }
  // A chainsaw eps that is not 1/n falls back to the grid.
  const auto mixed = build_profile(saw, {0.5, 0.6}, GridConfig{1 << 12, 1, 2});
  CHECK(mixed.samples[0].method == Method::closed_form);
  CHECK(mixed.samples[1].method == Method::grid);
}

TEST_CASE("verify largest delta") {
  const auto r = verify_largest_delta(saw, 0.5, 0.1, 1 << 14);
  CHECK(r.valid);
  CHECK(r.maximal);
  REQUIRE(r.tight_pair);
  CHECK(r.tight_pair->x == 0.4);

  const auto small = verify_largest_delta(identity, 0.3, 0.2, 11);
  CHECK(small.valid);
  CHECK_FALSE(small.maximal);

  const auto big = verify_largest_delta(identity, 0.3, 0.4, 11);
  CHECK_FALSE(big.valid);
  REQUIRE(big.violation);
  CHECK(std::fabs(big.violation->y - big.violation->x) < 0.4);
  CHECK(std::fabs(big.violation->fy - big.violation->fx) >= 0.3);
}

// --- properties -----------------------------------------------------------

TEST_CASE("grid deltas never undershoot the closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(0.3, 3.5), b(0.5, 2.0), frac(0.02, 0.98);
  for (int i = 0; i < 40; ++i) {
    const auto f = RealFunction::power(alpha(rng), b(rng));
    const auto& p = std::get<PowerFamily>(f.rule());
    const double eps = frac(rng) * std::pow(p.b, p.alpha);
    const double exact = optimal_delta_closed_form(f, eps).delta;
    const double grid = optimal_delta_grid(f, eps, GridConfig{512, 2, 2}).delta;
    INFO(f.to_string() << " eps=" << eps);
    CHECK(grid >= exact - 1e-12);
  }
}

TEST_CASE("grid deltas do not grow with resolution") {
  for (double eps : {0.05, 0.19, 0.5, 0.9}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int k : {8, 10, 12, 14}) {
      const double d = optimal_delta_grid(square, eps, GridConfig{std::size_t{1} << k, 0, 2}).delta;
      INFO("eps=" << eps << " resolution=2^" << k);
      CHECK(d <= previous);
      previous = d;
    }
  }
}

TEST_CASE("delta is monotone in epsilon on a fixed grid") {
  for (const auto& f : {square, saw, RealFunction::power(0.5, 2), parse_function("expr(sin(7*x), lo=0, hi=2)")}) {
    const double spread = range_bounds(f, 1024).spread();
    double previous = 0.0;
    for (int i = 1; i < 20; ++i) {
      const double d = optimal_delta_grid(f, spread * i / 20.0, GridConfig{1024, 0, 2}).delta;
      CHECK(d >= previous);
      previous = d;
    }
  }
}

TEST_CASE("chainsaw jump witness") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(optimal_delta_closed_form(saw, 1.0 / n).delta == 1.0 / (n * (2 * n + 1)));
    const double eps = 1.0 / n + 1e-4;
    if (n == 1) {
      // eps > M = 1: the level set is empty, delta = inf of the empty set.
      CHECK_THROWS_AS(optimal_delta_grid(saw, eps, GridConfig{1 << 14, 2, 2}), empty_level_set);
      continue;
    }
    const double grid = optimal_delta_grid(saw, eps, GridConfig{1 << 14, 2, 2}).delta;
    CHECK(grid >= 1.0 / (n * (2 * n - 1)) - 1e-3);
  }
}

TEST_CASE("finite-space oracle matches the base grid pass") {
  std::mt19937_64 rng(5);
  const std::vector<RealFunction> fs{square, saw, identity, RealFunction::power(0.5, 3),
                                     parse_function("pwl((0,0),(0.2,1),(0.5,-1),(1,0.5))"),
                                     parse_function("expr(cos(5*x)*x, lo=-1, hi=2)")};
  std::uniform_real_distribution<double> frac(0.01, 1.0);
  for (const auto& f : fs) {
    for (std::size_t k = 2; k <= 12; ++k) {
      const auto xs = sample_points(f, k);
      std::vector<double> vals;
      for (double x : xs) vals.push_back(f(x));
      const auto space = FiniteMetricSpace::on_line(xs, vals);
      const double spread = *std::max_element(vals.begin(), vals.end()) - *std::min_element(vals.begin(), vals.end());
      if (spread == 0.0) continue;
      for (int t = 0; t < 5; ++t) {
        const double eps = frac(rng) * spread;
        INFO(f.to_string() << " k=" << k << " eps=" << eps);
        CHECK(optimal_delta_finite(space, eps).delta == optimal_delta_grid(f, eps, GridConfig{k, 0, 2}).delta);
      }
    }
  }
}

TEST_CASE("pairs closer than delta(eps) stay within eps on finite spaces") {
  std::mt19937_64 rng(17);
  for (int s = 0; s < 100; ++s) {
    const auto space = testing_support::random_space(rng, 8);
    for (double eps : {0.125, 0.3, 0.5}) {
      DeltaSample d;
      try {
        d = optimal_delta_finite(space, eps);
      } catch (const empty_level_set&) {
        continue;
      }
      for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
          if (space.distance(i, j) < d.delta) CHECK(std::fabs(space.value(i) - space.value(j)) < eps);
    }
  }
}

TEST_CASE("ties resolve to the lexicographically smallest pair") {
  // Every adjacent pair of this zigzag reaches the gap at the same distance.
  const auto zig = parse_function("pwl((0,0),(0.25,1),(0.5,0),(0.75,1),(1,0))");
  const auto s = optimal_delta_grid(zig, 1.0, GridConfig{5, 0, 2});
  REQUIRE(s.witness);
  CHECK(s.witness->x == 0.0);
  CHECK(s.witness->y == 0.25);
}
