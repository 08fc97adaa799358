/*
 * Copyright 2026 The setfn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <vector>

#include "setfn/error.hpp"
#include "setfn/rng.hpp"
#include "setfn/set_function.hpp"

using namespace setfn;

namespace {

SetFunction sqrt_measure(std::vector<double> w) {
  const GroundSet g(static_cast<int>(w.size()));
  return power(SetFunction::from_weights(g, w), 0.5);
}

bool brute_lower(const SetFunction& phi, double p, double tol) {
  const std::uint32_t full = phi.ground().full().bits();
  for (std::uint32_t a = 0; a <= full; ++a)
    for (std::uint32_t b = 0; b <= full; ++b) {
      if (a & b) continue;
      const double lhs = std::pow(phi(Subset(a | b)), p);
      const double rhs = std::pow(phi(Subset(a)), p) + std::pow(phi(Subset(b)), p);
      if (lhs < rhs - tol * std::max(1.0, lhs)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("set-function validation") {
  const GroundSet g(2);
  CHECK_THROWS_AS(SetFunction(g, {1.0, 1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(SetFunction(g, {0.0, -1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(SetFunction(g, {0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(SetFunction(g, {0.0, NAN, 1.0, 1.0}), Error);
  CHECK_NOTHROW(SetFunction(g, {0.0, 1.0, 1.0, 2.0}));
}

TEST_CASE("classification of known families") {
  const GroundSet g(3);
  const std::vector<double> w{0.5, 1.0, 2.0};
  const SetFunction nu = SetFunction::from_weights(g, w);
  const auto c = classify(nu);
  CHECK(c.monotone);
  CHECK(c.measure);
  CHECK(c.submeasure);
  CHECK(c.supermeasure);
  CHECK_FALSE(c.normalized);
  CHECK(classify(normalize(nu)).normalized);

  const auto s = classify(power(nu, 0.5));
  CHECK(s.submeasure);
  CHECK_FALSE(s.supermeasure);

  const auto t = classify(power(nu, 2.0));
  CHECK(t.supermeasure);
  CHECK_FALSE(t.submeasure);

  const SetFunction bump(g, {0.0, 1.0, 1.0, 0.5, 1.0, 1.0, 1.0, 1.0});
  const auto b = classify(bump);
  CHECK_FALSE(b.monotone);
  CHECK_FALSE(b.violations.empty());
}

TEST_CASE("critical exponents of measure powers") {
  const SetFunction phi = sqrt_measure({1.0, 2.0, 3.0, 4.0});
  const auto e = estimate_exponents(phi);
  REQUIRE(e.lower);
  REQUIRE(e.upper);
  CHECK(*e.lower == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(*e.upper == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(has_lower_estimate(phi, 2.0));
  CHECK(has_lower_estimate(phi, 3.0));
  CHECK_FALSE(has_lower_estimate(phi, 1.5));
  CHECK(has_upper_estimate(phi, 1.5));
  CHECK_FALSE(has_upper_estimate(phi, 2.5));

  const SetFunction sq = power(SetFunction::from_weights(GroundSet(3), std::vector<double>{1, 1, 1}), 2.0);
  const auto f = estimate_exponents(sq);
  REQUIRE(f.upper);
  CHECK(*f.upper == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("pairwise estimate checks agree with brute force") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const SetFunction phi = random_submeasure_lower_p(GroundSet(rng.integer(2, 5)), 1.5, rng.next(),
                                                      SubmeasureFamily::Floor);
    for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(has_lower_estimate(phi, p) == brute_lower(phi, p, 1e-9));
  }
}

TEST_CASE("K_p closed form") {
  CHECK(kp_constant(1.0) == 1.0);
  for (double p : {0.4, 0.8, 1.25, 2.0, 3.0, 7.5}) {
    const double direct = 2.0 * std::pow(std::pow(2.0, p) - 1.0, -1.0 / p) - 1.0;
    CHECK(kp_constant(p) == doctest::Approx(direct).epsilon(1e-13));
  }
  // decreasing in p
  double prev = kp_constant(0.3);
  for (double p = 0.4; p < 10.0; p += 0.1) {
    const double k = kp_constant(p);
    CHECK(k < prev);
    prev = k;
  }
  CHECK_THROWS_AS(kp_constant(0.0), Error);
}

TEST_CASE("generators deliver their advertised properties") {
  for (int fam = 0; fam < 3; ++fam)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto sub = random_submeasure_lower_p(GroundSet(5), 2.0, seed, static_cast<SubmeasureFamily>(fam));
      const auto cs = classify(sub);
      CHECK(cs.submeasure);
      CHECK(cs.normalized);
      CHECK(brute_lower(sub, 2.0, 1e-9));

      const auto sup = random_supermeasure_upper_p(GroundSet(5), 0.5, seed,
                                                   static_cast<SupermeasureFamily>(fam));
      const auto cp = classify(sup);
      CHECK(cp.supermeasure);
      CHECK(cp.normalized);
      CHECK(has_upper_estimate(sup, 0.5));
    }
  const auto a = random_submeasure_lower_p(GroundSet(4), 2.0, 9, SubmeasureFamily::PerturbRepair);
  const auto b = random_submeasure_lower_p(GroundSet(4), 2.0, 9, SubmeasureFamily::PerturbRepair);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST_CASE("repairs") {
  Rng rng(3);
  const GroundSet g(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(16);
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = rng.uniform(0.0, 2.0);
    const SetFunction phi(g, v);
    const SetFunction m = monotone_repair(phi);
    CHECK(is_monotone(m));
    for (std::uint32_t a = 0; a < 16; ++a) CHECK(m(Subset(a)) >= phi(Subset(a)));
    const SetFunction s = subadditive_repair(m);
    CHECK(classify(s).submeasure);
    for (std::uint32_t a = 0; a < 16; ++a) CHECK(s(Subset(a)) <= m(Subset(a)) + 1e-12);
    const SetFunction u = superadditive_repair(m);
    CHECK(classify(u).supermeasure);
    for (std::uint32_t a = 0; a < 16; ++a) CHECK(u(Subset(a)) >= m(Subset(a)) - 1e-12);
  }
}

TEST_CASE("restriction and measure powers") {
  const GroundSet g(3);
  const std::vector<double> w{1.0, 1.0, 2.0};
  const SetFunction phi = measure_power(g, w, 0.5);
  CHECK(phi.total() == doctest::Approx(1.0));
  CHECK(phi(Subset(0b100)) == doctest::Approx(std::sqrt(0.5)));
  const SetFunction r = restrict_to(phi, Subset(0b011));
  CHECK(r(Subset(0b111)) == doctest::Approx(phi(Subset(0b011))));
  CHECK(r(Subset(0b100)) == 0.0);
}
