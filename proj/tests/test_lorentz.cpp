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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "setfn/error.hpp"
#include "setfn/lorentz.hpp"
#include "setfn/rng.hpp"

using namespace setfn;

namespace {

StepFunction two_step() { return StepFunction({{2.0, 1.0}, {1.0, 1.0}}); }

double rearranged_value(const StepFunction& f, double t) {
  double acc = 0.0;
  for (const Step& s : f.steps()) {
    acc += s.mass;
    if (t < acc) return s.value;
  }
  return 0.0;
}

// (q/p) int_0^T (t^{1/p} f*(t))^q dt/t by the midpoint rule in u = t^{q/p},
// where the integrand becomes f*(u^{p/q})^q du.
double lpq_quadrature(const StepFunction& f, double p, double q) {
  const double total = std::pow(f.total_mass(), q / p);
  const int steps = 400000;
  const double h = total / steps;
  double sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double u = (k + 0.5) * h;
    sum += std::pow(rearranged_value(f, std::pow(u, p / q)), q);
  }
  return std::pow(sum * h, 1.0 / q);
}

double weak_by_sampling(const StepFunction& f, double p) {
  double best = 0.0;
  for (double t : f.breakpoints()) {
    const double tt = std::nextafter(t, 0.0);
    best = std::max(best, std::pow(tt, 1.0 / p) * rearranged_value(f, tt));
  }
  return best;
}

}  // namespace

TEST_CASE("step function invariants") {
  CHECK_THROWS_AS(StepFunction({{1.0, 1.0}, {2.0, 1.0}}), Error);
  CHECK_THROWS_AS(StepFunction({{1.0, 0.0}}), Error);
  CHECK_THROWS_AS(StepFunction({{-1.0, 1.0}}), Error);
  const StepFunction f = two_step();
  CHECK(f.total_mass() == 2.0);
  CHECK(f.breakpoints() == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(f.scaled(3.0).steps()[0].value == 6.0);
}

TEST_CASE("rearrangement sorts by value and merges ties") {
  const AtomicMeasure mu(GroundSet(5), {1.0, 2.0, 0.5, 1.0, 3.0});
  const std::vector<double> f{-1.0, 3.0, 2.0, 3.0, 0.0};
  const StepFunction r = rearrange(f, mu);
  REQUIRE(r.size() == 3u);
  CHECK(r.steps()[0].value == 3.0);
  CHECK(r.steps()[0].mass == 3.0);
  CHECK(r.steps()[1].value == 2.0);
  CHECK(r.steps()[2].value == 1.0);
  const StepFunction padded = rearrange_padded(f, mu);
  CHECK(padded.total_mass() == doctest::Approx(mu.total()));
}

TEST_CASE("two-step regression values") {
  CHECK(lambda_sup_norm(two_step(), {1.0, 2.0}) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(lpq_norm(two_step(), {1.0, 2.0}) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
  CHECK(lpq_norm(two_step(), {2.0, 1.0}) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lambda_inf_norm(two_step(), {2.0, 1.0}) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("L_pq against quadrature, weak norm against sampling") {
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const StepFunction f = random_step_function(rng);
    const double p = rng.uniform(0.5, 3.0);
    const double q = rng.uniform(0.5, 3.0);
    CHECK(lpq_norm(f, {p, q}) == doctest::Approx(lpq_quadrature(f, p, q)).epsilon(1e-4));
    CHECK(lp_weak_norm(f, p) == doctest::Approx(weak_by_sampling(f, p)).epsilon(1e-9));
  }
}

TEST_CASE("L_pp is the L_p norm") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const StepFunction f = random_step_function(rng);
    const double p = rng.uniform(0.5, 4.0);
    double s = 0.0;
    for (const Step& st : f.steps()) s += std::pow(st.value, p) * st.mass;
    CHECK(lpq_norm(f, {p, p}) == doctest::Approx(std::pow(s, 1.0 / p)).epsilon(1e-12));
  }
}

TEST_CASE("breakpoint forms agree with partition forms") {
  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(1, 5);
    std::vector<double> w(n), f(n);
    for (int i = 0; i < n; ++i) {
      w[i] = rng.uniform(0.1, 2.0);
      f[i] = rng.bernoulli(0.2) ? 0.0 : rng.log_uniform(0.1, 10.0);
    }
    const AtomicMeasure mu(GroundSet(n), w);
    const double p = rng.uniform(0.5, 1.5), q = p + rng.uniform(0.2, 2.0);
    CHECK(lambda_sup_norm(rearrange(f, mu), {p, q}) ==
          doctest::Approx(lambda_sup_norm_partition(f, mu, {p, q})).epsilon(1e-9));
    CHECK(lambda_inf_norm(rearrange_padded(f, mu), {q, p}) ==
          doctest::Approx(lambda_inf_norm_partition(f, mu, {q, p})).epsilon(1e-9));
  }
}

TEST_CASE("comparison band holds in both regimes") {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const StepFunction f = random_step_function(rng);
    const double p = rng.uniform(0.5, 2.0), q = p + rng.uniform(0.1, 2.0);
    const auto up = comparison_constants({p, q});
    CHECK(up.lower == 1.0);
    const double r1 = lpq_norm(f, {p, q}) / lambda_sup_norm(f, {p, q});
    CHECK(r1 >= 1.0 - 1e-9);
    CHECK(r1 <= up.upper * (1.0 + 1e-9));
    const auto down = comparison_constants({q, p});
    CHECK(down.upper == 1.0);
    const double r2 = lpq_norm(f, {q, p}) / lambda_inf_norm(f, {q, p});
    CHECK(r2 <= 1.0 + 1e-9);
    CHECK(r2 >= down.lower * (1.0 - 1e-9));
  }
}

TEST_CASE("homogeneity") {
  Rng rng(59);
  const StepFunction f = random_step_function(rng);
  for (double c : {0.25, 3.0}) {
    CHECK(lpq_norm(f.scaled(c), {1.5, 2.5}) == doctest::Approx(c * lpq_norm(f, {1.5, 2.5})));
    CHECK(lambda_sup_norm(f.scaled(c), {1.0, 2.0}) == doctest::Approx(c * lambda_sup_norm(f, {1.0, 2.0})));
    CHECK(lambda_inf_norm(f.scaled(c), {2.0, 1.0}) == doctest::Approx(c * lambda_inf_norm(f, {2.0, 1.0})));
  }
}

TEST_CASE("regime preconditions") {
  CHECK_THROWS_AS(lambda_sup_norm(two_step(), {2.0, 1.0}), Error);
  CHECK_THROWS_AS(lambda_inf_norm(two_step(), {1.0, 2.0}), Error);
  CHECK_THROWS_AS(comparison_constants({1.0, 1.0}), Error);
  CHECK_THROWS_AS(lpq_norm(two_step(), {0.0, 1.0}), Error);
}
