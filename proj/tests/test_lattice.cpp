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
#include "setfn/lattice.hpp"
#include "setfn/lorentz.hpp"
#include "setfn/rng.hpp"

using namespace setfn;

namespace {

AtomicMeasure test_measure() { return AtomicMeasure(GroundSet(4), {0.5, 1.0, 1.5, 2.0}); }

std::vector<double> random_vector(Rng& rng, int n) {
  std::vector<double> f(n);
  for (auto& v : f) v = rng.bernoulli(0.2) ? 0.0 : rng.log_uniform(0.05, 5.0);
  return f;
}

std::vector<double> unit(const QuasiNormSpec& x, std::vector<double> f) {
  const double s = x(f);
  for (auto& v : f) v /= s;
  return f;
}

}  // namespace

TEST_CASE("renorm sandwich and exact estimates, checked directly") {
  const QuasiNormSpec x = lorentz_lambda(1.0, 2.0, test_measure());
  const auto est = x.estimates();
  REQUIRE(est);
  const RenormResult r = renorm(x, est->upper_exponent, est->lower_exponent, est->a, est->b);
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<double> f = random_vector(rng, 4);
    const double fx = x(f), fy = r.y(f);
    CHECK(fx <= fy * (1.0 + 1e-9) + 1e-12);
    CHECK(fy <= est->a * est->b * fx * (1.0 + 1e-9) + 1e-12);
    // a random disjoint split
    std::vector<double> g(4, 0.0), h(4, 0.0);
    for (int i = 0; i < 4; ++i) (rng.bernoulli(0.5) ? g : h)[i] = f[i];
    const double p = r.p, q = r.q;
    CHECK(std::pow(fy, p) <= (std::pow(r.y(g), p) + std::pow(r.y(h), p)) * (1.0 + 1e-9) + 1e-12);
    CHECK(std::pow(fy, q) >= (std::pow(r.y(g), q) + std::pow(r.y(h), q)) * (1.0 - 1e-9) - 1e-12);
  }
  CHECK(verify_renorm(r, x, 50, 3).pass());
}

TEST_CASE("renorm of an exact lattice is the lattice itself") {
  const QuasiNormSpec x = weighted_ls(1.5, {1.0, 2.0, 3.0});
  const RenormResult r = renorm(x, 1.5, 1.5 + 1e-9, 1.0, 1.0);
  const std::vector<double> f{0.3, 1.0, 2.0};
  CHECK(r.y(f) == doctest::Approx(x(f)).epsilon(1e-12));
}

TEST_CASE("renorm preconditions") {
  const QuasiNormSpec x = weighted_ls(1.0, {1.0, 1.0});
  CHECK_THROWS_AS(renorm(x, 2.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(renorm(x, 1.0, 2.0, 0.5, 1.0), Error);
}

TEST_CASE("measure certificates hold on sampled g") {
  const QuasiNormSpec x = lorentz_lambda(1.0, 2.0, test_measure());
  const auto est = *x.estimates();
  const double p = est.upper_exponent, q = est.lower_exponent, a = est.a, b = est.b;
  const QuasiNormSpec y = renorm(x, p, q, a, b).y;
  const std::vector<double> ones(4, 1.0);
  CertificateOptions opt;
  opt.samples = 60;

  const auto inf = lpinfty_embedding_measure(y, p, q, unit(y, ones), opt);
  CHECK(inf.pass());
  CHECK(inf.extracted_mass >= kp_constant(q / p) - 1e-9);

  const auto lo = lattice_measure_lower(x, p, q, a, b, unit(x, ones), opt);
  CHECK(lo.pass());
  CHECK(lo.mu.total() == doctest::Approx(1.0));

  const auto up = lattice_measure_upper(x, p, q, a, b, unit(x, ones), opt);
  CHECK(up.pass());
  CHECK(up.mu.total() == doctest::Approx(1.0));

  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> g = random_vector(rng, 4);
    CHECK(certificate_ratio(lo, x, g) <= lo.constant * (1.0 + 1e-9));
    CHECK(certificate_ratio(up, x, g) <= up.constant * (1.0 + 1e-9));
  }
}

TEST_CASE("certificates reject a non-unit base function") {
  const QuasiNormSpec x = lorentz_lambda(1.0, 2.0, test_measure());
  const auto est = *x.estimates();
  const std::vector<double> f(4, 5.0);
  CHECK_THROWS_AS(lattice_measure_lower(x, est.upper_exponent, est.lower_exponent, est.a, est.b, f),
                  Error);
}

TEST_CASE("nondegeneracy measure has the null sets of the norm") {
  const QuasiNormSpec x = weighted_ls(2.0, {1.0, 0.0, 3.0, 0.0});
  const AtomicMeasure mu = nondegeneracy_measure(x, 1.0, 2.0);
  for (std::uint32_t m = 1; m < 16; ++m) {
    std::vector<double> chi(4, 0.0);
    for (int i = 0; i < 4; ++i)
      if (m >> i & 1u) chi[i] = 1.0;
    CHECK((x(chi) == 0.0) == (mu(Subset(m)) == 0.0));
  }
}

TEST_CASE("admissibility of standard specs") {
  CHECK(check_admissible(lorentz_lambda(2.0, 1.0, test_measure()), 100, 5).pass());
  CHECK(check_admissible(weak_lp(1.5, test_measure()), 100, 5).pass());
}

TEST_CASE("convexity ratios") {
  const QuasiNormSpec l1 = weighted_ls(1.0, {1.0, 1.0, 1.0});
  const std::vector<double> f{1.0, 2.0, 3.0};
  CHECK(convexity_ratio(l1, ConvexityKind::Convexity, 1.0, {f}) == doctest::Approx(1.0));

  // l_s is r-convex with constant 1 for r <= s, by Minkowski in l_{s/r}.
  const QuasiNormSpec l2 = weighted_ls(2.0, {1.0, 2.0, 0.5});
  SearchOptions opt;
  opt.budget = 3000;
  opt.seed = 9;
  const auto e = estimate_convexity(l2, 1.5, opt);
  CHECK(e.lower_bound >= 1.0 - 1e-12);
  CHECK(e.lower_bound <= 1.0 + 1e-9);
  CHECK(e.budget_used <= opt.budget);

  // For r > s the constant exceeds one: two disjoint unit vectors.
  const std::vector<double> e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0};
  const QuasiNormSpec l1u = weighted_ls(1.0, {1.0, 1.0, 1.0});
  const double ratio = convexity_ratio(l1u, ConvexityKind::Convexity, 2.0, {e1, e2});
  CHECK(ratio == doctest::Approx(2.0 / std::sqrt(2.0)));
}

TEST_CASE("search is reproducible and worker-count independent in budget") {
  const QuasiNormSpec x = lorentz_lambda(0.5, 1.0, test_measure());
  SearchOptions a, b;
  a.budget = b.budget = 1000;
  a.seed = b.seed = 4;
  b.workers = 3;
  const auto ra = estimate_convexity(x, 0.5, a);
  const auto ra2 = estimate_convexity(x, 0.5, a);
  CHECK(ra.lower_bound == ra2.lower_bound);
  const auto rb = estimate_convexity(x, 0.5, b);
  CHECK(rb.budget_used == a.budget);
  CHECK(ra.budget_used == a.budget);
}

TEST_CASE("convexity bound formula") {
  for (double theta : {0.5, 0.1, 0.01}) {
    const double direct = std::exp(theta * (2.0 + std::fabs(std::log(theta)) / 1.5));
    CHECK(convexity_bound(0.5, 1.5, theta, 2.0) == doctest::Approx(direct).epsilon(1e-14));
  }
  CHECK_THROWS_AS(convexity_bound(2.0, 1.0, 0.5, 2.0), Error);
  CHECK_THROWS_AS(convexity_bound(0.5, 1.0, 1.5, 2.0), Error);
}

TEST_CASE("sharpness example") {
  for (double theta : {0.2, 0.1, 0.05}) {
    const SharpnessResult s = sharpness_example(theta, 10000);
    CHECK(s.q == doctest::Approx(1.0 + theta));
    const double norm_q = std::pow(s.lambda_norm, s.q);
    CHECK(norm_q <= s.norm_bound * (1.0 + 1e-3));
    CHECK(s.norm_bound == doctest::Approx(std::pow(s.psi - 1.0, theta) * std::fabs(std::log(1.0 - s.phi))));
    CHECK(s.log_ratio == doctest::Approx(std::log(s.kappa_lower) / (theta * std::fabs(std::log(theta)))));
    CHECK(s.kappa_from_norm == doctest::Approx(std::exp(s.beta) * s.phi / s.lambda_norm));
  }
  CHECK_THROWS_AS(sharpness_example(0.1, 10), Error);
}
