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
#include "setfn/factorization.hpp"
#include "setfn/rng.hpp"

using namespace setfn;

namespace {

OperatorSpec diagonal_l1() {
  return OperatorSpec{{{1.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 0.5}},
                      weighted_ls(1.0, {1.0, 1.0, 1.0}), 1.0, 2.0};
}

// Every atom picks a block label and a sign; blocks are scored by the norm
// of T applied to the signed indicator. Vertex attainment makes this exact
// for Banach codomains.
double brute_c1(const OperatorSpec& t) {
  const int n = t.cols(), m = t.rows();
  std::vector<int> label(n, 0), sign(n, 0);
  double best = 0.0;
  while (true) {
    double s = 0.0;
    for (int b = 0; b < n; ++b) {
      std::vector<double> f(n, 0.0);
      bool any = false;
      for (int i = 0; i < n; ++i)
        if (label[i] == b) {
          f[i] = sign[i] ? -1.0 : 1.0;
          any = true;
        }
      if (!any) continue;
      std::vector<double> y(m, 0.0);
      for (int r = 0; r < m; ++r)
        for (int i = 0; i < n; ++i) y[r] += t.matrix[r][i] * f[i];
      s += std::pow(t.codomain(y), t.q);
    }
    best = std::max(best, s);
    int i = 0;
    while (i < n) {
      if (++sign[i] < 2) break;
      sign[i] = 0;
      if (++label[i] < n) break;
      label[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return std::pow(best, 1.0 / t.q);
}

}  // namespace

TEST_CASE("disjointness constant on hand examples") {
  CHECK(disjointness_constant(diagonal_l1(), ZMode::Exact) == doctest::Approx(3.5).epsilon(1e-12));
  OperatorSpec id{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                  weighted_ls(2.0, {1, 1, 1, 1}), 1.0, 2.0};
  CHECK(disjointness_constant(id, ZMode::Exact) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("exact mode equals brute force on small operators") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    OperatorSpec t = random_operator(seed);
    if (t.cols() > 4) {
      for (auto& row : t.matrix) row.resize(4);
    }
    CHECK(disjointness_constant(t, ZMode::Exact) == doctest::Approx(brute_c1(t)).epsilon(1e-9));
  }
}

TEST_CASE("Z norm: monotone, lower q-estimate on disjoint pairs, chain start") {
  Rng rng(79);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const OperatorSpec t = random_operator(seed);
    const int n = t.cols();
    const std::vector<double> ones(n, 1.0);
    CHECK(z_norm(t, ones, ZMode::Exact) == doctest::Approx(disjointness_constant(t, ZMode::Exact)));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> f(n), g(n), a(n, 0.0), b(n, 0.0);
      for (int i = 0; i < n; ++i) {
        f[i] = rng.uniform(-1.0, 1.0);
        g[i] = (f[i] < 0 ? -1.0 : 1.0) * (std::fabs(f[i]) + rng.uniform(0.0, 1.0));
        (rng.bernoulli(0.5) ? a : b)[i] = f[i];
      }
      CHECK(z_norm(t, f, ZMode::Exact) <= z_norm(t, g, ZMode::Exact) * (1.0 + 1e-12) + 1e-12);
      const double q = t.q;
      CHECK(std::pow(z_norm(t, f, ZMode::Exact), q) >=
            (std::pow(z_norm(t, a, ZMode::Exact), q) + std::pow(z_norm(t, b, ZMode::Exact), q)) *
                    (1.0 - 1e-12) - 1e-12);
    }
  }
}

TEST_CASE("constants scale linearly with the operator") {
  const OperatorSpec t = random_operator(5);
  OperatorSpec t3 = t;
  for (auto& row : t3.matrix)
    for (auto& v : row) v *= 3.0;
  const auto a = factorization_measure(t);
  const auto b = factorization_measure(t3);
  CHECK(b.c1 == doctest::Approx(3.0 * a.c1));
  CHECK(b.c2 == doctest::Approx(3.0 * a.c2));
  CHECK(b.c3 == doctest::Approx(3.0 * a.c3));
  CHECK(b.c4 == doctest::Approx(3.0 * a.c4));
  for (int i = 0; i < t.cols(); ++i) CHECK(b.mu.weight(i) == doctest::Approx(a.mu.weight(i)));
}

TEST_CASE("zero operator is degenerate") {
  OperatorSpec t{{{0.0, 0.0}, {0.0, 0.0}}, weighted_ls(1.0, {1.0, 1.0}), 1.0, 2.0};
  const auto c = factorization_measure(t);
  CHECK(c.c1 == 0.0);
  CHECK(c.c4 == 0.0);
  CHECK(c.mu.weight(0) == doctest::Approx(c.mu.weight(1)));
}

TEST_CASE("certificate verifies and is worker independent") {
  const OperatorSpec t = diagonal_l1();
  const auto c = factorization_measure(t);
  CHECK(c.mode == ZMode::Exact);
  CHECK(c.p == doctest::Approx(1.5));
  CHECK(c.c4 == doctest::Approx(c.c1 * c.kp_factor * c.comparison_factor));
  const auto r1 = verify_conditions(t, c, 300, 11, 1);
  const auto r3 = verify_conditions(t, c, 300, 11, 3);
  CHECK(r1.pass());
  CHECK(r1.max_ratio_ii == r3.max_ratio_ii);
  CHECK(r1.max_ratio_iii == r3.max_ratio_iii);
  CHECK(r1.max_ratio_iv == r3.max_ratio_iv);
  for (int i = 0; i < t.cols(); ++i) {
    std::vector<double> e(t.cols(), 0.0);
    e[i] = 0.7;
    CHECK(ratio_iv(t, c, e) <= c.c4 * (1.0 + 1e-9));
  }
}

TEST_CASE("codomain subadditivity probe and mode selection") {
  OperatorSpec t = diagonal_l1();
  CHECK(codomain_r_subadditive(t, 200, 3));
  CHECK(default_mode(t) == ZMode::Exact);
  OperatorSpec h = t;
  h.codomain = weighted_ls(0.5, {1.0, 1.0, 1.0});
  h.r = 0.5;
  CHECK(default_mode(h) == ZMode::Heuristic);
  CHECK_THROWS_AS(z_norm(h, std::vector<double>{1, 1, 1}, ZMode::Exact), Error);
  h.r = 1.0;
  CHECK_FALSE(codomain_r_subadditive(h, 200, 3));
}

TEST_CASE("heuristic mode bounds single columns from below") {
  OperatorSpec h{{{1.0, 0.5}, {0.2, -1.0}}, weighted_ls(0.5, {1.0, 1.0}), 0.5, 2.0};
  const double c1 = disjointness_constant(h, ZMode::Heuristic);
  for (int i = 0; i < 2; ++i) {
    std::vector<double> col{h.matrix[0][i], h.matrix[1][i]};
    CHECK(c1 >= h.codomain(col) - 1e-12);
  }
}

TEST_CASE("operator validation") {
  OperatorSpec ragged{{{1.0, 2.0}, {1.0}}, weighted_ls(1.0, {1.0, 1.0}), 1.0, 2.0};
  CHECK_THROWS_AS(validate(ragged), Error);
  OperatorSpec bad_dim{{{1.0, 2.0}}, weighted_ls(1.0, {1.0, 1.0}), 1.0, 2.0};
  CHECK_THROWS_AS(validate(bad_dim), Error);
}
