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

#include "setfn/lorentz.hpp"
#include "setfn/quasi_norm.hpp"
#include "setfn/rng.hpp"

using namespace setfn;

TEST_CASE("weighted l_s evaluates the formula on |f|") {
  const QuasiNormSpec x = weighted_ls(3.0, {1.0, 2.0, 0.5});
  const std::vector<double> f{1.0, -2.0, 4.0};
  const double direct = std::cbrt(1.0 + 2.0 * 8.0 + 0.5 * 64.0);
  CHECK(x(f) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(x.n() == 3);
}

TEST_CASE("combinators") {
  const QuasiNormSpec a = weighted_ls(1.0, {1.0, 1.0});
  const QuasiNormSpec b = weighted_ls(2.0, {4.0, 4.0});
  const std::vector<double> f{3.0, 4.0};
  CHECK(max_of(a, b)(f) == doctest::Approx(10.0));
  CHECK(scaled(2.5, a)(f) == doctest::Approx(17.5));
}

TEST_CASE("restriction tables match direct evaluation") {
  Rng rng(61);
  const AtomicMeasure mu(GroundSet(4), {0.5, 1.0, 1.5, 2.0});
  const std::vector<QuasiNormSpec> specs{lorentz_lambda(1.0, 2.0, mu), lorentz_lambda(2.0, 1.0, mu),
                                         lorentz_integral(1.5, 3.0, mu), weak_lp(2.0, mu),
                                         weighted_ls(1.5, {1, 2, 3, 4})};
  for (const QuasiNormSpec& x : specs) {
    std::vector<double> f(4);
    for (auto& v : f) v = rng.uniform(-2.0, 2.0);
    const auto table = x.restriction_table(f);
    for (std::uint32_t m = 0; m < 16; ++m) {
      std::vector<double> g(4, 0.0);
      for (int i = 0; i < 4; ++i)
        if (m >> i & 1u) g[i] = f[i];
      CHECK(table[m] == doctest::Approx(x(g)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Lorentz specs agree with the Lorentz module") {
  const AtomicMeasure mu(GroundSet(3), {1.0, 0.5, 0.5});
  const std::vector<double> f{1.0, 2.0, 2.0};
  CHECK(lorentz_integral(1.0, 2.0, mu)(f) == doctest::Approx(std::sqrt(7.0)));
  CHECK(lorentz_lambda(1.0, 2.0, mu)(f) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("monotone and homogeneous on random pairs") {
  Rng rng(67);
  const AtomicMeasure mu(GroundSet(5), {1, 1, 2, 3, 5});
  const QuasiNormSpec x = max_of(lorentz_lambda(0.5, 1.5, mu), weighted_ls(2.0, {1, 1, 1, 1, 1}));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(5), g(5);
    for (int i = 0; i < 5; ++i) {
      f[i] = rng.uniform(0.0, 1.0);
      g[i] = f[i] + rng.uniform(0.0, 1.0);
    }
    CHECK(x(f) <= x(g) + 1e-12);
    const double c = rng.uniform(0.1, 5.0);
    std::vector<double> h(f);
    for (auto& v : h) v *= c;
    CHECK(x(h) == doctest::Approx(c * x(f)).epsilon(1e-12));
  }
}
