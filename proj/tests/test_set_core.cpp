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
#include <map>
#include <set>
#include <vector>

#include "setfn/rng.hpp"
#include "setfn/set_core.hpp"

using namespace setfn;

namespace {

// Restricted growth strings enumerate set partitions independently of the
// library's recursion.
std::vector<std::vector<Subset>> partitions_by_rgs(int n) {
  std::vector<std::vector<Subset>> out;
  std::vector<int> a(n, 0);
  while (true) {
    int k = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<Subset> blocks(k);
    for (int i = 0; i < n; ++i) blocks[a[i]] = blocks[a[i]] | Subset::singleton(i);
    out.push_back(blocks);
    int i = n - 1;
    while (i > 0) {
      int m = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= m) break;
      --i;
    }
    if (i == 0) break;
    ++a[i];
    std::fill(a.begin() + i + 1, a.end(), 0);
  }
  return out;
}

}  // namespace

TEST_CASE("subset algebra") {
  const Subset a(0b1011), b(0b0110);
  CHECK((a | b).bits() == 0b1111u);
  CHECK((a & b).bits() == 0b0010u);
  CHECK((a - b).bits() == 0b1001u);
  CHECK(a.size() == 3);
  CHECK(a.lowest() == 0);
  CHECK(a.atoms() == std::vector<int>{0, 1, 3});
  CHECK(Subset(0b0010).subset_of(a));
  CHECK(Subset(0b1000).disjoint(b));
  CHECK(Subset::full(5).bits() == 31u);
}

TEST_CASE("submask enumeration visits every submask once") {
  const Subset s(0b101101);
  std::set<std::uint32_t> seen;
  int count = 0;
  for_each_submask(s, [&](Subset t) {
    CHECK(t.subset_of(s));
    seen.insert(t.bits());
    ++count;
  });
  CHECK(count == 16);
  CHECK(seen.size() == 16u);
}

TEST_CASE("partition counts are Bell numbers") {
  const int bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
  for (int n = 1; n <= 7; ++n) {
    const auto parts = enumerate_partitions(Subset::full(n));
    CHECK(static_cast<int>(parts.size()) == bell[n]);
    for (const auto& p : parts) CHECK(p.valid());
    CHECK(static_cast<int>(partitions_by_rgs(n).size()) == bell[n]);
  }
}

TEST_CASE("best partition matches exhaustive search") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(1, 6);
    std::vector<double> score(std::size_t{1} << n);
    for (auto& v : score) v = rng.uniform(-1.0, 2.0);
    score[0] = 0.0;
    double best_max = -1e300, best_min = 1e300;
    for (const auto& blocks : partitions_by_rgs(n)) {
      double s = 0.0;
      for (Subset b : blocks) s += score[b.bits()];
      best_max = std::max(best_max, s);
      best_min = std::min(best_min, s);
    }
    const auto mx = best_partition(Subset::full(n), score, Optimize::Max);
    const auto mn = best_partition(Subset::full(n), score, Optimize::Min);
    CHECK(mx.value == doctest::Approx(best_max).epsilon(1e-12));
    CHECK(mn.value == doctest::Approx(best_min).epsilon(1e-12));
    double sum = 0.0;
    for (Subset b : mx.partition.blocks) sum += score[b.bits()];
    CHECK(sum == doctest::Approx(mx.value).epsilon(1e-12));
    CHECK(mx.partition.valid());

    const auto table = partition_table(Subset::full(n), score, Optimize::Max);
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      const auto sub = best_partition(Subset(m), score, Optimize::Max);
      CHECK(table[m] == doctest::Approx(sub.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("callback and table forms agree") {
  std::vector<double> score(16);
  for (std::uint32_t m = 1; m < 16; ++m) score[m] = static_cast<double>(std::popcount(m) % 3) - 0.5;
  const auto a = best_partition(Subset::full(4), score, Optimize::Min);
  const auto b = best_partition(Subset::full(4), [&](Subset s) { return score[s.bits()]; },
                                Optimize::Min);
  CHECK(a.value == doctest::Approx(b.value));
}
