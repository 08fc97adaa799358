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

#include "setfn/set_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "setfn/error.hpp"

namespace setfn {

std::vector<int> Subset::atoms() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

GroundSet::GroundSet(int n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  require(n >= 1 && n <= kMaxAtoms, ErrorCode::InvalidArgument,
          "ground set size must be in [1, 16], got " + std::to_string(n));
  require(labels_.empty() || static_cast<int>(labels_.size()) == n,
          ErrorCode::InvalidArgument, "label count must match atom count");
}

bool Partition::valid() const {
  std::uint32_t seen = 0;
  for (Subset b : blocks) {
    if (b.empty() || (b.bits() & seen) != 0) return false;
    seen |= b.bits();
  }
  return seen == carrier.bits();
}

std::vector<Subset> enumerate_subsets(const GroundSet& g) {
  std::vector<Subset> out;
  out.reserve(g.subset_count());
  for (std::uint32_t s = 0; s < g.subset_count(); ++s) out.emplace_back(s);
  return out;
}

namespace {

void partitions_rec(Subset rest, std::vector<Subset>& current, Subset carrier,
                    std::vector<Partition>& out) {
  if (rest.empty()) {
    out.push_back(Partition{carrier, current});
    return;
  }
  const Subset low = Subset::singleton(rest.lowest());
  const Subset others = rest - low;
  for_each_submask(others, [&](Subset extra) {
    const Subset block = low | extra;
    current.push_back(block);
    partitions_rec(rest - block, current, carrier, out);
    current.pop_back();
  });
}

std::vector<double> tabulate(Subset carrier, const BlockScore& score) {
  std::vector<double> table(std::size_t{carrier.bits()} + 1,
                            std::numeric_limits<double>::quiet_NaN());
  for_each_submask(carrier, [&](Subset s) {
    if (!s.empty()) table[s.bits()] = score(s);
  });
  return table;
}

struct Table {
  std::vector<double> value;
  std::vector<std::uint32_t> choice;  // block containing the lowest atom
};

Table solve(Subset carrier, std::span<const double> score, Optimize mode, bool keep_choice) {
  require(score.size() > carrier.bits(), ErrorCode::InvalidArgument,
          "block score table too small for carrier");
  const std::size_t size = std::size_t{carrier.bits()} + 1;
  Table t;
  t.value.assign(size, std::numeric_limits<double>::quiet_NaN());
  if (keep_choice) t.choice.assign(size, 0);
  t.value[0] = 0.0;
  const bool maximize = mode == Optimize::Max;
  for_each_submask(carrier, [&](Subset a) {
    if (a.empty()) return;
    if (!std::isfinite(score[a.bits()]))
      fail(ErrorCode::InvalidArgument,
           "block score is not finite on subset " + std::to_string(a.bits()));
    const Subset low = Subset::singleton(a.lowest());
    const Subset rest = a - low;
    double best = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    std::uint32_t best_block = 0;
    // Descending over submasks of the remainder; the first optimum wins.
    std::uint32_t b = rest.bits();
    while (true) {
      const std::uint32_t block = b | low.bits();
      const double cand = score[block] + t.value[a.bits() & ~block];
      if (maximize ? cand > best : cand < best) {
        best = cand;
        best_block = block;
      }
      if (b == 0) break;
      b = (b - 1) & rest.bits();
    }
    t.value[a.bits()] = best;
    if (keep_choice) t.choice[a.bits()] = best_block;
  });
  return t;
}

}  // namespace

std::vector<Partition> enumerate_partitions(Subset carrier) {
  require(!carrier.empty(), ErrorCode::InvalidArgument, "cannot partition the empty set");
  std::vector<Partition> out;
  std::vector<Subset> current;
  partitions_rec(carrier, current, carrier, out);
  return out;
}

std::vector<double> partition_table(Subset carrier, std::span<const double> block_score,
                                    Optimize mode) {
  return solve(carrier, block_score, mode, false).value;
}

PartitionOptimum best_partition(Subset carrier, std::span<const double> block_score,
                                Optimize mode) {
  require(!carrier.empty(), ErrorCode::InvalidArgument, "cannot partition the empty set");
  const Table t = solve(carrier, block_score, mode, true);
  PartitionOptimum out;
  out.value = t.value[carrier.bits()];
  out.partition.carrier = carrier;
  for (std::uint32_t a = carrier.bits(); a != 0; a &= ~t.choice[a])
    out.partition.blocks.emplace_back(t.choice[a]);
  return out;
}

PartitionOptimum best_partition(Subset carrier, const BlockScore& score, Optimize mode) {
  require(!carrier.empty(), ErrorCode::InvalidArgument, "cannot partition the empty set");
  const std::vector<double> table = tabulate(carrier, score);
  return best_partition(carrier, table, mode);
}

}  // namespace setfn
