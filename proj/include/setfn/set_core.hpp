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

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace setfn {

/// Largest supported ground set. Set-function tables hold 2^n entries and
/// partition dynamic programs touch 3^n (block, remainder) pairs.
inline constexpr int kMaxAtoms = 16;

/// A subset of a finite ground set, encoded with atom i at bit i.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static constexpr Subset singleton(int atom) { return Subset(1u << atom); }
  static constexpr Subset full(int n) { return Subset((1u << n) - 1u); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int atom) const { return (bits_ >> atom) & 1u; }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(Subset other) const { return (bits_ & other.bits_) == 0; }
  int size() const { return std::popcount(bits_); }
  /// Index of the lowest atom; undefined for the empty set.
  int lowest() const { return std::countr_zero(bits_); }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  /// Set difference.
  constexpr Subset operator-(Subset o) const { return Subset(bits_ & ~o.bits_); }
  constexpr auto operator<=>(const Subset&) const = default;

  std::vector<int> atoms() const;

 private:
  std::uint32_t bits_ = 0;
};

class GroundSet {
 public:
  explicit GroundSet(int n, std::vector<std::string> labels = {});

  int n() const { return n_; }
  /// Number of subsets, 2^n.
  std::size_t subset_count() const { return std::size_t{1} << n_; }
  Subset full() const { return Subset::full(n_); }
  bool contains(Subset s) const { return s.subset_of(full()); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const GroundSet& o) const { return n_ == o.n_; }

 private:
  int n_;
  std::vector<std::string> labels_;
};

/// Pairwise disjoint nonempty blocks whose union is the carrier.
struct Partition {
  Subset carrier;
  std::vector<Subset> blocks;

  bool valid() const;
};

/// Calls fn(sub) for every submask of `set`, in ascending encoding order,
/// starting with the empty set.
template <class Fn>
void for_each_submask(Subset set, Fn&& fn) {
  const std::uint32_t c = set.bits();
  std::uint32_t s = 0;
  while (true) {
    fn(Subset(s));
    if (s == c) break;
    s = (s - c) & c;
  }
}

std::vector<Subset> enumerate_subsets(const GroundSet& g);

/// Every partition of a nonempty carrier, each exactly once.
std::vector<Partition> enumerate_partitions(Subset carrier);

enum class Optimize { Max, Min };

struct PartitionOptimum {
  double value = 0.0;
  Partition partition;
};

using BlockScore = std::function<double(Subset)>;

/// Optimum of sum(score(block)) over all partitions of `carrier`.
///
/// The dynamic program fixes the block containing the lowest atom of each
/// sub-carrier, so every partition is reached exactly once and the total
/// work is 3^|carrier|. The score is evaluated once per nonempty submask.
PartitionOptimum best_partition(Subset carrier, const BlockScore& score, Optimize mode);

/// Table form: `block_score[A.bits()]` scores block A. Entries outside the
/// submasks of `carrier` are never read.
PartitionOptimum best_partition(Subset carrier, std::span<const double> block_score,
                                Optimize mode);

/// Optimal partition values for every submask of `carrier` at once:
/// result[A.bits()] is the optimum over partitions of A for A a submask of
/// `carrier` (result[0] = 0). The result has carrier.bits() + 1 entries;
/// entries that are not submasks of `carrier` are NaN.
std::vector<double> partition_table(Subset carrier, std::span<const double> block_score,
                                    Optimize mode);

}  // namespace setfn
