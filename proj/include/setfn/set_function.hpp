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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "setfn/rng.hpp"
#include "setfn/set_core.hpp"

namespace setfn {

/// A nonnegative set-function on 2^n, stored as a table indexed by subset
/// encoding. values[0] = 0 is enforced; monotonicity is not.
class SetFunction {
 public:
  SetFunction(GroundSet ground, std::vector<double> values);

  static SetFunction from_function(const GroundSet& ground,
                                   const std::function<double(Subset)>& fn);
  /// The additive set-function with the given atom weights.
  static SetFunction from_weights(const GroundSet& ground, std::span<const double> weights);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n(); }
  double operator()(Subset a) const { return values_[a.bits()]; }
  double total() const { return values_.back(); }
  std::span<const double> values() const { return values_; }

 private:
  GroundSet ground_;
  std::vector<double> values_;
};

struct Violation {
  enum class Kind { Monotone, Subadditive, Superadditive };
  Kind kind;
  Subset a;
  Subset b;
};

struct ClassificationReport {
  bool monotone = false;
  bool submeasure = false;
  bool supermeasure = false;
  bool measure = false;
  bool normalized = false;
  std::optional<double> lower_exponent;
  std::optional<double> upper_exponent;
  /// First few witnesses per failed property.
  std::vector<Violation> violations;
};

/// Exhaustive classification. Inequalities are checked with slack
/// tol * max(1, phi(A u B)).
ClassificationReport classify(const SetFunction& phi, double tol = 1e-9);

/// Critical exponents of the lower and upper estimates.
///
/// `lower` is the least p with phi^p superadditive on every disjoint pair
/// (0 when every p > 0 works, nullopt when none does); `upper` is the largest
/// p with phi^p subadditive (+inf when unconstrained, nullopt when no p > 0
/// works). Throws Precondition for a non-monotone phi.
struct ExponentEstimate {
  std::optional<double> lower;
  std::optional<double> upper;
};
ExponentEstimate estimate_exponents(const SetFunction& phi, double tol = 1e-10);

/// Direct pairwise checks of phi^p superadditive / subadditive.
bool has_lower_estimate(const SetFunction& phi, double p, double tol = 1e-9);
bool has_upper_estimate(const SetFunction& phi, double p, double tol = 1e-9);
bool is_monotone(const SetFunction& phi, double tol = 1e-12);

SetFunction power(const SetFunction& phi, double s);
SetFunction scale(const SetFunction& phi, double c);
SetFunction normalize(const SetFunction& phi);
/// A -> phi(A n F).
SetFunction restrict_to(const SetFunction& phi, Subset f);

/// 2 (2^p - 1)^(-1/p) - 1.
double kp_constant(double p);

/// A -> (nu(A) / nu(Omega))^beta.
SetFunction measure_power(const GroundSet& ground, std::span<const double> weights,
                          double beta);

enum class SubmeasureFamily { MeasurePower, Floor, PerturbRepair };
enum class SupermeasureFamily { MeasurePower, Mixture, PerturbRepair };

inline constexpr int kDefaultAttempts = 10000;

/// Normalized submeasure with a verified lower p-estimate (p > 1).
SetFunction random_submeasure_lower_p(const GroundSet& ground, double p, std::uint64_t seed,
                                      SubmeasureFamily family,
                                      int max_attempts = kDefaultAttempts);

/// Normalized supermeasure with a verified upper p-estimate (0 < p < 1).
/// Atoms are null with probability 1/5, keeping at least two non-null atoms.
SetFunction random_supermeasure_upper_p(const GroundSet& ground, double p, std::uint64_t seed,
                                        SupermeasureFamily family,
                                        int max_attempts = kDefaultAttempts);

/// Monotone closure by an upward pass over the lattice.
SetFunction monotone_repair(const SetFunction& phi);
/// Largest subadditive minorant: phi(A) <- min over splits, ascending order.
SetFunction subadditive_repair(const SetFunction& phi);
/// Smallest superadditive majorant: phi(A) <- max over splits.
SetFunction superadditive_repair(const SetFunction& phi);

}  // namespace setfn
