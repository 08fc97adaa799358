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

#include <span>
#include <vector>

#include "setfn/measure_lp.hpp"
#include "setfn/rng.hpp"

namespace setfn {

struct Step {
  double value;
  double mass;
};

/// Decreasing step profile: value v_j on [T_{j-1}, T_j).
class StepFunction {
 public:
  StepFunction() = default;
  /// Values must be strictly decreasing and nonnegative, masses positive.
  explicit StepFunction(std::vector<Step> steps);

  std::span<const Step> steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  double total_mass() const;
  /// Cumulative masses T_0 = 0, T_1, ..., T_m.
  std::vector<double> breakpoints() const;
  StepFunction scaled(double c) const;

 private:
  std::vector<Step> steps_;
};

struct LorentzParams {
  double p;
  double q;
};

/// Decreasing rearrangement of |f| with respect to mu. Atoms where f or mu
/// vanishes are dropped.
StepFunction rearrange(std::span<const double> f, const AtomicMeasure& mu);

/// As rearrange, followed by a zero-value block carrying the mass of the
/// atoms where f vanishes, so that the profile ends at mu(Omega).
StepFunction rearrange_padded(std::span<const double> f, const AtomicMeasure& mu);

double lpq_norm(const StepFunction& fs, LorentzParams prm);
double lp_weak_norm(const StepFunction& fs, double p);

/// Supremum form (p < q), maximized over chains of breakpoints.
double lambda_sup_norm(const StepFunction& fs, LorentzParams prm);
/// Infimum form (q < p), minimized over breakpoint chains ending at the
/// total mass of `fs`; pass a padded rearrangement.
double lambda_inf_norm(const StepFunction& fs, LorentzParams prm);

inline constexpr int kMaxPartitionNormAtoms = 6;

/// Exhaustive partition forms over at most six atoms.
double lambda_sup_norm_partition(std::span<const double> f, const AtomicMeasure& mu,
                                 LorentzParams prm);
double lambda_inf_norm_partition(std::span<const double> f, const AtomicMeasure& mu,
                                 LorentzParams prm);

/// Lambda or L norm of f over an atomic measure, choosing the Lambda regime
/// from p, q.
double lambda_norm(std::span<const double> f, const AtomicMeasure& mu, LorentzParams prm);

/// Bounds on L / Lambda: lower <= L / Lambda <= upper. For p < q the lower
/// bound is 1, for q < p the upper bound is 1.
struct ComparisonConstants {
  double lower;
  double upper;
};
ComparisonConstants comparison_constants(LorentzParams prm);

/// m in [1, 8] steps, values log-uniform in [1e-2, 1e2], masses in (0, 2].
StepFunction random_step_function(Rng& rng);

}  // namespace setfn
