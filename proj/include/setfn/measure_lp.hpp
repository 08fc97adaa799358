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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "setfn/set_function.hpp"

namespace setfn {

/// Additive set-function given by nonnegative atom weights.
class AtomicMeasure {
 public:
  AtomicMeasure(GroundSet ground, std::vector<double> weights);

  static AtomicMeasure uniform(const GroundSet& ground);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n(); }
  std::span<const double> weights() const { return weights_; }
  double weight(int atom) const { return weights_[atom]; }
  double operator()(Subset a) const;
  double total() const;
  SetFunction as_set_function() const;
  AtomicMeasure scaled(double c) const;

 private:
  GroundSet ground_;
  std::vector<double> weights_;
};

enum class LpStatus { Optimal, Infeasible, NumericalFailure };

const char* to_string(LpStatus s);

struct LpOptions {
  double tol = 1e-9;
  /// Rational pivoting; allowed for n <= 8.
  bool exact = false;
  long max_iterations = 1000000;
};

struct LpSolution {
  explicit LpSolution(AtomicMeasure m) : measure(std::move(m)) {}

  AtomicMeasure measure;
  double objective = 0.0;
  LpStatus status = LpStatus::NumericalFailure;
  /// Subsets whose constraint holds with equality (within tol).
  std::vector<Subset> active;
  /// Largest constraint violation of the returned measure.
  double residual = 0.0;
  /// Multiplier per subset constraint, indexed by encoding (entry 0 unused).
  std::vector<double> dual;
  long iterations = 0;
};

inline constexpr int kMaxExactAtoms = 8;

/// maximize lambda(Omega) subject to lambda(A) <= phi(A) for every A.
LpSolution max_dominated_measure(const SetFunction& phi, const LpOptions& opt = {});

/// minimize lambda(Omega) subject to lambda(A) >= phi(A) for every A. With
/// `enforce_continuity`, atoms with phi({i}) = 0 carry no weight, so that
/// phi(A) = 0 implies lambda(A) = 0.
///
/// Solved through its dual  maximize sum phi(A) y_A  s.t.  sum_{A ni i} y_A <= 1;
/// the weights are the dual's row multipliers.
LpSolution min_dominating_measure(const SetFunction& phi, bool enforce_continuity,
                                  const LpOptions& opt = {});

/// A -> max over partitions of A of sum phi(block)^q.
SetFunction envelope_supermeasure(const SetFunction& phi, double q);

/// A measure with the same null sets as phi, through the envelope of phi^q.
/// Throws Precondition naming the first subset where c^q psi <= phi^q fails.
AtomicMeasure equivalent_measure(const SetFunction& phi, double q, double c,
                                 double tol = 1e-9);

/// True iff phi and mu vanish on exactly the same subsets.
bool check_equivalence(const SetFunction& phi, const AtomicMeasure& mu);

}  // namespace setfn
