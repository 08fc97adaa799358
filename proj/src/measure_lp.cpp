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

#include "setfn/measure_lp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "setfn/error.hpp"
#include "setfn/simplex.hpp"

namespace setfn {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kZeroWeight = 1e-14;

struct DenseLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

SimplexResult<double> solve(const DenseLp& lp, const LpOptions& opt) {
  if (!opt.exact)
    return simplex_maximize<double>(lp.rows, lp.cols, lp.a, lp.b, lp.c, kPivotEps,
                                    opt.max_iterations);
  auto to_q = [](const std::vector<double>& v) {
    std::vector<mpq_class> out;
    out.reserve(v.size());
    for (double x : v) out.emplace_back(x);
    return out;
  };
  const SimplexResult<mpq_class> q = simplex_maximize<mpq_class>(
      lp.rows, lp.cols, to_q(lp.a), to_q(lp.b), to_q(lp.c), mpq_class(0), opt.max_iterations);
  SimplexResult<double> out;
  out.status = q.status;
  out.iterations = q.iterations;
  out.objective = q.objective.get_d();
  for (const mpq_class& v : q.x) out.x.push_back(v.get_d());
  for (const mpq_class& v : q.y) out.y.push_back(v.get_d());
  return out;
}

double clamp_weight(double w) { return w < kZeroWeight ? 0.0 : w; }

void check_lp_input(const SetFunction& phi, const LpOptions& opt) {
  require(is_monotone(phi), ErrorCode::Precondition,
          "measure extraction requires a monotone set-function");
  require(!opt.exact || phi.n() <= kMaxExactAtoms, ErrorCode::InvalidArgument,
          "exact rational mode supports at most 8 atoms");
  require(opt.tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
}

/// Fills residual and active set; `upper` selects lambda <= phi constraints.
void finish(LpSolution& sol, const SetFunction& phi, bool upper, double tol) {
  sol.objective = sol.measure.total();
  sol.residual = 0.0;
  sol.active.clear();
  for (std::uint32_t s = 1; s < phi.ground().subset_count(); ++s) {
    const Subset a(s);
    const double gap = upper ? sol.measure(a) - phi(a) : phi(a) - sol.measure(a);
    sol.residual = std::max(sol.residual, gap);
    if (std::abs(gap) <= tol * std::max(1.0, phi(a))) sol.active.push_back(a);
  }
}

}  // namespace

AtomicMeasure::AtomicMeasure(GroundSet ground, std::vector<double> weights)
    : ground_(std::move(ground)), weights_(std::move(weights)) {
  require(static_cast<int>(weights_.size()) == ground_.n(), ErrorCode::InvalidArgument,
          "measure needs one weight per atom");
  for (double w : weights_)
    require(std::isfinite(w) && w >= 0.0, ErrorCode::InvalidArgument,
            "measure weights must be finite and nonnegative");
}

AtomicMeasure AtomicMeasure::uniform(const GroundSet& ground) {
  return AtomicMeasure(ground, std::vector<double>(ground.n(), 1.0 / ground.n()));
}

double AtomicMeasure::operator()(Subset a) const {
  double s = 0.0;
  for (std::uint32_t b = a.bits(); b != 0; b &= b - 1) s += weights_[std::countr_zero(b)];
  return s;
}

double AtomicMeasure::total() const { return (*this)(ground_.full()); }

SetFunction AtomicMeasure::as_set_function() const {
  return SetFunction::from_weights(ground_, weights_);
}

AtomicMeasure AtomicMeasure::scaled(double c) const {
  std::vector<double> w(weights_);
  for (double& x : w) x *= c;
  return AtomicMeasure(ground_, std::move(w));
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "?";
}

LpSolution max_dominated_measure(const SetFunction& phi, const LpOptions& opt) {
  check_lp_input(phi, opt);
  const int n = phi.n();
  DenseLp lp;
  lp.rows = phi.ground().subset_count() - 1;
  lp.cols = n;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.resize(lp.rows);
  lp.c.assign(n, 1.0);
  for (std::size_t r = 0; r < lp.rows; ++r) {
    const std::uint32_t s = static_cast<std::uint32_t>(r + 1);
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) lp.a[r * lp.cols + i] = 1.0;
    lp.b[r] = phi(Subset(s));
  }
  const SimplexResult<double> res = solve(lp, opt);

  LpSolution sol(AtomicMeasure(phi.ground(), std::vector<double>(n, 0.0)));
  sol.iterations = res.iterations;
  if (res.status != SimplexStatus::Optimal) {
    sol.status = LpStatus::NumericalFailure;
    return sol;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = clamp_weight(res.x[i]);
  sol.measure = AtomicMeasure(phi.ground(), std::move(w));
  sol.status = LpStatus::Optimal;
  sol.dual.assign(phi.ground().subset_count(), 0.0);
  for (std::size_t r = 0; r < lp.rows; ++r) sol.dual[r + 1] = res.y[r];
  finish(sol, phi, true, opt.tol);
  return sol;
}

LpSolution min_dominating_measure(const SetFunction& phi, bool enforce_continuity,
                                  const LpOptions& opt) {
  check_lp_input(phi, opt);
  const int n = phi.n();
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (!enforce_continuity || phi(Subset::singleton(i)) > 0.0) kept.push_back(i);
  std::uint32_t kept_mask = 0;
  for (int i : kept) kept_mask |= 1u << i;

  LpSolution sol(AtomicMeasure(phi.ground(), std::vector<double>(n, 0.0)));
  // Subsets with phi = 0 only repeat w >= 0 and are left out of the dual.
  std::vector<std::uint32_t> columns;
  for (std::uint32_t s = 1; s < phi.ground().subset_count(); ++s) {
    if (phi(Subset(s)) <= 0.0) continue;
    if ((s & kept_mask) == 0) {
      sol.status = LpStatus::Infeasible;  // positive phi on a set of forced-null atoms
      return sol;
    }
    columns.push_back(s);
  }
  sol.dual.assign(phi.ground().subset_count(), 0.0);
  if (columns.empty()) {
    sol.status = LpStatus::Optimal;
    finish(sol, phi, false, opt.tol);
    return sol;
  }

  DenseLp lp;
  lp.rows = kept.size();
  lp.cols = columns.size();
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 1.0);
  lp.c.resize(lp.cols);
  for (std::size_t j = 0; j < lp.cols; ++j) {
    lp.c[j] = phi(Subset(columns[j]));
    for (std::size_t r = 0; r < lp.rows; ++r)
      if ((columns[j] >> kept[r]) & 1u) lp.a[r * lp.cols + j] = 1.0;
  }
  const SimplexResult<double> res = solve(lp, opt);
  sol.iterations = res.iterations;
  if (res.status == SimplexStatus::Unbounded) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  if (res.status != SimplexStatus::Optimal) {
    sol.status = LpStatus::NumericalFailure;
    return sol;
  }
  std::vector<double> w(n, 0.0);
  for (std::size_t r = 0; r < lp.rows; ++r) w[kept[r]] = clamp_weight(res.y[r]);
  sol.measure = AtomicMeasure(phi.ground(), std::move(w));
  sol.status = LpStatus::Optimal;
  for (std::size_t j = 0; j < lp.cols; ++j) sol.dual[columns[j]] = res.x[j];
  finish(sol, phi, false, opt.tol);
  return sol;
}

SetFunction envelope_supermeasure(const SetFunction& phi, double q) {
  require(q >= 1.0 && std::isfinite(q), ErrorCode::InvalidArgument,
          "envelope exponent must satisfy q >= 1");
  require(is_monotone(phi), ErrorCode::Precondition,
          "envelope requires a monotone set-function");
  std::vector<double> score(phi.ground().subset_count());
  for (std::size_t s = 0; s < score.size(); ++s) score[s] = std::pow(phi.values()[s], q);
  std::vector<double> table = partition_table(phi.ground().full(), score, Optimize::Max);
  return SetFunction(phi.ground(), std::move(table));
}

AtomicMeasure equivalent_measure(const SetFunction& phi, double q, double c, double tol) {
  require(c > 0.0 && c <= 1.0, ErrorCode::InvalidArgument,
          "lower-estimate constant must lie in (0, 1]");
  const SetFunction psi = envelope_supermeasure(phi, q);
  const double cq = std::pow(c, q);
  for (std::uint32_t s = 1; s < phi.ground().subset_count(); ++s) {
    const double target = std::pow(phi(Subset(s)), q);
    if (cq * psi(Subset(s)) > target + tol * std::max(1.0, target))
      fail(ErrorCode::Precondition,
           "crude lower estimate fails: c^q psi(A) > phi(A)^q at subset " + std::to_string(s));
  }
  if (psi.total() <= 0.0) return AtomicMeasure(phi.ground(), std::vector<double>(phi.n(), 0.0));
  const LpSolution sol = min_dominating_measure(normalize(psi), true);
  require(sol.status == LpStatus::Optimal, ErrorCode::Infeasible,
          std::string("continuous dominating measure: LP ") + to_string(sol.status));
  return sol.measure.scaled(psi.total());
}

bool check_equivalence(const SetFunction& phi, const AtomicMeasure& mu) {
  if (!(phi.ground() == mu.ground())) return false;
  for (std::uint32_t s = 1; s < phi.ground().subset_count(); ++s)
    if ((phi(Subset(s)) == 0.0) != (mu(Subset(s)) == 0.0)) return false;
  return true;
}

}  // namespace setfn
