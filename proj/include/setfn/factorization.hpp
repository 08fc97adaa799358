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
#include <span>
#include <utility>
#include <vector>

#include "setfn/quasi_norm.hpp"

namespace setfn {

/// T maps functions on n atoms to m-vectors measured by `codomain`, which is
/// claimed r-normable.
struct OperatorSpec {
  std::vector<std::vector<double>> matrix;
  QuasiNormSpec codomain;
  double r = 1.0;
  double q = 2.0;

  int rows() const { return static_cast<int>(matrix.size()); }
  int cols() const { return matrix.empty() ? 0 : static_cast<int>(matrix.front().size()); }
};

/// Shape, range and finiteness checks; throws InvalidArgument.
void validate(const OperatorSpec& t);

/// ||T f|| in the codomain.
double apply_norm(const OperatorSpec& t, std::span<const double> f);

enum class ZMode {
  /// Block sups attained at sign vertices; needs a Banach codomain (r = 1).
  Exact,
  /// Vertices plus coordinate ascent; a lower bound only.
  Heuristic,
};
const char* to_string(ZMode m);

/// Exact for r = 1, heuristic otherwise.
ZMode default_mode(const OperatorSpec& t);

inline constexpr int kMaxOperatorAtoms = 12;

/// Checks ||y1 + y2||^r <= ||y1||^r + ||y2||^r on random codomain pairs.
bool codomain_r_subadditive(const OperatorSpec& t, int samples, std::uint64_t seed,
                            double tol = 1e-12);

/// Entry A.bits() is ||f chi_A||_Z^q.
std::vector<double> z_table(const OperatorSpec& t, std::span<const double> f, ZMode mode);
double z_norm(const OperatorSpec& t, std::span<const double> f, ZMode mode);
double disjointness_constant(const OperatorSpec& t, ZMode mode);

/// ||.||_Z as a quasi-norm spec, with exact upper r and lower q estimates.
QuasiNormSpec z_quasi_norm(const OperatorSpec& t, ZMode mode);

struct FactorizationOptions {
  /// Exponent for the (iii) inequality; nonpositive means (r + q) / 2.
  double p = 0.0;
  int samples = 100;
  std::uint64_t seed = 7;
  double tol = 1e-9;
};

struct FactorizationCertificate {
  explicit FactorizationCertificate(AtomicMeasure m) : mu(std::move(m)) {}

  AtomicMeasure mu;
  ZMode mode = ZMode::Exact;
  double r = 1.0;
  double q = 2.0;
  double p = 1.5;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  /// C4 / C1.
  double b = 0.0;
  /// The two factors of C4 / C1: K^{1/q} and the Lambda-to-L comparison.
  double kp_factor = 0.0;
  double comparison_factor = 0.0;
  double max_ratio_iv = 0.0;
  int samples = 0;
};

FactorizationCertificate factorization_measure(const OperatorSpec& t,
                                               const FactorizationOptions& opt = {});

struct ConditionReport {
  int samples = 0;
  double max_ratio_ii = 0.0;
  double max_ratio_iii = 0.0;
  double max_ratio_iv = 0.0;
  int violations_ii = 0;
  int violations_iii = 0;
  int violations_iv = 0;

  bool pass() const { return violations_ii == 0 && violations_iii == 0 && violations_iv == 0; }
};

/// Left sides over the constant-free right sides, for sampled f and tuples.
/// Sample k draws from mix_seed(seed, k), so results do not depend on workers.
ConditionReport verify_conditions(const OperatorSpec& t, const FactorizationCertificate& cert,
                                  int samples, std::uint64_t seed, int workers = 1,
                                  double tol = 1e-9);

/// Ratios for one function (iii, iv) and one tuple (ii).
double ratio_iii(const OperatorSpec& t, const FactorizationCertificate& cert,
                 std::span<const double> f);
double ratio_iv(const OperatorSpec& t, const FactorizationCertificate& cert,
                std::span<const double> f);
double ratio_ii(const OperatorSpec& t, const FactorizationCertificate& cert,
                const std::vector<std::vector<double>>& tuple);

/// n <= 8 columns, m <= 6 rows, entries U[-1, 1], Banach codomain.
OperatorSpec random_operator(std::uint64_t seed, double q = 2.0);

}  // namespace setfn
