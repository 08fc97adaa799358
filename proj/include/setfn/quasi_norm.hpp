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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "setfn/measure_lp.hpp"

namespace setfn {

class NormModel;
struct NormDescription;

/// Crude disjoint-sum estimates of a quasi-norm:
///   ||f_1 + ... + f_n|| <= a (sum ||f_i||^upper)^(1/upper)
///   b ||f_1 + ... + f_n|| >= (sum ||f_i||^lower)^(1/lower)
struct EstimateProfile {
  double upper_exponent;
  double lower_exponent;
  double a;
  double b;
};

/// Shared immutable handle to a quasi-norm on functions over n atoms.
/// Evaluation always applies the norm to |f|.
class QuasiNormSpec {
 public:
  explicit QuasiNormSpec(std::shared_ptr<const NormModel> model);

  int n() const;
  double operator()(std::span<const double> f) const;
  /// Entry A.bits() is ||f chi_A||, for every subset A.
  std::vector<double> restriction_table(std::span<const double> f) const;
  NormDescription describe() const;
  std::optional<EstimateProfile> estimates() const;
  const NormModel& model() const { return *model_; }

 private:
  std::shared_ptr<const NormModel> model_;
};

/// Structural parameters of a spec, used for serialization.
struct NormDescription {
  std::string kind;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, std::vector<double>>> arrays;
  std::vector<QuasiNormSpec> children;
  std::vector<std::vector<double>> matrix;
};

class NormModel {
 public:
  virtual ~NormModel() = default;
  virtual int n() const = 0;
  /// f has length n() and nonnegative entries.
  virtual double eval(std::span<const double> f) const = 0;
  virtual std::vector<double> restriction_table(std::span<const double> f) const;
  virtual NormDescription describe() const = 0;
  virtual std::optional<EstimateProfile> estimates() const { return std::nullopt; }
};

/// (sum w_i |f_i|^s)^(1/s).
QuasiNormSpec weighted_ls(double s, std::vector<double> weights);
/// Lambda_{p,q}(mu): supremum form for p < q, infimum form for q < p.
QuasiNormSpec lorentz_lambda(double p, double q, AtomicMeasure mu);
/// L_{p,q}(mu).
QuasiNormSpec lorentz_integral(double p, double q, AtomicMeasure mu);
/// L_{p,infinity}(mu).
QuasiNormSpec weak_lp(double p, AtomicMeasure mu);
QuasiNormSpec max_of(QuasiNormSpec first, QuasiNormSpec second);
QuasiNormSpec scaled(double c, QuasiNormSpec inner);

}  // namespace setfn
