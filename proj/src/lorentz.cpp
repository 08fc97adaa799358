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

#include "setfn/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "setfn/error.hpp"

namespace setfn {

namespace {

void check_params(LorentzParams prm) {
  require(prm.p > 0.0 && prm.q > 0.0 && std::isfinite(prm.p) && std::isfinite(prm.q),
          ErrorCode::InvalidArgument, "Lorentz exponents must be positive and finite");
}

std::vector<std::pair<double, double>> sorted_pairs(std::span<const double> f,
                                                    const AtomicMeasure& mu) {
  require(static_cast<int>(f.size()) == mu.n(), ErrorCode::InvalidArgument,
          "function length must match atom count");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(std::isfinite(f[i]), ErrorCode::InvalidArgument, "function values must be finite");
    const double v = std::abs(f[i]);
    if (v > 0.0 && mu.weight(static_cast<int>(i)) > 0.0)
      out.emplace_back(v, mu.weight(static_cast<int>(i)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

std::vector<Step> merge(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<Step> steps;
  for (const auto& [v, m] : pairs) {
    if (!steps.empty() && steps.back().value == v) steps.back().mass += m;
    else steps.push_back({v, m});
  }
  return steps;
}

}  // namespace

StepFunction::StepFunction(std::vector<Step> steps) : steps_(std::move(steps)) {
  for (std::size_t j = 0; j < steps_.size(); ++j) {
    const Step& s = steps_[j];
    require(std::isfinite(s.value) && s.value >= 0.0, ErrorCode::InvalidArgument,
            "step values must be finite and nonnegative");
    require(std::isfinite(s.mass) && s.mass > 0.0, ErrorCode::InvalidArgument,
            "step masses must be finite and positive");
    require(j == 0 || s.value < steps_[j - 1].value, ErrorCode::InvalidArgument,
            "step values must be strictly decreasing");
  }
}

double StepFunction::total_mass() const {
  double t = 0.0;
  for (const Step& s : steps_) t += s.mass;
  return t;
}

std::vector<double> StepFunction::breakpoints() const {
  std::vector<double> t(steps_.size() + 1, 0.0);
  for (std::size_t j = 0; j < steps_.size(); ++j) t[j + 1] = t[j] + steps_[j].mass;
  return t;
}

StepFunction StepFunction::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), ErrorCode::InvalidArgument,
          "step scale must be positive");
  std::vector<Step> s(steps_);
  for (Step& x : s) x.value *= c;
  return StepFunction(std::move(s));
}

StepFunction rearrange(std::span<const double> f, const AtomicMeasure& mu) {
  return StepFunction(merge(sorted_pairs(f, mu)));
}

StepFunction rearrange_padded(std::span<const double> f, const AtomicMeasure& mu) {
  std::vector<Step> steps = merge(sorted_pairs(f, mu));
  double zero_mass = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == 0.0) zero_mass += mu.weight(static_cast<int>(i));
  if (zero_mass > 0.0) steps.push_back({0.0, zero_mass});
  return StepFunction(std::move(steps));
}

double lpq_norm(const StepFunction& fs, LorentzParams prm) {
  check_params(prm);
  const double h = prm.q / prm.p;
  const std::vector<double> t = fs.breakpoints();
  double sum = 0.0;
  for (std::size_t j = 0; j < fs.size(); ++j)
    sum += std::pow(fs.steps()[j].value, prm.q) * (std::pow(t[j + 1], h) - std::pow(t[j], h));
  return std::pow(sum, 1.0 / prm.q);
}

double lp_weak_norm(const StepFunction& fs, double p) {
  require(p > 0.0 && std::isfinite(p), ErrorCode::InvalidArgument,
          "weak-Lp exponent must be positive");
  const std::vector<double> t = fs.breakpoints();
  double best = 0.0;
  for (std::size_t j = 0; j < fs.size(); ++j)
    best = std::max(best, fs.steps()[j].value * std::pow(t[j + 1], 1.0 / p));
  return best;
}

double lambda_sup_norm(const StepFunction& fs, LorentzParams prm) {
  check_params(prm);
  require(prm.p < prm.q, ErrorCode::Precondition,
          "supremum-form Lambda norm requires p < q");
  const double h = prm.q / prm.p;
  const std::vector<double> t = fs.breakpoints();
  const std::size_t m = fs.size();
  // best[j]: optimum over chains ending at T_j; the block (T_i, T_j] scores
  // with the left limit v_j.
  std::vector<double> best(m + 1, 0.0);
  double answer = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double vq = std::pow(fs.steps()[j - 1].value, prm.q);
    double b = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + vq * std::pow(t[j] - t[i], h));
    best[j] = b;
    answer = std::max(answer, b);
  }
  return std::pow(answer, 1.0 / prm.q);
}

double lambda_inf_norm(const StepFunction& fs, LorentzParams prm) {
  check_params(prm);
  require(prm.q < prm.p, ErrorCode::Precondition,
          "infimum-form Lambda norm requires q < p");
  const double h = prm.q / prm.p;
  const std::vector<double> t = fs.breakpoints();
  const std::size_t m = fs.size();
  if (m == 0) return 0.0;
  // The block (T_i, T_j] scores with the right limit at T_i, namely v_{i+1}.
  std::vector<double> best(m + 1, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 0; i < j; ++i)
      best[j] = std::min(best[j],
                         best[i] + std::pow(fs.steps()[i].value, prm.q) * std::pow(t[j] - t[i], h));
  return std::pow(best[m], 1.0 / prm.q);
}

double lambda_sup_norm_partition(std::span<const double> f, const AtomicMeasure& mu,
                                 LorentzParams prm) {
  check_params(prm);
  require(prm.p < prm.q, ErrorCode::Precondition,
          "supremum-form Lambda norm requires p < q");
  require(mu.n() <= kMaxPartitionNormAtoms, ErrorCode::InvalidArgument,
          "exhaustive partition form supports at most 6 atoms");
  require(static_cast<int>(f.size()) == mu.n(), ErrorCode::InvalidArgument,
          "function length must match atom count");
  std::uint32_t support = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) support |= 1u << i;
  if (support == 0) return 0.0;
  const double h = prm.q / prm.p;
  double best = 0.0;
  for (const Partition& part : enumerate_partitions(Subset(support))) {
    double sum = 0.0;
    for (Subset block : part.blocks) {
      double lo = std::numeric_limits<double>::infinity();
      for (int i : block.atoms()) lo = std::min(lo, std::abs(f[i]));
      sum += std::pow(lo, prm.q) * std::pow(mu(block), h);
    }
    best = std::max(best, sum);
  }
  return std::pow(best, 1.0 / prm.q);
}

double lambda_inf_norm_partition(std::span<const double> f, const AtomicMeasure& mu,
                                 LorentzParams prm) {
  check_params(prm);
  require(prm.q < prm.p, ErrorCode::Precondition,
          "infimum-form Lambda norm requires q < p");
  require(mu.n() <= kMaxPartitionNormAtoms, ErrorCode::InvalidArgument,
          "exhaustive partition form supports at most 6 atoms");
  require(static_cast<int>(f.size()) == mu.n(), ErrorCode::InvalidArgument,
          "function length must match atom count");
  const double h = prm.q / prm.p;
  double best = std::numeric_limits<double>::infinity();
  for (const Partition& part : enumerate_partitions(mu.ground().full())) {
    double sum = 0.0;
    for (Subset block : part.blocks) {
      double hi = 0.0;
      for (int i : block.atoms()) hi = std::max(hi, std::abs(f[i]));
      sum += std::pow(hi, prm.q) * std::pow(mu(block), h);
    }
    best = std::min(best, sum);
  }
  return std::pow(best, 1.0 / prm.q);
}

double lambda_norm(std::span<const double> f, const AtomicMeasure& mu, LorentzParams prm) {
  check_params(prm);
  require(prm.p != prm.q, ErrorCode::Precondition, "Lambda norm requires p != q");
  if (prm.p < prm.q) return lambda_sup_norm(rearrange(f, mu), prm);
  return lambda_inf_norm(rearrange_padded(f, mu), prm);
}

ComparisonConstants comparison_constants(LorentzParams prm) {
  check_params(prm);
  require(prm.p != prm.q, ErrorCode::Precondition, "comparison constants require p != q");
  if (prm.p < prm.q) {
    const double theta = prm.q / prm.p - 1.0;
    const double c = std::pow(1.0 + theta, 2.0 * (1.0 + theta)) * std::pow(theta, -theta);
    return {1.0, std::pow(c, 1.0 / prm.q)};
  }
  const double theta = prm.p / prm.q - 1.0;
  const double c = std::pow(1.0 + theta, -2.0 - theta) * std::pow(theta, theta);
  return {std::pow(c, 1.0 / prm.p), 1.0};
}

StepFunction random_step_function(Rng& rng) {
  const int m = rng.integer(1, 8);
  std::vector<double> values;
  while (static_cast<int>(values.size()) < m) {
    const double v = rng.log_uniform(1e-2, 1e2);
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<Step> steps;
  for (double v : values) steps.push_back({v, rng.uniform_open_low(0.0, 2.0)});
  return StepFunction(std::move(steps));
}

}  // namespace setfn
