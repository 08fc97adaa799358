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

#include "setfn/set_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "setfn/error.hpp"

namespace setfn {

namespace {

constexpr std::size_t kMaxWitnessesPerKind = 8;

double slack(double tol, double magnitude) { return tol * std::max(1.0, magnitude); }

/// Calls fn(a, b) once for every unordered pair of disjoint nonempty sets.
template <class Fn>
void for_each_disjoint_pair(int n, Fn&& fn) {
  const std::uint32_t count = 1u << n;
  for (std::uint32_t u = 1; u < count; ++u) {
    if ((u & (u - 1)) == 0) continue;  // singletons have no split
    const Subset whole(u);
    for_each_submask(whole, [&](Subset a) {
      const Subset b = whole - a;
      if (a.empty() || b.empty() || a.bits() > b.bits()) return;
      fn(a, b);
    });
  }
}

/// Root of x^p + y^p = 1 for 0 < x, y < 1 (left side strictly decreasing).
double critical_exponent(double x, double y, double tol) {
  const double lx = std::log(x);
  const double ly = std::log(y);
  auto excess = [&](double p) { return std::exp(p * lx) + std::exp(p * ly) - 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> positive_weights(Rng& rng, int n) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.uniform_open_low(0.1, 1.0);
  return w;
}

std::vector<double> weights_with_nulls(Rng& rng, int n) {
  std::vector<double> w(n);
  int positive = 0;
  for (double& x : w) {
    x = rng.bernoulli(0.2) ? 0.0 : rng.uniform_open_low(0.1, 1.0);
    positive += x > 0.0;
  }
  const int needed = std::min(2, n);
  for (int i = 0; positive < needed; ++i) {
    if (w[i] == 0.0) {
      w[i] = rng.uniform_open_low(0.1, 1.0);
      ++positive;
    }
  }
  return w;
}

SetFunction perturb(const SetFunction& phi, Rng& rng, double amplitude) {
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (std::size_t s = 1; s < v.size(); ++s) v[s] *= 1.0 + amplitude * rng.uniform(-1.0, 1.0);
  return SetFunction(phi.ground(), std::move(v));
}

const char* family_name(SubmeasureFamily f) {
  switch (f) {
    case SubmeasureFamily::MeasurePower: return "measure-power";
    case SubmeasureFamily::Floor: return "floor";
    case SubmeasureFamily::PerturbRepair: return "perturb-repair";
  }
  return "?";
}

const char* family_name(SupermeasureFamily f) {
  switch (f) {
    case SupermeasureFamily::MeasurePower: return "measure-power";
    case SupermeasureFamily::Mixture: return "mixture";
    case SupermeasureFamily::PerturbRepair: return "perturb-repair";
  }
  return "?";
}

}  // namespace

SetFunction::SetFunction(GroundSet ground, std::vector<double> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  require(values_.size() == ground_.subset_count(), ErrorCode::InvalidArgument,
          "set-function needs 2^n = " + std::to_string(ground_.subset_count()) +
              " values, got " + std::to_string(values_.size()));
  for (std::size_t s = 0; s < values_.size(); ++s) {
    require(std::isfinite(values_[s]) && values_[s] >= 0.0, ErrorCode::InvalidArgument,
            "set-function value at subset " + std::to_string(s) +
                " must be finite and nonnegative");
  }
  require(values_[0] == 0.0, ErrorCode::InvalidArgument,
          "set-function must vanish on the empty set");
}

SetFunction SetFunction::from_function(const GroundSet& ground,
                                       const std::function<double(Subset)>& fn) {
  std::vector<double> v(ground.subset_count());
  for (std::uint32_t s = 1; s < v.size(); ++s) v[s] = fn(Subset(s));
  return SetFunction(ground, std::move(v));
}

SetFunction SetFunction::from_weights(const GroundSet& ground, std::span<const double> weights) {
  require(static_cast<int>(weights.size()) == ground.n(), ErrorCode::InvalidArgument,
          "weight count must match atom count");
  std::vector<double> v(ground.subset_count(), 0.0);
  for (std::uint32_t s = 1; s < v.size(); ++s) {
    const Subset a(s);
    v[s] = v[(a - Subset::singleton(a.lowest())).bits()] + weights[a.lowest()];
  }
  return SetFunction(ground, std::move(v));
}

bool is_monotone(const SetFunction& phi, double tol) {
  const std::uint32_t count = phi.ground().subset_count();
  for (std::uint32_t s = 0; s < count; ++s) {
    for (int i = 0; i < phi.n(); ++i) {
      const std::uint32_t t = s | (1u << i);
      if (t != s && phi.values()[s] > phi.values()[t] + slack(tol, phi.values()[t]))
        return false;
    }
  }
  return true;
}

ClassificationReport classify(const SetFunction& phi, double tol) {
  ClassificationReport r;
  const auto v = phi.values();
  std::size_t mono_w = 0;
  r.monotone = true;
  for (std::uint32_t s = 0; s < v.size(); ++s) {
    for (int i = 0; i < phi.n(); ++i) {
      const std::uint32_t t = s | (1u << i);
      if (t == s || v[s] <= v[t] + slack(tol, v[t])) continue;
      r.monotone = false;
      if (mono_w++ < kMaxWitnessesPerKind)
        r.violations.push_back({Violation::Kind::Monotone, Subset(s), Subset(t)});
    }
  }
  bool sub = true;
  bool super = true;
  std::size_t sub_w = 0;
  std::size_t super_w = 0;
  for_each_disjoint_pair(phi.n(), [&](Subset a, Subset b) {
    const double u = phi(a | b);
    const double sum = phi(a) + phi(b);
    const double eps = slack(tol, u);
    if (u > sum + eps) {
      sub = false;
      if (sub_w++ < kMaxWitnessesPerKind)
        r.violations.push_back({Violation::Kind::Subadditive, a, b});
    }
    if (u < sum - eps) {
      super = false;
      if (super_w++ < kMaxWitnessesPerKind)
        r.violations.push_back({Violation::Kind::Superadditive, a, b});
    }
  });
  r.submeasure = r.monotone && sub;
  r.supermeasure = r.monotone && super;
  r.measure = r.submeasure && r.supermeasure;
  r.normalized = std::abs(phi.total() - 1.0) <= tol;
  if (r.monotone) {
    const ExponentEstimate e = estimate_exponents(phi);
    r.lower_exponent = e.lower;
    r.upper_exponent = e.upper;
  }
  return r;
}

ExponentEstimate estimate_exponents(const SetFunction& phi, double tol) {
  require(is_monotone(phi), ErrorCode::Precondition,
          "exponent estimation requires a monotone set-function");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  double upper = kInf;
  for_each_disjoint_pair(phi.n(), [&](Subset a, Subset b) {
    const double u = phi(a | b);
    if (u <= 0.0) return;  // then phi(a) = phi(b) = 0
    const double x = phi(a) / u;
    const double y = phi(b) / u;
    if (x >= 1.0 || y >= 1.0) {
      // x^p + y^p >= 1 for every p: subadditive always; superadditive only
      // when the other ratio vanishes.
      if (std::min(x, y) > 0.0) lower = kInf;
      return;
    }
    if (x == 0.0 || y == 0.0) {
      // Strictly below one for every p: never subadditive.
      upper = 0.0;
      return;
    }
    const double p = critical_exponent(x, y, tol);
    lower = std::max(lower, p);
    upper = std::min(upper, p);
  });
  ExponentEstimate out;
  if (lower < kInf) out.lower = lower;
  if (upper > 0.0) out.upper = upper;
  return out;
}

namespace {

/// Pairwise check of phi^p against superadditivity (sign = +1) or
/// subadditivity (sign = -1), optionally together with plain sub- or
/// superadditivity of phi itself. Stops at the first failure.
bool pair_check(const SetFunction& phi, double p, int sign, bool also_plain, double tol) {
  const auto v = phi.values();
  std::vector<double> pw(v.size());
  for (std::size_t s = 0; s < v.size(); ++s) pw[s] = std::pow(v[s], p);
  const std::uint32_t count = static_cast<std::uint32_t>(v.size());
  for (std::uint32_t u = 1; u < count; ++u) {
    if ((u & (u - 1)) == 0) continue;
    const double eps_p = slack(tol, pw[u]);
    const double eps_1 = slack(tol, v[u]);
    // Enumerate a below u with a < u \ a; b = u \ a.
    for (std::uint32_t a = (u - 1) & u; a != 0; a = (a - 1) & u) {
      const std::uint32_t b = u & ~a;
      if (a > b) continue;
      if (sign > 0 ? pw[u] < pw[a] + pw[b] - eps_p : pw[u] > pw[a] + pw[b] + eps_p) return false;
      if (also_plain && (sign > 0 ? v[u] > v[a] + v[b] + eps_1 : v[u] < v[a] + v[b] - eps_1))
        return false;
    }
  }
  return true;
}

bool accept_generated(const SetFunction& phi, double p, int sign) {
  return std::abs(phi.total() - 1.0) <= 1e-9 && is_monotone(phi, 1e-9) &&
         pair_check(phi, p, sign, true, 1e-9);
}

}  // namespace

bool has_lower_estimate(const SetFunction& phi, double p, double tol) {
  return pair_check(phi, p, +1, false, tol);
}

bool has_upper_estimate(const SetFunction& phi, double p, double tol) {
  return pair_check(phi, p, -1, false, tol);
}

SetFunction power(const SetFunction& phi, double s) {
  require(s > 0.0, ErrorCode::InvalidArgument, "power exponent must be positive");
  return SetFunction::from_function(phi.ground(), [&](Subset a) { return std::pow(phi(a), s); });
}

SetFunction scale(const SetFunction& phi, double c) {
  require(c >= 0.0 && std::isfinite(c), ErrorCode::InvalidArgument,
          "scale factor must be finite and nonnegative");
  return SetFunction::from_function(phi.ground(), [&](Subset a) { return c * phi(a); });
}

SetFunction normalize(const SetFunction& phi) {
  const double t = phi.total();
  require(t > 0.0, ErrorCode::Precondition, "cannot normalize: phi(Omega) = 0");
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (double& x : v) x /= t;
  v.back() = 1.0;
  return SetFunction(phi.ground(), std::move(v));
}

SetFunction restrict_to(const SetFunction& phi, Subset f) {
  require(phi.ground().contains(f), ErrorCode::InvalidArgument,
          "restriction set lies outside the ground set");
  return SetFunction::from_function(phi.ground(), [&](Subset a) { return phi(a & f); });
}

double kp_constant(double p) {
  require(p > 0.0 && std::isfinite(p), ErrorCode::InvalidArgument,
          "K_p requires p > 0");
  // 2 (2^p - 1)^(-1/p) = (1 - 2^-p)^(-1/p); the expm1/log1p form keeps full
  // relative precision when K_p is tiny (large p).
  return std::expm1(-std::log1p(-std::exp2(-p)) / p);
}

SetFunction measure_power(const GroundSet& ground, std::span<const double> weights,
                          double beta) {
  require(beta > 0.0, ErrorCode::InvalidArgument, "measure power needs beta > 0");
  const SetFunction nu = SetFunction::from_weights(ground, weights);
  const double t = nu.total();
  require(t > 0.0, ErrorCode::InvalidArgument, "measure has zero total mass");
  return SetFunction::from_function(ground, [&](Subset a) { return std::pow(nu(a) / t, beta); });
}

SetFunction monotone_repair(const SetFunction& phi) {
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (std::uint32_t s = 1; s < v.size(); ++s)
    for (std::uint32_t b = s; b != 0; b &= b - 1)
      v[s] = std::max(v[s], v[s & ~(b & (~b + 1))]);
  return SetFunction(phi.ground(), std::move(v));
}

SetFunction subadditive_repair(const SetFunction& phi) {
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (std::uint32_t s = 1; s < v.size(); ++s) {
    for_each_submask(Subset(s), [&](Subset a) {
      const std::uint32_t b = s & ~a.bits();
      if (a.empty() || b == 0) return;
      v[s] = std::min(v[s], v[a.bits()] + v[b]);
    });
  }
  return SetFunction(phi.ground(), std::move(v));
}

SetFunction superadditive_repair(const SetFunction& phi) {
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (std::uint32_t s = 1; s < v.size(); ++s) {
    for_each_submask(Subset(s), [&](Subset a) {
      const std::uint32_t b = s & ~a.bits();
      if (a.empty() || b == 0) return;
      v[s] = std::max(v[s], v[a.bits()] + v[b]);
    });
  }
  return SetFunction(phi.ground(), std::move(v));
}

SetFunction random_submeasure_lower_p(const GroundSet& ground, double p, std::uint64_t seed,
                                      SubmeasureFamily family, int max_attempts) {
  require(p > 1.0, ErrorCode::InvalidArgument, "lower-estimate generator needs p > 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::vector<double> w = positive_weights(rng, ground.n());
    const double beta = rng.uniform(1.0 / p, 1.0);
    SetFunction base = measure_power(ground, w, beta);
    std::optional<SetFunction> cand;
    switch (family) {
      case SubmeasureFamily::MeasurePower:
        cand = std::move(base);
        break;
      case SubmeasureFamily::Floor: {
        double lo = 1.0;
        double hi = 0.0;
        for (int i = 0; i < ground.n(); ++i) {
          lo = std::min(lo, base(Subset::singleton(i)));
          hi = std::max(hi, base(Subset::singleton(i)));
        }
        const double c = rng.uniform(lo, hi);
        cand = SetFunction::from_function(ground, [&](Subset a) { return std::max(base(a), c); });
        break;
      }
      case SubmeasureFamily::PerturbRepair:
        cand = normalize(subadditive_repair(monotone_repair(perturb(base, rng, 0.05))));
        break;
    }
    if (accept_generated(*cand, p, +1)) return *cand;
  }
  fail(ErrorCode::Budget, std::string("submeasure generator '") + family_name(family) +
                              "' exhausted its rejection budget");
}

SetFunction random_supermeasure_upper_p(const GroundSet& ground, double p, std::uint64_t seed,
                                        SupermeasureFamily family, int max_attempts) {
  require(p > 0.0 && p < 1.0, ErrorCode::InvalidArgument,
          "upper-estimate generator needs 0 < p < 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::vector<double> w = weights_with_nulls(rng, ground.n());
    const double beta = rng.uniform(1.0, 1.0 / p);
    SetFunction base = measure_power(ground, w, beta);
    std::optional<SetFunction> cand;
    switch (family) {
      case SupermeasureFamily::MeasurePower:
        cand = std::move(base);
        break;
      case SupermeasureFamily::Mixture: {
        const std::vector<double> w2 = weights_with_nulls(rng, ground.n());
        const SetFunction other = measure_power(ground, w2, rng.uniform(1.0, 1.0 / p));
        const double t = rng.uniform(0.1, 0.9);
        cand = SetFunction::from_function(
            ground, [&](Subset a) { return t * base(a) + (1.0 - t) * other(a); });
        cand = normalize(*cand);
        break;
      }
      case SupermeasureFamily::PerturbRepair:
        cand = normalize(superadditive_repair(monotone_repair(perturb(base, rng, 0.05))));
        break;
    }
    if (accept_generated(*cand, p, -1)) return *cand;
  }
  fail(ErrorCode::Budget, std::string("supermeasure generator '") + family_name(family) +
                              "' exhausted its rejection budget");
}

}  // namespace setfn
