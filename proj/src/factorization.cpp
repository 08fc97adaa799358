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

#include "setfn/factorization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>

#include "setfn/error.hpp"
#include "setfn/lattice.hpp"
#include "setfn/lorentz.hpp"
#include "setfn/rng.hpp"

namespace setfn {

namespace {

constexpr std::array<double, 5> kAscentGrid{-1.0, -0.5, 0.0, 0.5, 1.0};

double codomain_norm(const OperatorSpec& t, std::span<const double> y, std::vector<double>& buf) {
  buf.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) buf[i] = std::abs(y[i]);
  return t.codomain.model().eval(buf);
}

void check_size(const OperatorSpec& t, std::span<const double> f) {
  require(static_cast<int>(f.size()) == t.cols(), ErrorCode::InvalidArgument,
          "function length must match the operator's column count");
  for (double v : f)
    require(std::isfinite(v), ErrorCode::InvalidArgument, "function values must be finite");
}

void check_mode(const OperatorSpec& t, ZMode mode) {
  require(t.cols() <= kMaxOperatorAtoms, ErrorCode::InvalidArgument,
          "Z evaluation supports at most 12 atoms");
  require(mode != ZMode::Exact || t.r == 1.0, ErrorCode::Precondition,
          "exact Z evaluation requires a Banach codomain (r = 1)");
}

/// ||T (c_1 f_1, ..., c_n f_n)||^q restricted to `block`.
double block_value(const OperatorSpec& t, std::span<const double> absf, std::span<const double> c,
                   std::uint32_t block, std::vector<double>& y, std::vector<double>& buf) {
  const int m = t.rows();
  std::fill(y.begin(), y.end(), 0.0);
  for (std::uint32_t s = block; s != 0; s &= s - 1) {
    const int i = std::countr_zero(s);
    const double w = c[i] * absf[i];
    if (w == 0.0) continue;
    for (int k = 0; k < m; ++k) y[k] += w * t.matrix[k][i];
  }
  return std::pow(codomain_norm(t, y, buf), t.q);
}

std::vector<double> block_scores(const OperatorSpec& t, std::span<const double> f, ZMode mode) {
  const int n = t.cols();
  const int m = t.rows();
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> absf(n);
  for (int i = 0; i < n; ++i) absf[i] = std::abs(f[i]);

  // sum[S] = T(|f| chi_S).
  std::vector<double> sum(count * m, 0.0);
  for (std::uint32_t s = 1; s < count; ++s) {
    const int i = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    for (int k = 0; k < m; ++k) sum[s * m + k] = sum[rest * m + k] + absf[i] * t.matrix[k][i];
  }

  std::vector<double> score(count, 0.0);
  std::vector<std::uint32_t> best_plus(count, 0);
  std::vector<double> y(m);
  std::vector<double> buf;
  for (std::uint32_t b = 1; b < count; ++b) {
    const std::uint32_t low = b & (~b + 1);
    double best = 0.0;
    std::uint32_t arg = low;
    // Sign patterns up to global sign: the lowest atom is always positive.
    for_each_submask(Subset(b & ~low), [&](Subset sub) {
      const std::uint32_t plus = sub.bits() | low;
      for (int k = 0; k < m; ++k) y[k] = 2.0 * sum[plus * m + k] - sum[b * m + k];
      const double v = codomain_norm(t, y, buf);
      if (v > best) {
        best = v;
        arg = plus;
      }
    });
    score[b] = std::pow(best, t.q);
    best_plus[b] = arg;
  }
  if (mode == ZMode::Exact) return score;

  std::vector<double> c(n, 0.0);
  for (std::uint32_t b = 1; b < count; ++b) {
    for (int i = 0; i < n; ++i) c[i] = ((b >> i) & 1u) ? (((best_plus[b] >> i) & 1u) ? 1.0 : -1.0) : 0.0;
    double val = score[b];
    for (int pass = 0; pass < 4; ++pass) {
      bool improved = false;
      for (std::uint32_t s = b; s != 0; s &= s - 1) {
        const int i = std::countr_zero(s);
        const double keep = c[i];
        for (double g : kAscentGrid) {
          if (g == keep) continue;
          c[i] = g;
          const double v = block_value(t, absf, c, b, y, buf);
          if (v > val) {
            val = v;
            improved = true;
          } else {
            c[i] = keep;
          }
          if (c[i] != keep) break;
        }
      }
      if (!improved) break;
    }
    score[b] = val;
  }
  return score;
}

class OperatorZ final : public NormModel {
 public:
  OperatorZ(OperatorSpec t, ZMode mode) : t_(std::move(t)), mode_(mode) {}

  int n() const override { return t_.cols(); }
  double eval(std::span<const double> f) const override {
    return std::pow(z_table(t_, f, mode_).back(), 1.0 / t_.q);
  }
  std::vector<double> restriction_table(std::span<const double> f) const override {
    std::vector<double> table = z_table(t_, f, mode_);
    for (double& v : table) v = std::pow(v, 1.0 / t_.q);
    return table;
  }
  NormDescription describe() const override {
    return {"operator-z",
            {{"r", t_.r}, {"q", t_.q}, {"exact", mode_ == ZMode::Exact ? 1.0 : 0.0}},
            {},
            {t_.codomain},
            t_.matrix};
  }
  std::optional<EstimateProfile> estimates() const override {
    return EstimateProfile{t_.r, t_.q, 1.0, 1.0};
  }

 private:
  OperatorSpec t_;
  ZMode mode_;
};

std::vector<double> random_signed(Rng& rng, int n) {
  std::vector<double> f(n, 0.0);
  bool any = false;
  for (double& v : f) {
    if (rng.bernoulli(0.25)) continue;
    v = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.log_uniform(1e-2, 10.0);
    any = true;
  }
  if (!any) f[rng.integer(0, n - 1)] = 1.0;
  return f;
}

std::vector<double> sample_function(Rng& rng, int n, int kind) {
  std::vector<double> f(n, 0.0);
  switch (kind % 4) {
    case 0:
      f[rng.integer(0, n - 1)] = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.log_uniform(1e-2, 10.0);
      return f;
    case 1: {
      const std::uint32_t a = 1u + static_cast<std::uint32_t>(rng.next() % ((1u << n) - 1u));
      for (int i = 0; i < n; ++i) f[i] = ((a >> i) & 1u) ? 1.0 : 0.0;
      return f;
    }
    default: return random_signed(rng, n);
  }
}

bool exceeds(double ratio, double constant, double tol) {
  return ratio > constant * (1.0 + tol) + tol;
}

double ratio_of(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

void validate(const OperatorSpec& t) {
  require(t.rows() >= 1 && t.cols() >= 1, ErrorCode::InvalidArgument,
          "operator matrix must be nonempty");
  for (const auto& row : t.matrix) {
    require(static_cast<int>(row.size()) == t.cols(), ErrorCode::InvalidArgument,
            "operator matrix rows must have equal length");
    for (double v : row)
      require(std::isfinite(v), ErrorCode::InvalidArgument, "operator entries must be finite");
  }
  require(t.codomain.n() == t.rows(), ErrorCode::InvalidArgument,
          "codomain atom count must match the operator's row count");
  require(t.r > 0.0 && t.r <= 1.0, ErrorCode::InvalidArgument, "r must lie in (0, 1]");
  require(t.q > 0.0 && std::isfinite(t.q), ErrorCode::InvalidArgument,
          "q must be positive and finite");
}

double apply_norm(const OperatorSpec& t, std::span<const double> f) {
  check_size(t, f);
  std::vector<double> y(t.rows(), 0.0);
  for (int k = 0; k < t.rows(); ++k)
    for (int i = 0; i < t.cols(); ++i) y[k] += t.matrix[k][i] * f[i];
  std::vector<double> buf;
  return codomain_norm(t, y, buf);
}

const char* to_string(ZMode m) { return m == ZMode::Exact ? "exact" : "heuristic"; }

ZMode default_mode(const OperatorSpec& t) {
  return t.r == 1.0 ? ZMode::Exact : ZMode::Heuristic;
}

bool codomain_r_subadditive(const OperatorSpec& t, int samples, std::uint64_t seed, double tol) {
  const int m = t.rows();
  std::vector<double> y1(m), y2(m), s(m), buf;
  for (int k = 0; k < samples; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    for (int i = 0; i < m; ++i) {
      y1[i] = rng.uniform(-1.0, 1.0);
      y2[i] = rng.uniform(-1.0, 1.0);
      s[i] = y1[i] + y2[i];
    }
    const double lhs = std::pow(codomain_norm(t, s, buf), t.r);
    const double rhs = std::pow(codomain_norm(t, y1, buf), t.r) + std::pow(codomain_norm(t, y2, buf), t.r);
    if (lhs > rhs + tol * std::max(1.0, rhs)) return false;
  }
  return true;
}

std::vector<double> z_table(const OperatorSpec& t, std::span<const double> f, ZMode mode) {
  check_mode(t, mode);
  check_size(t, f);
  const std::vector<double> score = block_scores(t, f, mode);
  return partition_table(Subset::full(t.cols()), score, Optimize::Max);
}

double z_norm(const OperatorSpec& t, std::span<const double> f, ZMode mode) {
  return std::pow(z_table(t, f, mode).back(), 1.0 / t.q);
}

double disjointness_constant(const OperatorSpec& t, ZMode mode) {
  validate(t);
  return z_norm(t, std::vector<double>(t.cols(), 1.0), mode);
}

QuasiNormSpec z_quasi_norm(const OperatorSpec& t, ZMode mode) {
  validate(t);
  check_mode(t, mode);
  return QuasiNormSpec(std::make_shared<OperatorZ>(t, mode));
}

double ratio_iv(const OperatorSpec& t, const FactorizationCertificate& cert,
                std::span<const double> f) {
  return ratio_of(apply_norm(t, f), lpq_norm(rearrange(f, cert.mu), {t.q, t.r}));
}

double ratio_iii(const OperatorSpec& t, const FactorizationCertificate& cert,
                 std::span<const double> f) {
  double sup = 0.0;
  double integral = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sup = std::max(sup, std::abs(f[i]));
    integral += cert.mu.weight(static_cast<int>(i)) * std::pow(std::abs(f[i]), cert.p);
  }
  const double den = std::pow(sup, 1.0 - cert.p / t.q) * std::pow(integral, 1.0 / t.q);
  return ratio_of(apply_norm(t, f), den);
}

double ratio_ii(const OperatorSpec& t, const FactorizationCertificate& cert,
                const std::vector<std::vector<double>>& tuple) {
  double lhs = 0.0;
  std::vector<double> combined(t.cols(), 0.0);
  for (const auto& f : tuple) {
    lhs += std::pow(apply_norm(t, f), t.q);
    for (int i = 0; i < t.cols(); ++i) combined[i] += std::pow(std::abs(f[i]), cert.p);
  }
  double sup = 0.0;
  for (double v : combined) sup = std::max(sup, std::pow(v, 1.0 / cert.p));
  return ratio_of(std::pow(lhs, 1.0 / t.q), sup);
}

ConditionReport verify_conditions(const OperatorSpec& t, const FactorizationCertificate& cert,
                                  int samples, std::uint64_t seed, int workers, double tol) {
  validate(t);
  require(samples >= 0, ErrorCode::InvalidArgument, "sample count must be nonnegative");
  require(workers >= 1, ErrorCode::InvalidArgument, "worker count must be at least 1");
  const int n = t.cols();
  workers = std::max(1, std::min(workers, samples));
  std::vector<ConditionReport> parts(workers);
  auto run = [&](int w) {
    ConditionReport& out = parts[w];
    const int lo = static_cast<int>(static_cast<long>(samples) * w / workers);
    const int hi = static_cast<int>(static_cast<long>(samples) * (w + 1) / workers);
    for (int k = lo; k < hi; ++k) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
      const std::vector<double> f = sample_function(rng, n, k);
      const double r4 = ratio_iv(t, cert, f);
      const double r3 = ratio_iii(t, cert, f);
      std::vector<std::vector<double>> tuple;
      const int len = rng.integer(2, 2 * n);
      for (int j = 0; j < len; ++j) tuple.push_back(sample_function(rng, n, rng.integer(0, 3)));
      const double r2 = ratio_ii(t, cert, tuple);
      out.max_ratio_iv = std::max(out.max_ratio_iv, r4);
      out.max_ratio_iii = std::max(out.max_ratio_iii, r3);
      out.max_ratio_ii = std::max(out.max_ratio_ii, r2);
      out.violations_iv += exceeds(r4, cert.c4, tol);
      out.violations_iii += exceeds(r3, cert.c3, tol);
      out.violations_ii += exceeds(r2, cert.c2, tol);
      ++out.samples;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& th : pool) th.join();
  }
  ConditionReport total;
  for (const ConditionReport& p : parts) {
    total.samples += p.samples;
    total.max_ratio_ii = std::max(total.max_ratio_ii, p.max_ratio_ii);
    total.max_ratio_iii = std::max(total.max_ratio_iii, p.max_ratio_iii);
    total.max_ratio_iv = std::max(total.max_ratio_iv, p.max_ratio_iv);
    total.violations_ii += p.violations_ii;
    total.violations_iii += p.violations_iii;
    total.violations_iv += p.violations_iv;
  }
  return total;
}

FactorizationCertificate factorization_measure(const OperatorSpec& t,
                                               const FactorizationOptions& opt) {
  validate(t);
  require(t.r < t.q, ErrorCode::Precondition, "factorization requires r < q");
  const double p = opt.p > 0.0 ? opt.p : 0.5 * (t.r + t.q);
  require(p >= t.r && p < t.q, ErrorCode::InvalidArgument, "p must satisfy r <= p < q");
  const ZMode mode = default_mode(t);
  check_mode(t, mode);
  if (mode == ZMode::Exact)
    require(codomain_r_subadditive(t, 200, opt.seed), ErrorCode::Precondition,
            "codomain norm fails subadditivity on sampled pairs");

  const GroundSet g(t.cols());
  const double c1 = disjointness_constant(t, mode);
  FactorizationCertificate cert(AtomicMeasure::uniform(g));
  cert.mode = mode;
  cert.r = t.r;
  cert.q = t.q;
  cert.p = p;
  cert.c1 = c1;
  if (c1 == 0.0) return cert;

  const QuasiNormSpec z = z_quasi_norm(t, mode);
  std::vector<double> f0(t.cols(), 1.0 / c1);
  const LatticeMeasureCertificate lm =
      lattice_measure_upper(z, t.r, t.q, 1.0, 1.0, f0, {opt.samples, opt.seed, opt.tol});
  cert.mu = lm.mu;
  cert.kp_factor = lm.constant;
  cert.comparison_factor = 1.0 / comparison_constants({t.q, t.r}).lower;
  cert.b = cert.kp_factor * cert.comparison_factor;
  cert.c4 = c1 * cert.b;
  cert.c3 = cert.c4 * std::pow(t.q / (t.q - p), 1.0 / t.r);
  cert.c2 = cert.c3;

  for (int k = 0; k < opt.samples; ++k) {
    Rng rng(mix_seed(opt.seed, 0x5eedull, static_cast<std::uint64_t>(k)));
    cert.max_ratio_iv =
        std::max(cert.max_ratio_iv, ratio_iv(t, cert, sample_function(rng, t.cols(), k)));
  }
  cert.samples = opt.samples;
  return cert;
}

OperatorSpec random_operator(std::uint64_t seed, double q) {
  Rng rng(seed);
  const int n = rng.integer(2, 8);
  const int m = rng.integer(1, 6);
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  for (auto& row : a)
    for (double& v : row) v = rng.uniform(-1.0, 1.0);
  constexpr std::array<double, 4> kS{1.0, 1.5, 2.0, 3.0};
  auto ls = [&] {
    std::vector<double> w(m);
    for (double& v : w) v = rng.uniform(0.5, 2.0);
    return weighted_ls(kS[rng.integer(0, 3)], std::move(w));
  };
  QuasiNormSpec codomain = ls();
  if (rng.integer(0, 4) == 4) codomain = max_of(codomain, ls());
  return OperatorSpec{std::move(a), std::move(codomain), 1.0, q};
}

}  // namespace setfn
