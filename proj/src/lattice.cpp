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

#include "setfn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "setfn/error.hpp"
#include "setfn/lorentz.hpp"

namespace setfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// ||f||^e optimized over partitions, for every restriction of f at once.
class PartitionRenorm final : public NormModel {
 public:
  PartitionRenorm(QuasiNormSpec base, double exponent, Optimize mode, EstimateProfile profile)
      : base_(std::move(base)), e_(exponent), mode_(mode), profile_(profile) {}

  int n() const override { return base_.n(); }
  double eval(std::span<const double> f) const override { return restriction_table(f).back(); }
  std::vector<double> restriction_table(std::span<const double> f) const override {
    std::vector<double> t = base_.model().restriction_table(f);
    for (double& x : t) x = std::pow(x, e_);
    t = partition_table(Subset::full(n()), t, mode_);
    for (double& x : t) x = std::pow(x, 1.0 / e_);
    return t;
  }
  NormDescription describe() const override {
    if (mode_ == Optimize::Min) return {"renorm-W", {{"p", e_}}, {}, {base_}, {}};
    return {"renorm-V", {{"q", e_}}, {}, {base_}, {}};
  }
  std::optional<EstimateProfile> estimates() const override { return profile_; }

 private:
  QuasiNormSpec base_;
  double e_;
  Optimize mode_;
  EstimateProfile profile_;
};

/// Nonnegative vector, each entry zero with probability `zero_prob`,
/// otherwise log-uniform on [1e-2, 10]; never identically zero.
std::vector<double> random_nonneg(Rng& rng, int n, double zero_prob) {
  std::vector<double> f(n, 0.0);
  bool any = false;
  for (double& x : f) {
    if (rng.bernoulli(zero_prob)) continue;
    x = rng.log_uniform(1e-2, 10.0);
    any = true;
  }
  if (!any) f[rng.integer(0, n - 1)] = rng.log_uniform(1e-2, 10.0);
  return f;
}

std::uint32_t support_mask(std::span<const double> f) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) s |= 1u << i;
  return s;
}

SetFunction powered(const GroundSet& g, std::vector<double> table, double e) {
  for (double& x : table) x = std::pow(x, e);
  table[0] = 0.0;
  return SetFunction(g, std::move(table));
}

void check_unit_function(const QuasiNormSpec& x, std::span<const double> f) {
  require(static_cast<int>(f.size()) == x.n(), ErrorCode::InvalidArgument,
          "function length must match atom count");
  for (double v : f)
    require(std::isfinite(v) && v >= 0.0, ErrorCode::Precondition,
            "certificate function must be nonnegative");
  const double norm = x(f);
  require(std::abs(norm - 1.0) <= 1e-9, ErrorCode::Precondition,
          "certificate function must have unit norm, got " + std::to_string(norm));
}

/// g / f on supp f, zero elsewhere.
std::vector<double> divide(std::span<const double> g, std::span<const double> f) {
  std::vector<double> h(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (f[i] != 0.0) h[i] = g[i] / f[i];
  return h;
}

double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 0.0;
}

std::vector<double> sample_g(Rng& rng, std::span<const double> f, int index) {
  std::vector<double> g(f.size(), 0.0);
  const std::uint32_t supp = support_mask(f);
  if (index == 0) return std::vector<double>(f.begin(), f.end());
  bool any = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!((supp >> i) & 1u)) continue;
    if (index == 1) {
      if (rng.bernoulli(0.5)) {
        g[i] = f[i];
        any = true;
      }
      continue;
    }
    if (rng.bernoulli(0.25)) continue;
    const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    g[i] = sign * rng.log_uniform(1e-2, 10.0);
    any = true;
  }
  if (!any) {
    const int i = Subset(supp).lowest();
    g[i] = f[i];
  }
  return g;
}

QuasiNormSpec exact_version(const QuasiNormSpec& x, double p, double q, double a, double b) {
  // With a = b = 1 the partition renorming reproduces x itself.
  if (a == 1.0 && b == 1.0) return x;
  return renorm(x, p, q, a, b).y;
}

void sample_certificate(LatticeMeasureCertificate& cert, const QuasiNormSpec& x,
                        const CertificateOptions& opt) {
  Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(cert.side)));
  cert.samples = opt.samples;
  cert.max_observed_ratio = 0.0;
  for (int k = 0; k < opt.samples; ++k) {
    const std::vector<double> g = sample_g(rng, cert.f, k);
    const double ratio = certificate_ratio(cert, x, g);
    if (k == 0 || ratio > cert.max_observed_ratio) {
      cert.max_observed_ratio = ratio;
      cert.worst_g = g;
    }
  }
}

}  // namespace

RenormResult renorm(const QuasiNormSpec& x, double p, double q, double a, double b) {
  require(p > 0.0 && q > p && std::isfinite(q), ErrorCode::Precondition,
          "renorming requires 0 < p < q");
  require(a >= 1.0 && b >= 1.0 && std::isfinite(a) && std::isfinite(b),
          ErrorCode::InvalidArgument, "crude constants must satisfy a, b >= 1");
  QuasiNormSpec w(std::make_shared<PartitionRenorm>(x, p, Optimize::Min,
                                                    EstimateProfile{p, q, 1.0, b}));
  QuasiNormSpec v(std::make_shared<PartitionRenorm>(w, q, Optimize::Max,
                                                    EstimateProfile{p, q, 1.0, 1.0}));
  QuasiNormSpec y = a == 1.0 ? v : scaled(a, v);
  return {w, v, y, p, q, a, b};
}

RenormCheck verify_renorm(const RenormResult& r, const QuasiNormSpec& x, int families,
                          std::uint64_t seed, double tol) {
  RenormCheck out;
  const int n = x.n();
  const double ab = r.a * r.b;
  for (int k = 0; k < families; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    const std::vector<double> f = random_nonneg(rng, n, 0.2);
    const std::vector<double> tx = x.restriction_table(f);
    const std::vector<double> ty = r.y.restriction_table(f);
    bool sandwich_ok = true;
    for (std::size_t s = 1; s < tx.size(); ++s) {
      out.worst_sandwich = std::max({out.worst_sandwich, safe_ratio(tx[s], ty[s]),
                                     safe_ratio(ty[s], ab * tx[s])});
      if (tx[s] > ty[s] + tol * std::max(1.0, ty[s]) ||
          ty[s] > ab * tx[s] + tol * std::max(1.0, ab * tx[s]))
        sandwich_ok = false;
    }
    out.sandwich_violations += !sandwich_ok;

    const std::uint32_t supp = support_mask(f);
    const int blocks = std::max(2, rng.integer(2, std::max(2, n)));
    std::vector<std::uint32_t> mask(blocks, 0);
    for (int i = 0; i < n; ++i)
      if ((supp >> i) & 1u) mask[rng.integer(0, blocks - 1)] |= 1u << i;
    double sum_p = 0.0;
    double sum_q = 0.0;
    for (std::uint32_t b : mask) {
      sum_p += std::pow(ty[b], r.p);
      sum_q += std::pow(ty[b], r.q);
    }
    const double whole_p = std::pow(ty[supp], r.p);
    const double whole_q = std::pow(ty[supp], r.q);
    out.worst_upper = std::max(out.worst_upper, safe_ratio(whole_p, sum_p));
    out.worst_lower = std::max(out.worst_lower, safe_ratio(sum_q, whole_q));
    out.upper_violations += whole_p > sum_p + tol * std::max(1.0, sum_p);
    out.lower_violations += sum_q > whole_q + tol * std::max(1.0, whole_q);
    ++out.families;
  }
  return out;
}

const char* to_string(CertificateSide s) {
  switch (s) {
    case CertificateSide::LpInfinity: return "lpinfty";
    case CertificateSide::Lower: return "lower";
    case CertificateSide::Upper: return "upper";
  }
  return "?";
}

double certificate_ratio(const LatticeMeasureCertificate& cert, const QuasiNormSpec& x,
                         std::span<const double> g) {
  require(g.size() == cert.f.size(), ErrorCode::InvalidArgument,
          "g length must match atom count");
  for (std::size_t i = 0; i < g.size(); ++i)
    require(g[i] == 0.0 || cert.f[i] != 0.0, ErrorCode::Precondition,
            "g must be supported inside the support of f");
  const std::vector<double> h = divide(g, cert.f);
  const double gx = x(g);
  switch (cert.side) {
    case CertificateSide::LpInfinity:
      return safe_ratio(lp_weak_norm(rearrange(h, cert.mu), cert.p), gx);
    case CertificateSide::Lower:
      return safe_ratio(lambda_norm(h, cert.mu, {cert.p, cert.q}), gx);
    case CertificateSide::Upper:
      return safe_ratio(gx, lambda_norm(h, cert.mu, {cert.q, cert.p}));
  }
  return kInf;
}

LatticeMeasureCertificate lpinfty_embedding_measure(const QuasiNormSpec& x, double p, double q,
                                                    std::span<const double> f,
                                                    const CertificateOptions& opt) {
  require(p > 0.0 && q > p, ErrorCode::Precondition, "embedding requires 0 < p < q");
  check_unit_function(x, f);
  const GroundSet g(x.n());
  const SetFunction phi = powered(g, x.restriction_table(f), p);
  const ClassificationReport cls = classify(phi, opt.tol);
  require(cls.submeasure && has_lower_estimate(phi, q / p, opt.tol), ErrorCode::Precondition,
          "A -> ||f chi_A||^p is not a submeasure with a lower q/p-estimate");
  const LpSolution lp = max_dominated_measure(phi, {opt.tol});
  require(lp.status == LpStatus::Optimal, ErrorCode::Numerical, "dominated-measure LP failed");
  LatticeMeasureCertificate cert{CertificateSide::LpInfinity, lp.measure};
  cert.p = p;
  cert.q = q;
  cert.constant = 1.0;
  cert.kp = kp_constant(q / p);
  cert.extracted_mass = lp.objective / phi.total();
  require(cert.extracted_mass >= cert.kp - opt.tol, ErrorCode::Numerical,
          "extracted mass falls below K_{q/p}");
  cert.f.assign(f.begin(), f.end());
  sample_certificate(cert, x, opt);
  return cert;
}

LatticeMeasureCertificate lattice_measure_lower(const QuasiNormSpec& x, double p, double q,
                                                double a, double b, std::span<const double> f,
                                                const CertificateOptions& opt) {
  require(p > 0.0 && q > p, ErrorCode::Precondition, "lower certificate requires 0 < p < q");
  check_unit_function(x, f);
  const QuasiNormSpec y = exact_version(x, p, q, a, b);
  const GroundSet g(x.n());
  const SetFunction phi = powered(g, y.restriction_table(f), p);
  require(classify(phi, opt.tol).submeasure && has_lower_estimate(phi, q / p, opt.tol),
          ErrorCode::Precondition,
          "A -> ||f chi_A||_Y^p is not a submeasure with a lower q/p-estimate");
  const LpSolution lp = max_dominated_measure(phi, {opt.tol});
  require(lp.status == LpStatus::Optimal, ErrorCode::Numerical, "dominated-measure LP failed");
  const double kp = kp_constant(q / p);
  const double mass = lp.objective / phi.total();
  require(mass >= kp - opt.tol, ErrorCode::Numerical,
          "dominated measure mass " + std::to_string(mass) + " falls below K_{q/p}");
  LatticeMeasureCertificate cert{CertificateSide::Lower, lp.measure.scaled(1.0 / lp.objective)};
  cert.p = p;
  cert.q = q;
  cert.kp = kp;
  cert.extracted_mass = mass;
  cert.constant = a * b * std::pow(kp, -1.0 / p);
  cert.f.assign(f.begin(), f.end());
  sample_certificate(cert, x, opt);
  return cert;
}

LatticeMeasureCertificate lattice_measure_upper(const QuasiNormSpec& x, double p, double q,
                                                double a, double b, std::span<const double> f,
                                                const CertificateOptions& opt) {
  require(p > 0.0 && q > p, ErrorCode::Precondition, "upper certificate requires 0 < p < q");
  check_unit_function(x, f);
  const QuasiNormSpec y = exact_version(x, p, q, a, b);
  const GroundSet g(x.n());
  const SetFunction phi = powered(g, y.restriction_table(f), q);
  require(classify(phi, opt.tol).supermeasure && has_upper_estimate(phi, p / q, opt.tol),
          ErrorCode::Precondition,
          "A -> ||f chi_A||_Y^q is not a supermeasure with an upper p/q-estimate");
  const LpSolution lp = min_dominating_measure(phi, true, {opt.tol});
  require(lp.status == LpStatus::Optimal, ErrorCode::Numerical,
          std::string("dominating-measure LP: ") + to_string(lp.status));
  const double kp = kp_constant(p / q);
  const double mass = lp.objective / phi.total();
  require(mass <= kp + opt.tol, ErrorCode::Numerical,
          "dominating measure mass " + std::to_string(mass) + " exceeds K_{p/q}");
  LatticeMeasureCertificate cert{CertificateSide::Upper, lp.measure.scaled(1.0 / lp.objective)};
  cert.p = p;
  cert.q = q;
  cert.kp = kp;
  cert.extracted_mass = mass;
  cert.constant = a * b * std::pow(kp, 1.0 / q);
  cert.f.assign(f.begin(), f.end());
  sample_certificate(cert, x, opt);
  return cert;
}

AtomicMeasure nondegeneracy_measure(const QuasiNormSpec& x, double p, double q) {
  require(p > 0.0 && q >= p, ErrorCode::Precondition, "nondegeneracy requires 0 < p <= q");
  const GroundSet g(x.n());
  const std::vector<double> ones(x.n(), 1.0);
  const SetFunction phi = powered(g, x.restriction_table(ones), p);
  const double e = q / p;
  const SetFunction psi = envelope_supermeasure(phi, e);
  double c = 1.0;
  for (std::uint32_t s = 1; s < g.subset_count(); ++s) {
    const double v = phi(Subset(s));
    if (v > 0.0) c = std::min(c, std::pow(std::pow(v, e) / psi(Subset(s)), 1.0 / e));
  }
  return equivalent_measure(phi, e, c * (1.0 - 1e-12));
}

AdmissibilityReport check_admissible(const QuasiNormSpec& x, int samples, std::uint64_t seed,
                                     double tol) {
  AdmissibilityReport out;
  for (int k = 0; k < samples; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    const std::vector<double> f = random_nonneg(rng, x.n(), 0.3);
    std::vector<double> g = random_nonneg(rng, x.n(), 0.5);
    for (int i = 0; i < x.n(); ++i) g[i] += f[i];
    const double fx = x(f);
    const double gx = x(g);
    out.monotone_violations += fx > gx + tol * std::max(1.0, gx);
    const double c = rng.log_uniform(0.1, 10.0);
    std::vector<double> cf(f);
    for (double& v : cf) v *= c;
    out.homogeneity_violations += std::abs(x(cf) - c * fx) > tol * std::max(1.0, c * fx);
    ++out.samples;
  }
  return out;
}

const char* to_string(ConvexityKind k) {
  switch (k) {
    case ConvexityKind::Convexity: return "convexity";
    case ConvexityKind::Concavity: return "concavity";
    case ConvexityKind::Geometric: return "geometric";
  }
  return "?";
}

double convexity_ratio(const QuasiNormSpec& x, ConvexityKind kind, double r,
                       const std::vector<std::vector<double>>& tuple) {
  require(!tuple.empty(), ErrorCode::InvalidArgument, "convexity tuple is empty");
  const int n = x.n();
  const double k = static_cast<double>(tuple.size());
  std::vector<double> combined(n, kind == ConvexityKind::Geometric ? 0.0 : 0.0);
  if (kind == ConvexityKind::Geometric) {
    double log_den = 0.0;
    std::vector<double> log_sum(n, 0.0);
    for (const auto& f : tuple) {
      const double v = x(f);
      if (v <= 0.0) return 0.0;
      log_den += std::log(v);
      for (int i = 0; i < n; ++i)
        log_sum[i] += f[i] != 0.0 ? std::log(std::abs(f[i])) : -kInf;
    }
    for (int i = 0; i < n; ++i) combined[i] = std::exp(log_sum[i] / k);
    return x(combined) / std::exp(log_den / k);
  }
  require(r > 0.0, ErrorCode::InvalidArgument, "convexity exponent must be positive");
  double sum = 0.0;
  for (const auto& f : tuple) {
    sum += std::pow(x(f), r);
    for (int i = 0; i < n; ++i) combined[i] += std::pow(std::abs(f[i]), r);
  }
  for (double& v : combined) v = std::pow(v, 1.0 / r);
  const double mixed = x(combined);
  const double separate = std::pow(sum, 1.0 / r);
  return kind == ConvexityKind::Convexity ? safe_ratio(mixed, separate)
                                          : safe_ratio(separate, mixed);
}

namespace {

struct SearchState {
  double best = 0.0;
  std::vector<std::vector<double>> witness;
  long used = 0;
};

std::vector<std::vector<double>> random_start(Rng& rng, int n, long start) {
  const int k = rng.integer(2, std::max(2, 2 * n));
  std::vector<std::vector<double>> tuple;
  switch (start % 3) {
    case 0: {
      // Cyclic shifts of one decreasing profile.
      std::vector<double> base = random_nonneg(rng, n, 0.0);
      std::sort(base.begin(), base.end(), std::greater<>());
      for (int s = 0; s < std::max(2, n); ++s) {
        std::vector<double> f(n);
        for (int i = 0; i < n; ++i) f[(i + s) % n] = base[i];
        tuple.push_back(std::move(f));
      }
      break;
    }
    case 1:
      for (int s = 0; s < k; ++s) tuple.push_back(random_nonneg(rng, n, 0.5));
      break;
    default:
      for (int s = 0; s < k; ++s) tuple.push_back(random_nonneg(rng, n, 0.0));
      break;
  }
  return tuple;
}

SearchState search_worker(const QuasiNormSpec& x, ConvexityKind kind, double r, long budget,
                          std::uint64_t seed) {
  SearchState st;
  Rng rng(seed);
  const int n = x.n();
  auto evaluate = [&](const std::vector<std::vector<double>>& t) {
    ++st.used;
    return convexity_ratio(x, kind, r, t);
  };
  long start = 0;
  while (st.used < budget) {
    std::vector<std::vector<double>> cur = random_start(rng, n, start++);
    double val = evaluate(cur);
    if (val > st.best) {
      st.best = val;
      st.witness = cur;
    }
    const long steps = 8L * static_cast<long>(cur.size()) * n;
    for (long s = 0; s < steps && st.used < budget; ++s) {
      const int i = rng.integer(0, static_cast<int>(cur.size()) - 1);
      const int j = rng.integer(0, n - 1);
      const double old = cur[i][j];
      switch (rng.integer(0, 3)) {
        case 0: cur[i][j] = old * 2.0; break;
        case 1: cur[i][j] = old * 0.5; break;
        case 2: cur[i][j] = 0.0; break;
        default: cur[i][j] = rng.log_uniform(1e-2, 10.0); break;
      }
      if (cur[i][j] == old) continue;
      const double cand = evaluate(cur);
      if (cand > val) {
        val = cand;
        if (val > st.best) {
          st.best = val;
          st.witness = cur;
        }
      } else {
        cur[i][j] = old;
      }
    }
  }
  return st;
}

ConvexityEstimate run_search(const QuasiNormSpec& x, ConvexityKind kind, double r,
                             const SearchOptions& opt) {
  require(opt.budget >= 1, ErrorCode::InvalidArgument, "search budget must be at least 1");
  require(opt.workers >= 1, ErrorCode::InvalidArgument, "worker count must be at least 1");
  ConvexityEstimate out;
  out.kind = kind;
  out.r = r;
  // The single-function tuple has ratio one and is the floor.
  out.witness = {std::vector<double>(x.n(), 1.0)};
  out.lower_bound = convexity_ratio(x, kind, r, out.witness);
  out.budget_used = 1;

  const long rest = opt.budget - 1;
  if (rest == 0) return out;
  const int workers = static_cast<int>(std::min<long>(opt.workers, rest));
  std::vector<SearchState> states(workers);
  auto run = [&](int w) {
    const long share = rest / workers + (w < rest % workers ? 1 : 0);
    states[w] = search_worker(x, kind, r, share, mix_seed(opt.seed, static_cast<std::uint64_t>(w)));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& t : pool) t.join();
  }
  for (const SearchState& st : states) {
    out.budget_used += st.used;
    if (st.best > out.lower_bound) {
      out.lower_bound = st.best;
      out.witness = st.witness;
    }
  }
  return out;
}

}  // namespace

ConvexityEstimate estimate_convexity(const QuasiNormSpec& x, double r, const SearchOptions& opt) {
  require(r > 0.0 && std::isfinite(r), ErrorCode::InvalidArgument,
          "convexity exponent must be positive");
  return run_search(x, ConvexityKind::Convexity, r, opt);
}

ConvexityEstimate estimate_concavity(const QuasiNormSpec& x, double p, const SearchOptions& opt) {
  require(p > 0.0 && std::isfinite(p), ErrorCode::InvalidArgument,
          "concavity exponent must be positive");
  return run_search(x, ConvexityKind::Concavity, p, opt);
}

ConvexityEstimate estimate_geo_convexity(const QuasiNormSpec& x, const SearchOptions& opt) {
  return run_search(x, ConvexityKind::Geometric, 0.0, opt);
}

double convexity_bound(double r, double p, double theta, double c) {
  require(r >= 0.0 && r < p, ErrorCode::InvalidArgument, "convexity bound needs 0 <= r < p");
  require(theta > 0.0 && theta < 1.0, ErrorCode::InvalidArgument,
          "convexity bound needs 0 < theta < 1");
  require(c > 0.0, ErrorCode::InvalidArgument, "convexity bound needs c > 0");
  return std::exp(theta * (c + std::abs(std::log(theta)) / p));
}

SharpnessResult sharpness_example(double theta, int grid) {
  require(theta > 0.0 && theta < 1.0, ErrorCode::InvalidArgument,
          "sharpness example needs 0 < theta < 1");
  require(grid >= 1000, ErrorCode::InvalidArgument, "sharpness grid must have at least 1000 cells");
  SharpnessResult r;
  r.theta = theta;
  r.q = 1.0 + theta;
  const double log_theta = std::abs(std::log(theta));
  r.phi = std::exp(-std::sqrt(log_theta));
  r.psi = std::pow(std::exp2(1.0 / r.q) - 1.0, -2.0);
  const double log_keep = std::log1p(-r.phi);  // log(1 - phi) < 0
  r.beta = 1.0 + (1.0 - r.phi) / r.phi * log_keep;

  std::vector<double> coarse(grid + 1);
  for (int k = 0; k <= grid; ++k)
    coarse[k] = std::exp(log_keep * (1.0 - static_cast<double>(k) / grid));
  coarse.back() = 1.0;
  std::vector<double> tau{coarse.front()};
  auto refine = [&](auto&& self, double lo, double hi) -> void {
    if (hi > r.psi * lo) {
      const double mid = std::sqrt(lo * hi);
      ++r.refinements;
      self(self, lo, mid);
      self(self, mid, hi);
      return;
    }
    tau.push_back(hi);
  };
  for (int k = 1; k <= grid; ++k) refine(refine, coarse[k - 1], coarse[k]);
  r.grid_points = static_cast<int>(tau.size());

  // Chains from 1 - phi to 1; a block (tau_i, tau_j] scores
  // ((tau_j - tau_i) / tau_j)^q since the infimum of 1/t there is 1/tau_j.
  const std::size_t m = tau.size();
  std::vector<double> best(m, -kInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < m; ++j) {
    double b = -kInf;
    for (std::size_t i = 0; i < j; ++i)
      b = std::max(b, best[i] + std::pow((tau[j] - tau[i]) / tau[j], r.q));
    best[j] = b;
  }
  r.lambda_norm = std::pow(best[m - 1], 1.0 / r.q);
  r.norm_bound = std::pow(r.psi - 1.0, theta) * std::abs(log_keep);
  r.kappa_lower = std::exp(r.beta) * r.phi * std::pow(r.psi - 1.0, -theta / r.q) *
                  std::pow(std::abs(log_keep), -1.0 / r.q);
  r.kappa_from_norm = std::exp(r.beta) * r.phi / r.lambda_norm;
  r.log_ratio = std::log(r.kappa_lower) / (theta * log_theta);
  return r;
}

}  // namespace setfn
