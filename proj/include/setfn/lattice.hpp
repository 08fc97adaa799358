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
#include <string>
#include <utility>
#include <vector>

#include "setfn/quasi_norm.hpp"

namespace setfn {

/// Partition renorming: W infimal over partitions with exponent p, V
/// supremal over partitions of W with exponent q, and Y = a V.
struct RenormResult {
  QuasiNormSpec w;
  QuasiNormSpec v;
  QuasiNormSpec y;
  double p;
  double q;
  double a;
  double b;
};

RenormResult renorm(const QuasiNormSpec& x, double p, double q, double a, double b);

struct RenormCheck {
  int families = 0;
  int sandwich_violations = 0;
  int upper_violations = 0;
  int lower_violations = 0;
  /// Largest of ||f||_X / ||f||_Y and ||f||_Y / (ab ||f||_X) seen.
  double worst_sandwich = 0.0;
  /// Largest ||sum f_i||_Y^p / sum ||f_i||_Y^p seen.
  double worst_upper = 0.0;
  /// Largest sum ||f_i||_Y^q / ||sum f_i||_Y^q seen.
  double worst_lower = 0.0;

  bool pass() const {
    return sandwich_violations == 0 && upper_violations == 0 && lower_violations == 0;
  }
};

/// Checks the sandwich on every restriction of each sampled f, and the exact
/// estimates of Y on a random disjoint split of f.
RenormCheck verify_renorm(const RenormResult& r, const QuasiNormSpec& x, int families,
                          std::uint64_t seed, double tol = 1e-9);

enum class CertificateSide { LpInfinity, Lower, Upper };
const char* to_string(CertificateSide s);

struct LatticeMeasureCertificate {
  LatticeMeasureCertificate(CertificateSide s, AtomicMeasure m) : side(s), mu(std::move(m)) {}

  CertificateSide side;
  AtomicMeasure mu;
  double p = 0.0;
  double q = 0.0;
  /// The claimed constant the sampled ratios are compared against.
  double constant = 0.0;
  /// Mass of the extracted measure before normalization, over phi(Omega).
  double extracted_mass = 0.0;
  /// The K constant that mass is compared against.
  double kp = 0.0;
  double max_observed_ratio = 0.0;
  int samples = 0;
  std::vector<double> worst_g;
  /// The unit-norm function the measure was built around.
  std::vector<double> f;

  bool pass(double tol = 1e-9) const {
    return max_observed_ratio <= constant * (1.0 + tol) + tol;
  }
};

struct CertificateOptions {
  int samples = 100;
  std::uint64_t seed = 7;
  double tol = 1e-9;
};

/// The measure mu <= ||f chi_A||^p with mu(Omega) >= K_{q/p}; x must already
/// have exact upper p and lower q estimates. Ratio: ||g/f||_{L_{p,inf}(mu)} / ||g||.
LatticeMeasureCertificate lpinfty_embedding_measure(const QuasiNormSpec& x, double p, double q,
                                                    std::span<const double> f,
                                                    const CertificateOptions& opt = {});

/// Probability mu with ||g/f||_{Lambda_{p,q}(mu)} <= ab K_{q/p}^{-1/p} ||g||_X.
LatticeMeasureCertificate lattice_measure_lower(const QuasiNormSpec& x, double p, double q,
                                                double a, double b, std::span<const double> f,
                                                const CertificateOptions& opt = {});

/// Probability lambda with ||g||_X <= ab K_{p/q}^{1/q} ||g/f||_{Lambda_{q,p}(lambda)}.
LatticeMeasureCertificate lattice_measure_upper(const QuasiNormSpec& x, double p, double q,
                                                double a, double b, std::span<const double> f,
                                                const CertificateOptions& opt = {});

/// The ratio a certificate bounds, for one g (supported inside supp f).
double certificate_ratio(const LatticeMeasureCertificate& cert, const QuasiNormSpec& x,
                         std::span<const double> g);

/// Measure with the null sets of A -> ||chi_A||^p, through the envelope with
/// exponent q/p (q >= p).
AtomicMeasure nondegeneracy_measure(const QuasiNormSpec& x, double p, double q);

/// Monotonicity and homogeneity spot checks on random pairs.
struct AdmissibilityReport {
  int samples = 0;
  int monotone_violations = 0;
  int homogeneity_violations = 0;
  bool pass() const { return monotone_violations == 0 && homogeneity_violations == 0; }
};
AdmissibilityReport check_admissible(const QuasiNormSpec& x, int samples, std::uint64_t seed,
                                     double tol = 1e-9);

enum class ConvexityKind { Convexity, Concavity, Geometric };
const char* to_string(ConvexityKind k);

struct ConvexityEstimate {
  ConvexityKind kind = ConvexityKind::Convexity;
  double r = 0.0;
  /// Ratio of the stored witness; at least the single-function ratio.
  double lower_bound = 0.0;
  std::vector<std::vector<double>> witness;
  long budget_used = 0;
};

struct SearchOptions {
  /// Ratio evaluations across all workers.
  long budget = 2000;
  std::uint64_t seed = 7;
  int workers = 1;
};

/// Defining ratio of the constant for one tuple (0 when undefined).
double convexity_ratio(const QuasiNormSpec& x, ConvexityKind kind, double r,
                       const std::vector<std::vector<double>>& tuple);

ConvexityEstimate estimate_convexity(const QuasiNormSpec& x, double r, const SearchOptions& opt);
ConvexityEstimate estimate_concavity(const QuasiNormSpec& x, double p, const SearchOptions& opt);
ConvexityEstimate estimate_geo_convexity(const QuasiNormSpec& x, const SearchOptions& opt);

/// exp(theta (c + |log theta| / p)).
double convexity_bound(double r, double p, double theta, double c);

/// Calibration constant for convexity_bound checks.
inline constexpr double kConvexityCalibration = 2.0;

struct SharpnessResult {
  double theta = 0.0;
  double q = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double beta = 0.0;
  /// ||f||_{Lambda_{1,q}} on the refined grid.
  double lambda_norm = 0.0;
  /// (psi - 1)^theta |log(1 - phi)|, the analytic bound on lambda_norm^q.
  double norm_bound = 0.0;
  double kappa_lower = 0.0;
  /// e^beta phi / lambda_norm.
  double kappa_from_norm = 0.0;
  /// log(kappa_lower) / (theta |log theta|).
  double log_ratio = 0.0;
  int grid_points = 0;
  int refinements = 0;
};

/// f(t) = 1/t on [1 - phi, 1] in Lambda_{1, 1 + theta}[0, 1].
SharpnessResult sharpness_example(double theta, int grid);

}  // namespace setfn
