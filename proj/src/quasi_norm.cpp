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

#include "setfn/quasi_norm.hpp"

#include <algorithm>
#include <cmath>

#include "setfn/error.hpp"
#include "setfn/lorentz.hpp"

namespace setfn {

namespace {

void check_exponent(double s, const char* what) {
  require(s > 0.0 && std::isfinite(s), ErrorCode::InvalidArgument,
          std::string(what) + " must be positive and finite");
}

class WeightedLs final : public NormModel {
 public:
  WeightedLs(double s, std::vector<double> w) : s_(s), w_(std::move(w)) {
    check_exponent(s, "l_s exponent");
    require(!w_.empty() && static_cast<int>(w_.size()) <= kMaxAtoms, ErrorCode::InvalidArgument,
            "l_s needs between 1 and 16 weights");
    for (double x : w_)
      require(std::isfinite(x) && x >= 0.0, ErrorCode::InvalidArgument,
              "l_s weights must be finite and nonnegative");
  }
  int n() const override { return static_cast<int>(w_.size()); }
  double eval(std::span<const double> f) const override {
    double sum = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (f[i] > 0.0) sum += w_[i] * std::pow(f[i], s_);
    return std::pow(sum, 1.0 / s_);
  }
  std::vector<double> restriction_table(std::span<const double> f) const override {
    std::vector<double> part(std::size_t{1} << n(), 0.0);
    for (std::uint32_t a = 1; a < part.size(); ++a) {
      const int i = std::countr_zero(a);
      part[a] = part[a & (a - 1)] + (f[i] > 0.0 ? w_[i] * std::pow(f[i], s_) : 0.0);
    }
    for (double& x : part) x = std::pow(x, 1.0 / s_);
    return part;
  }
  NormDescription describe() const override {
    return {"weighted-ls", {{"s", s_}}, {{"weights", w_}}, {}, {}};
  }
  std::optional<EstimateProfile> estimates() const override {
    return EstimateProfile{s_, s_, 1.0, 1.0};
  }

 private:
  double s_;
  std::vector<double> w_;
};

class LorentzModel final : public NormModel {
 public:
  enum class Form { Lambda, Integral, Weak };

  LorentzModel(Form form, double p, double q, AtomicMeasure mu)
      : form_(form), p_(p), q_(q), mu_(std::move(mu)) {
    check_exponent(p, "Lorentz p");
    if (form != Form::Weak) check_exponent(q, "Lorentz q");
    require(form != Form::Lambda || p != q, ErrorCode::InvalidArgument,
            "Lambda norm requires p != q");
  }
  int n() const override { return mu_.n(); }
  double eval(std::span<const double> f) const override {
    switch (form_) {
      case Form::Lambda: return lambda_norm(f, mu_, {p_, q_});
      case Form::Integral: return lpq_norm(rearrange(f, mu_), {p_, q_});
      case Form::Weak: return lp_weak_norm(rearrange(f, mu_), p_);
    }
    return 0.0;
  }
  NormDescription describe() const override {
    const std::vector<double> w(mu_.weights().begin(), mu_.weights().end());
    switch (form_) {
      case Form::Lambda: return {"lorentz-lambda", {{"p", p_}, {"q", q_}}, {{"mu", w}}, {}, {}};
      case Form::Integral:
        return {"lorentz-integral", {{"p", p_}, {"q", q_}}, {{"mu", w}}, {}, {}};
      case Form::Weak: return {"weak-lp", {{"p", p_}}, {{"mu", w}}, {}, {}};
    }
    return {};
  }
  std::optional<EstimateProfile> estimates() const override {
    const double lo = std::min(p_, q_);
    const double hi = std::max(p_, q_);
    switch (form_) {
      case Form::Lambda: {
        const ComparisonConstants c = comparison_constants({p_, q_});
        if (p_ < q_) return EstimateProfile{p_, q_, c.upper, 1.0};
        return EstimateProfile{q_, p_, 1.0, 1.0 / c.lower};
      }
      case Form::Integral: return EstimateProfile{lo, hi, 1.0, 1.0};
      case Form::Weak: return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  Form form_;
  double p_;
  double q_;
  AtomicMeasure mu_;
};

class MaxOf final : public NormModel {
 public:
  MaxOf(QuasiNormSpec a, QuasiNormSpec b) : a_(std::move(a)), b_(std::move(b)) {
    require(a_.n() == b_.n(), ErrorCode::InvalidArgument,
            "max-of components must share the atom count");
  }
  int n() const override { return a_.n(); }
  double eval(std::span<const double> f) const override {
    return std::max(a_.model().eval(f), b_.model().eval(f));
  }
  std::vector<double> restriction_table(std::span<const double> f) const override {
    std::vector<double> t = a_.model().restriction_table(f);
    const std::vector<double> u = b_.model().restriction_table(f);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::max(t[i], u[i]);
    return t;
  }
  NormDescription describe() const override { return {"max-of", {}, {}, {a_, b_}, {}}; }
  std::optional<EstimateProfile> estimates() const override {
    const auto x = a_.estimates();
    const auto y = b_.estimates();
    if (!x || !y) return std::nullopt;
    const double up = std::min(x->upper_exponent, y->upper_exponent);
    const double low = std::max(x->lower_exponent, y->lower_exponent);
    if (up > low) return std::nullopt;
    return EstimateProfile{up, low, std::max(x->a, y->a),
                           std::pow(2.0, 1.0 / low) * std::max(x->b, y->b)};
  }

 private:
  QuasiNormSpec a_;
  QuasiNormSpec b_;
};

class Scaled final : public NormModel {
 public:
  Scaled(double c, QuasiNormSpec inner) : c_(c), inner_(std::move(inner)) {
    require(c > 0.0 && std::isfinite(c), ErrorCode::InvalidArgument,
            "scale factor must be positive and finite");
  }
  int n() const override { return inner_.n(); }
  double eval(std::span<const double> f) const override { return c_ * inner_.model().eval(f); }
  std::vector<double> restriction_table(std::span<const double> f) const override {
    std::vector<double> t = inner_.model().restriction_table(f);
    for (double& x : t) x *= c_;
    return t;
  }
  NormDescription describe() const override { return {"scaled", {{"c", c_}}, {}, {inner_}, {}}; }
  std::optional<EstimateProfile> estimates() const override { return inner_.estimates(); }

 private:
  double c_;
  QuasiNormSpec inner_;
};

}  // namespace

std::vector<double> NormModel::restriction_table(std::span<const double> f) const {
  const std::size_t count = std::size_t{1} << n();
  std::vector<double> out(count, 0.0);
  std::vector<double> g(f.size());
  for (std::uint32_t a = 1; a < count; ++a) {
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = ((a >> i) & 1u) ? f[i] : 0.0;
    out[a] = eval(g);
  }
  return out;
}

QuasiNormSpec::QuasiNormSpec(std::shared_ptr<const NormModel> model) : model_(std::move(model)) {
  require(model_ != nullptr, ErrorCode::InvalidArgument, "null norm model");
}

int QuasiNormSpec::n() const { return model_->n(); }

namespace {

std::vector<double> absolute(std::span<const double> f, int n) {
  require(static_cast<int>(f.size()) == n, ErrorCode::InvalidArgument,
          "function length " + std::to_string(f.size()) + " does not match atom count " +
              std::to_string(n));
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(std::isfinite(f[i]), ErrorCode::InvalidArgument, "function values must be finite");
    g[i] = std::abs(f[i]);
  }
  return g;
}

}  // namespace

double QuasiNormSpec::operator()(std::span<const double> f) const {
  return model_->eval(absolute(f, n()));
}

std::vector<double> QuasiNormSpec::restriction_table(std::span<const double> f) const {
  return model_->restriction_table(absolute(f, n()));
}

NormDescription QuasiNormSpec::describe() const { return model_->describe(); }

std::optional<EstimateProfile> QuasiNormSpec::estimates() const { return model_->estimates(); }

QuasiNormSpec weighted_ls(double s, std::vector<double> weights) {
  return QuasiNormSpec(std::make_shared<WeightedLs>(s, std::move(weights)));
}

QuasiNormSpec lorentz_lambda(double p, double q, AtomicMeasure mu) {
  return QuasiNormSpec(
      std::make_shared<LorentzModel>(LorentzModel::Form::Lambda, p, q, std::move(mu)));
}

QuasiNormSpec lorentz_integral(double p, double q, AtomicMeasure mu) {
  return QuasiNormSpec(
      std::make_shared<LorentzModel>(LorentzModel::Form::Integral, p, q, std::move(mu)));
}

QuasiNormSpec weak_lp(double p, AtomicMeasure mu) {
  return QuasiNormSpec(
      std::make_shared<LorentzModel>(LorentzModel::Form::Weak, p, 0.0, std::move(mu)));
}

QuasiNormSpec max_of(QuasiNormSpec first, QuasiNormSpec second) {
  return QuasiNormSpec(std::make_shared<MaxOf>(std::move(first), std::move(second)));
}

QuasiNormSpec scaled(double c, QuasiNormSpec inner) {
  return QuasiNormSpec(std::make_shared<Scaled>(c, std::move(inner)));
}

}  // namespace setfn
