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

#include "setfn/serialization.hpp"

#include <cmath>
#include <cstdio>

#include "setfn/error.hpp"

namespace setfn {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::Parse, "field '" + field + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path.empty() ? "<root>" : path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) field_error(join(path, key), "missing");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

double number_member(const Json& j, const std::string& key, const std::string& path) {
  return number(member(j, key, path), join(path, key));
}

int int_member(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_number_integer()) field_error(join(path, key), "expected an integer");
  return v.get<int>();
}

std::vector<double> array_of(const Json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

/// Runs a constructor, turning its contract errors into field diagnostics.
template <class Fn>
auto at_field(const std::string& field, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    field_error(field.empty() ? "<root>" : field, e.what());
  }
}

void check_n(const Json& j, const std::string& path, int expected) {
  if (!j.contains("n")) return;
  const int n = int_member(j, "n", path);
  if (n != expected)
    field_error(join(path, "n"), "declares " + std::to_string(n) + " atoms but the data has " +
                                     std::to_string(expected));
}

AtomicMeasure measure_at(const Json& j, const std::string& path) {
  if (j.is_array()) {
    std::vector<double> w = array_of(j, path);
    return at_field(path, [&] {
      GroundSet g(static_cast<int>(w.size()));
      return AtomicMeasure(g, std::move(w));
    });
  }
  std::vector<double> w = array_of(member(j, "weights", path), join(path, "weights"));
  check_n(j, path, static_cast<int>(w.size()));
  return at_field(path, [&] {
    GroundSet g(static_cast<int>(w.size()));
    return AtomicMeasure(g, std::move(w));
  });
}

QuasiNormSpec spec_at(const Json& j, const std::string& path) {
  const Json& kind_j = member(j, "kind", path);
  if (!kind_j.is_string()) field_error(join(path, "kind"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  QuasiNormSpec out = [&]() -> QuasiNormSpec {
    if (kind == "weighted-ls") {
      const double s = number_member(j, "s", path);
      std::vector<double> w = array_of(member(j, "weights", path), join(path, "weights"));
      return at_field(path, [&] { return weighted_ls(s, std::move(w)); });
    }
    if (kind == "lorentz-lambda" || kind == "lorentz-integral") {
      const double p = number_member(j, "p", path);
      const double q = number_member(j, "q", path);
      AtomicMeasure mu = measure_at(member(j, "mu", path), join(path, "mu"));
      return at_field(path, [&] {
        return kind == "lorentz-lambda" ? lorentz_lambda(p, q, mu) : lorentz_integral(p, q, mu);
      });
    }
    if (kind == "weak-lp") {
      const double p = number_member(j, "p", path);
      AtomicMeasure mu = measure_at(member(j, "mu", path), join(path, "mu"));
      return at_field(path, [&] { return weak_lp(p, mu); });
    }
    if (kind == "max-of") {
      QuasiNormSpec a = spec_at(member(j, "first", path), join(path, "first"));
      QuasiNormSpec b = spec_at(member(j, "second", path), join(path, "second"));
      return at_field(path, [&] { return max_of(a, b); });
    }
    if (kind == "scaled") {
      const double c = number_member(j, "c", path);
      QuasiNormSpec inner = spec_at(member(j, "spec", path), join(path, "spec"));
      return at_field(path, [&] { return scaled(c, inner); });
    }
    field_error(join(path, "kind"), "unknown quasi-norm kind '" + kind + "'");
  }();
  check_n(j, path, out.n());
  return out;
}

const char* child_name(const std::string& kind, std::size_t index) {
  if (kind == "max-of") return index == 0 ? "first" : "second";
  if (kind == "scaled") return "spec";
  if (kind == "operator-z") return "codomain";
  return "base";
}

const char* violation_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Monotone: return "monotone";
    case Violation::Kind::Subadditive: return "subadditive";
    case Violation::Kind::Superadditive: return "superadditive";
  }
  return "?";
}

Json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

Json vectors(const std::vector<std::vector<double>>& v) {
  Json out = Json::array();
  for (const auto& row : v) out.push_back(row);
  return out;
}

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(e, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Locate the byte offset reported by the parser.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    const auto cut = msg.find("; last read");
    if (cut != std::string::npos) msg = msg.substr(cut + 2);
    fail(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                               ": " + msg);
  }
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

std::vector<double> vector_from_json(const Json& j, const std::string& field) {
  return array_of(j, field);
}

SetFunction set_function_from_json(const Json& j) {
  const int n = int_member(j, "n", "");
  if (n < 0 || n > kMaxAtoms) field_error("n", "atom count must lie in [0, 16]");
  std::vector<double> values = array_of(member(j, "values", ""), "values");
  if (values.size() != (std::size_t{1} << n))
    field_error("values", "expected 2^n = " + std::to_string(std::size_t{1} << n) +
                              " entries, got " + std::to_string(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < 0.0) field_error("values[" + std::to_string(i) + "]", "must be nonnegative");
  if (values[0] != 0.0) field_error("values[0]", "the empty set must have value 0");
  return at_field("values", [&] { return SetFunction(GroundSet(n), std::move(values)); });
}

AtomicMeasure measure_from_json(const Json& j) { return measure_at(j, ""); }

StepFunction step_function_from_json(const Json& j) {
  const Json& steps = member(j, "steps", "");
  if (!steps.is_array()) field_error("steps", "expected an array of [value, mass] pairs");
  std::vector<Step> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string field = "steps[" + std::to_string(i) + "]";
    const std::vector<double> pair = array_of(steps[i], field);
    if (pair.size() != 2) field_error(field, "expected [value, mass]");
    out.push_back({pair[0], pair[1]});
  }
  return at_field("steps", [&] { return StepFunction(std::move(out)); });
}

QuasiNormSpec quasi_norm_from_json(const Json& j) { return spec_at(j, ""); }

OperatorSpec operator_from_json(const Json& j) {
  const Json& m = member(j, "matrix", "");
  if (!m.is_array() || m.empty()) field_error("matrix", "expected a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.size(); ++i)
    rows.push_back(array_of(m[i], "matrix[" + std::to_string(i) + "]"));
  QuasiNormSpec codomain = spec_at(member(j, "codomain", ""), "codomain");
  const double r = j.contains("r") ? number_member(j, "r", "") : 1.0;
  const double q = j.contains("q") ? number_member(j, "q", "") : 2.0;
  OperatorSpec t{std::move(rows), std::move(codomain), r, q};
  at_field("", [&] {
    validate(t);
    return 0;
  });
  return t;
}

FactorizationCertificate certificate_from_json(const Json& j) {
  FactorizationCertificate c(measure_at(member(j, "mu", ""), "mu"));
  const Json& mode = member(j, "mode", "");
  if (!mode.is_string() || (mode != "exact" && mode != "heuristic"))
    field_error("mode", "expected \"exact\" or \"heuristic\"");
  c.mode = mode == "exact" ? ZMode::Exact : ZMode::Heuristic;
  c.r = number_member(j, "r", "");
  c.q = number_member(j, "q", "");
  c.p = number_member(j, "p", "");
  c.c1 = number_member(j, "C1", "");
  c.c2 = number_member(j, "C2", "");
  c.c3 = number_member(j, "C3", "");
  c.c4 = number_member(j, "C4", "");
  if (j.contains("B")) c.b = number_member(j, "B", "");
  if (j.contains("kp_factor")) c.kp_factor = number_member(j, "kp_factor", "");
  if (j.contains("comparison_factor"))
    c.comparison_factor = number_member(j, "comparison_factor", "");
  if (j.contains("max_ratio_iv")) c.max_ratio_iv = number_member(j, "max_ratio_iv", "");
  if (j.contains("samples")) c.samples = int_member(j, "samples", "");
  return c;
}

Json to_json(const SetFunction& phi) {
  return Json{{"n", phi.n()},
              {"values", std::vector<double>(phi.values().begin(), phi.values().end())}};
}

Json to_json(const AtomicMeasure& mu) {
  return Json{{"n", mu.n()},
              {"weights", std::vector<double>(mu.weights().begin(), mu.weights().end())}};
}

Json to_json(const LpSolution& s) {
  Json j = to_json(s.measure);
  j["objective"] = s.objective;
  j["status"] = to_string(s.status);
  j["residual"] = s.residual;
  Json active = Json::array();
  for (Subset a : s.active) active.push_back(a.bits());
  j["active"] = active;
  j["iterations"] = s.iterations;
  return j;
}

Json to_json(const StepFunction& f) {
  Json steps = Json::array();
  for (const Step& s : f.steps()) steps.push_back(Json::array({s.value, s.mass}));
  return Json{{"steps", steps}};
}

Json to_json(const QuasiNormSpec& x) {
  const NormDescription d = x.describe();
  Json j{{"n", x.n()}, {"kind", d.kind}};
  for (const auto& [k, v] : d.scalars) j[k] = v;
  for (const auto& [k, v] : d.arrays) j[k] = v;
  for (std::size_t i = 0; i < d.children.size(); ++i)
    j[child_name(d.kind, i)] = to_json(d.children[i]);
  if (!d.matrix.empty()) j["matrix"] = vectors(d.matrix);
  return j;
}

Json to_json(const OperatorSpec& t) {
  return Json{{"matrix", vectors(t.matrix)},
              {"codomain", to_json(t.codomain)},
              {"r", t.r},
              {"q", t.q}};
}

Json to_json(const ClassificationReport& r) {
  Json v = Json::array();
  for (const Violation& w : r.violations)
    v.push_back(Json{{"kind", violation_name(w.kind)}, {"a", w.a.bits()}, {"b", w.b.bits()}});
  return Json{{"monotone", r.monotone},
              {"submeasure", r.submeasure},
              {"supermeasure", r.supermeasure},
              {"measure", r.measure},
              {"normalized", r.normalized},
              {"lower_exponent", optional_number(r.lower_exponent)},
              {"upper_exponent", optional_number(r.upper_exponent)},
              {"violations", v}};
}

Json to_json(const ExponentEstimate& e) {
  return Json{{"lower", optional_number(e.lower)}, {"upper", optional_number(e.upper)}};
}

Json to_json(const RenormCheck& r) {
  return Json{{"families", r.families},
              {"sandwich_violations", r.sandwich_violations},
              {"upper_violations", r.upper_violations},
              {"lower_violations", r.lower_violations},
              {"worst_sandwich", r.worst_sandwich},
              {"worst_upper", r.worst_upper},
              {"worst_lower", r.worst_lower},
              {"pass", r.pass()}};
}

Json to_json(const LatticeMeasureCertificate& c) {
  return Json{{"side", to_string(c.side)},
              {"mu", to_json(c.mu)},
              {"p", c.p},
              {"q", c.q},
              {"constant", c.constant},
              {"extracted_mass", c.extracted_mass},
              {"kp", c.kp},
              {"max_observed_ratio", c.max_observed_ratio},
              {"samples", c.samples},
              {"f", c.f},
              {"worst_g", c.worst_g},
              {"pass", c.pass()}};
}

Json to_json(const ConvexityEstimate& e) {
  return Json{{"kind", to_string(e.kind)},
              {"r", e.r},
              {"lower_bound", e.lower_bound},
              {"witness", vectors(e.witness)},
              {"budget_used", e.budget_used}};
}

Json to_json(const SharpnessResult& s) {
  return Json{{"theta", s.theta},
              {"q", s.q},
              {"phi", s.phi},
              {"psi", s.psi},
              {"beta", s.beta},
              {"lambda_norm", s.lambda_norm},
              {"norm_q", std::pow(s.lambda_norm, s.q)},
              {"norm_bound", s.norm_bound},
              {"kappa_lower", s.kappa_lower},
              {"kappa_from_norm", s.kappa_from_norm},
              {"log_ratio", s.log_ratio},
              {"grid_points", s.grid_points},
              {"refinements", s.refinements}};
}

Json to_json(const FactorizationCertificate& c) {
  return Json{{"mu", to_json(c.mu)},
              {"mode", to_string(c.mode)},
              {"r", c.r},
              {"q", c.q},
              {"p", c.p},
              {"C1", c.c1},
              {"C2", c.c2},
              {"C3", c.c3},
              {"C4", c.c4},
              {"B", c.b},
              {"kp_factor", c.kp_factor},
              {"comparison_factor", c.comparison_factor},
              {"max_ratio_iv", c.max_ratio_iv},
              {"samples", c.samples}};
}

Json to_json(const ConditionReport& r) {
  return Json{{"samples", r.samples},
              {"max_ratio_ii", r.max_ratio_ii},
              {"max_ratio_iii", r.max_ratio_iii},
              {"max_ratio_iv", r.max_ratio_iv},
              {"violations_ii", r.violations_ii},
              {"violations_iii", r.violations_iii},
              {"violations_iv", r.violations_iv},
              {"pass", r.pass()}};
}

}  // namespace setfn
