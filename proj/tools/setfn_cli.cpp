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

// Command-line harness over the C interface. Each subcommand turns a batch
// of instances into report records; the exit status is 0 exactly when every
// record passes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "report.hpp"
#include "setfn/rng.hpp"
#include "setfn/setfn.h"

namespace {

using setfn::report::Json;
using setfn::report::Relation;
using setfn::report::ReportRecord;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitCompute = 4;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{kExitUsage, msg}; }

void call(setfn_status s, const std::string& context) {
  if (s == SETFN_OK) return;
  const std::string msg = context + ": " + setfn_status_name(s) + ": " + setfn_last_error();
  switch (s) {
    case SETFN_ERR_PARSE: throw CliError{kExitInput, msg};
    case SETFN_ERR_INVALID_ARGUMENT:
    case SETFN_ERR_PRECONDITION: throw CliError{kExitUsage, msg};
    default: throw CliError{kExitCompute, msg};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  setfn_string_free(s);
  return out;
}

struct FreeFn {
  void operator()(setfn_setfunction* p) const { setfn_setfunction_free(p); }
  void operator()(setfn_norm* p) const { setfn_norm_free(p); }
  void operator()(setfn_operator* p) const { setfn_operator_free(p); }
};
using FnPtr = std::unique_ptr<setfn_setfunction, FreeFn>;
using NormPtr = std::unique_ptr<setfn_norm, FreeFn>;
using OpPtr = std::unique_ptr<setfn_operator, FreeFn>;

double number(const Json& j, const char* key) {
  const Json& v = j.at(key);
  return v.is_null() ? kNaN : v.get<double>();
}

// --- options ---------------------------------------------------------------

struct Common {
  std::vector<std::string> inputs;
  std::uint64_t seed = 7;
  int trials = 1;
  double tol = 1e-9;
  std::string format = "json";
  int workers = 1;
  bool timing = false;
  std::string output;
};

void add_common(CLI::App* sub, Common& c, bool with_input = true) {
  if (with_input)
    sub->add_option("-i,--input", c.inputs, "Input JSON files (object or array of instances)")
        ->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "Run seed; instance k uses a seed hashed from (seed, k)");
  sub->add_option("--trials", c.trials, "Generated instances")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol", c.tol, "Comparison tolerance, relative with unit floor")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--workers", c.workers, "Worker threads (SETFN_WORKERS overrides)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--timing", c.timing, "Record wall time; otherwise ms is 0");
  sub->add_option("-o,--output", c.output, "Write the report here instead of stdout");
}

// --- instances -------------------------------------------------------------

struct Instance {
  std::string id;
  std::string json;
  std::uint64_t seed = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitInput, path + ": cannot open"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json parse_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw CliError{kExitInput, path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                   ": malformed JSON"};
  }
}

std::vector<Instance> load_inputs(const Common& c) {
  std::vector<Instance> out;
  for (const std::string& path : c.inputs) {
    const Json j = parse_file(path);
    if (j.is_array()) {
      for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back({path + "#" + std::to_string(k), j[k].dump(), 0});
    } else {
      out.push_back({path, j.dump(), 0});
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].seed = setfn::mix_seed(c.seed, k);
  return out;
}

// Parse failures inside one instance name the instance.
[[noreturn]] void rethrow_for(const Instance& inst, const CliError& e) {
  throw CliError{e.code, inst.id + ": " + e.message};
}

int worker_count(const Common& c) {
  if (const char* env = std::getenv("SETFN_WORKERS")) {
    char* end = nullptr;
    const long w = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || w < 1) usage_error("SETFN_WORKERS must be a positive integer");
    return static_cast<int>(w);
  }
  return c.workers;
}

// Runs fn over instances on a fixed pool; records land at their instance
// index, and the first failure in instance order wins.
std::vector<ReportRecord> run_instances(const std::vector<Instance>& insts, const Common& c,
                                        const std::function<ReportRecord(const Instance&)>& fn,
                                        int workers = 0) {
  std::vector<ReportRecord> out(insts.size());
  std::vector<std::exception_ptr> errors(insts.size());
  auto one = [&](std::size_t k) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out[k] = fn(insts[k]);
      if (out[k].id.empty()) out[k].id = insts[k].id;
    } catch (const CliError& e) {
      try {
        rethrow_for(insts[k], e);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
    const auto t1 = std::chrono::steady_clock::now();
    out[k].ms = c.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
  };
  if (workers <= 0) workers = worker_count(c);
  workers = std::max(1, std::min<int>(workers, static_cast<int>(insts.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < insts.size(); ++k) one(k);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < insts.size(); k += workers) one(k);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int emit(const std::vector<ReportRecord>& records, const Common& c) {
  const std::string text = c.format == "csv" ? setfn::report::emit_csv(records)
                                             : setfn::report::emit_json(records);
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw CliError{kExitInput, c.output + ": cannot write"};
    out << text;
  }
  const bool ok = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  return ok ? 0 : kExitFail;
}

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') usage_error("--f: '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

// --- set-function sources --------------------------------------------------

struct Generate {
  std::string kind;
  int n = 4;
  double p = 2.0;
  int family = 0;
};

void add_generate(CLI::App* sub, Generate& g) {
  sub->add_option("--generate", g.kind,
                  "Seeded batch: submeasures with a lower p-estimate or supermeasures with an "
                  "upper p-estimate")
      ->check(CLI::IsMember({"submeasure", "supermeasure"}));
  sub->add_option("--n", g.n, "Atoms of generated instances")->check(CLI::Range(1, 16));
  sub->add_option("--gen-p", g.p, "Estimate exponent of generated instances")
      ->check(CLI::PositiveNumber);
  sub->add_option("--family", g.family, "Generator family")->check(CLI::Range(0, 2));
}

std::vector<Instance> setfunction_instances(const Common& c, const Generate& g) {
  if (!g.kind.empty()) {
    if (!c.inputs.empty()) usage_error("--generate and --input are exclusive");
    if (g.kind == "submeasure" && !(g.p > 1.0))
      usage_error("precondition: submeasure generator needs --gen-p > 1");
    if (g.kind == "supermeasure" && !(g.p > 0.0 && g.p < 1.0))
      usage_error("precondition: supermeasure generator needs 0 < --gen-p < 1");
    std::vector<Instance> out;
    for (int k = 0; k < c.trials; ++k)
      out.push_back({"gen-" + std::to_string(k), "", setfn::mix_seed(c.seed, k)});
    return out;
  }
  if (c.inputs.empty()) usage_error("provide --input or --generate");
  return load_inputs(c);
}

FnPtr make_setfunction(const Instance& inst, const Generate& g) {
  setfn_setfunction* raw = nullptr;
  if (inst.json.empty()) {
    if (g.kind == "submeasure")
      call(setfn_random_submeasure(g.n, g.p, g.family, inst.seed, &raw), "generate");
    else
      call(setfn_random_supermeasure(g.n, g.p, g.family, inst.seed, &raw), "generate");
  } else {
    call(setfn_setfunction_from_json(inst.json.c_str(), &raw), "set-function");
  }
  return FnPtr(raw);
}

int atoms(const setfn_setfunction* phi) {
  int n = 0;
  call(setfn_setfunction_atoms(phi, &n), "atoms");
  return n;
}

double value(const setfn_setfunction* phi, std::uint32_t mask) {
  double v = 0.0;
  call(setfn_setfunction_value(phi, mask, &v), "value");
  return v;
}

Json classify(const setfn_setfunction* phi, double tol) {
  char* s = nullptr;
  call(setfn_classify(phi, tol, &s), "classify");
  return Json::parse(take(s));
}

void add_generate_params(ReportRecord& r, const Instance& inst, const Generate& g) {
  if (!inst.json.empty()) return;
  r.param("generator", g.kind);
  r.param("n", g.n);
  r.param("gen_p", g.p);
  r.param("family", g.family);
  r.param("seed", inst.seed);
}

// --- norm sources ----------------------------------------------------------

NormPtr make_norm(const Instance& inst) {
  setfn_norm* raw = nullptr;
  call(setfn_norm_from_json(inst.json.c_str(), &raw), "quasi-norm");
  return NormPtr(raw);
}

struct Exponents {
  double p = kNaN, q = kNaN, a = kNaN, b = kNaN;
};

void add_exponents(CLI::App* sub, Exponents& e) {
  sub->add_option("--p", e.p, "Upper estimate exponent (default: the norm's own estimate)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--q", e.q, "Lower estimate exponent (default: the norm's own estimate)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--a", e.a, "Upper estimate constant (default: the norm's own)");
  sub->add_option("--b", e.b, "Lower estimate constant (default: the norm's own)");
}

Exponents resolve(const setfn_norm* x, Exponents e) {
  char* s = nullptr;
  call(setfn_norm_estimates(x, &s), "estimates");
  const Json j = Json::parse(take(s));
  auto fill = [&](double& v, const char* key, const char* flag) {
    if (!std::isnan(v)) return;
    if (j.is_null())
      usage_error(std::string("precondition: the norm declares no estimates; pass ") + flag);
    v = j.at(key).get<double>();
  };
  fill(e.p, "upper_exponent", "--p");
  fill(e.q, "lower_exponent", "--q");
  fill(e.a, "a", "--a");
  fill(e.b, "b", "--b");
  if (!(e.p < e.q)) usage_error("precondition: estimates need 0 < p < q");
  if (!(e.a >= 1.0 && e.b >= 1.0)) usage_error("precondition: estimate constants need a, b >= 1");
  return e;
}

void add_exponent_params(ReportRecord& r, const Exponents& e) {
  r.param("p", e.p);
  r.param("q", e.q);
  r.param("a", e.a);
  r.param("b", e.b);
}

// --- subcommands -----------------------------------------------------------

int cmd_check(const Common& c, const Generate& g, const std::string& expect) {
  return emit(run_instances(setfunction_instances(c, g), c, [&](const Instance& inst) {
                const FnPtr phi = make_setfunction(inst, g);
                const Json cls = classify(phi.get(), c.tol);
                ReportRecord r;
                add_generate_params(r, inst, g);
                for (const char* k : {"monotone", "submeasure", "supermeasure", "measure", "normalized"})
                  r.measure(k, cls.at(k).get<bool>() ? 1.0 : 0.0);
                r.measure("lower_exponent", number(cls, "lower_exponent"));
                r.measure("upper_exponent", number(cls, "upper_exponent"));
                r.measure("violations", static_cast<double>(cls.at("violations").size()));
                r.claim(expect, Relation::Equal, 1.0, 0.0);
                return r;
              }),
              c);
}

int cmd_exponents(const Common& c, const Generate& g, double at_least_lower,
                  double at_most_upper) {
  return emit(run_instances(setfunction_instances(c, g), c, [&](const Instance& inst) {
                const FnPtr phi = make_setfunction(inst, g);
                char* s = nullptr;
                call(setfn_exponents(phi.get(), c.tol, &s), "exponents");
                const Json e = Json::parse(take(s));
                ReportRecord r;
                add_generate_params(r, inst, g);
                r.measure("lower", number(e, "lower"));
                r.measure("upper", number(e, "upper"));
                if (!std::isnan(at_least_lower))
                  r.claim("lower", Relation::GreaterEq, at_least_lower, c.tol);
                else if (!std::isnan(at_most_upper))
                  r.claim("upper", Relation::LessEq, at_most_upper, c.tol);
                return r;
              }),
              c);
}

int cmd_extract(const Common& c, const Generate& g, const std::string& mode, bool continuity,
                bool exact, double p) {
  double kp = kNaN;
  if (!std::isnan(p)) call(setfn_kp(p, &kp), "--p");
  const bool dominated = mode == "dominated";
  if (continuity && dominated) usage_error("--continuity applies to --mode dominating");
  return emit(
      run_instances(setfunction_instances(c, g), c,
                    [&](const Instance& inst) {
                      const FnPtr phi = make_setfunction(inst, g);
                      const int n = atoms(phi.get());
                      char* s = nullptr;
                      call(setfn_extract(phi.get(),
                                         dominated ? SETFN_EXTRACT_DOMINATED : SETFN_EXTRACT_DOMINATING,
                                         continuity ? 1 : 0, exact ? 1 : 0, c.tol, &s),
                           "extract");
                      const Json sol = Json::parse(take(s));
                      const double total = value(phi.get(), (1u << n) - 1u);
                      ReportRecord r;
                      add_generate_params(r, inst, g);
                      r.param("mode", mode);
                      r.param("continuity", continuity);
                      r.param("exact", exact);
                      if (!std::isnan(p)) r.param("p", p);
                      r.measure("objective", number(sol, "objective"));
                      r.measure("total", total);
                      r.measure("residual", number(sol, "residual"));
                      r.measure("iterations", number(sol, "iterations"));
                      const Json& w = sol.at("weights");
                      for (int i = 0; i < n; ++i) r.measure("w" + std::to_string(i), w[i].get<double>());
                      if (continuity) {
                        int bad = 0;
                        for (std::uint32_t m = 1; m < (1u << n); ++m) {
                          if (value(phi.get(), m) != 0.0) continue;
                          for (int i = 0; i < n; ++i)
                            if ((m >> i & 1u) && w[i].get<double>() != 0.0) {
                              ++bad;
                              break;
                            }
                        }
                        r.measure("continuity_violations", bad);
                      }
                      if (!std::isnan(p)) {
                        r.measure("kp_total", kp * total);
                        r.claim("objective", dominated ? Relation::GreaterEq : Relation::LessEq,
                                kp * total, c.tol);
                      } else if (continuity) {
                        r.claim("continuity_violations", Relation::Equal, 0.0, 0.0);
                      } else {
                        r.claim("objective", dominated ? Relation::LessEq : Relation::GreaterEq,
                                total, c.tol);
                      }
                      return r;
                    }),
      c);
}

int cmd_envelope(const Common& c, const Generate& g, double q, double cc) {
  if (!(q >= 1.0)) usage_error("precondition: --q must be >= 1");
  if (!std::isnan(cc) && !(cc > 0.0 && cc <= 1.0)) usage_error("precondition: --c must lie in (0, 1]");
  return emit(
      run_instances(setfunction_instances(c, g), c,
                    [&](const Instance& inst) {
                      const FnPtr phi = make_setfunction(inst, g);
                      const int n = atoms(phi.get());
                      setfn_setfunction* raw = nullptr;
                      call(setfn_envelope(phi.get(), q, &raw), "envelope");
                      const FnPtr psi(raw);
                      call(setfn_setfunction_power(psi.get(), 1.0 / q, &raw), "envelope root");
                      const FnPtr root(raw);
                      ReportRecord r;
                      add_generate_params(r, inst, g);
                      r.param("q", q);
                      if (!std::isnan(cc)) r.param("c", cc);
                      const bool super = classify(psi.get(), c.tol).at("supermeasure").get<bool>();
                      const bool sub = classify(root.get(), c.tol).at("submeasure").get<bool>();
                      int sandwich = 0;
                      for (std::uint32_t m = 0; m < (1u << n); ++m) {
                        const double fq = std::pow(value(phi.get(), m), q);
                        const double s = value(psi.get(), m);
                        const double slack = c.tol * std::max(1.0, s);
                        if (fq > s + slack) ++sandwich;
                        if (!std::isnan(cc) && std::pow(cc, q) * s > fq + slack) ++sandwich;
                      }
                      r.measure("psi_supermeasure", super ? 1.0 : 0.0);
                      r.measure("root_submeasure", sub ? 1.0 : 0.0);
                      r.measure("sandwich_violations", sandwich);
                      r.measure("psi_total", value(psi.get(), (1u << n) - 1u));
                      int failed = (super ? 0 : 1) + (sub ? 0 : 1) + (sandwich ? 1 : 0);
                      if (!std::isnan(cc)) {
                        char* s = nullptr;
                        call(setfn_equivalent_measure(phi.get(), q, cc, c.tol, &s), "equivalent measure");
                        const Json mu = Json::parse(take(s));
                        const bool eq = mu.at("equivalent").get<bool>();
                        r.measure("equivalent", eq ? 1.0 : 0.0);
                        for (int i = 0; i < n; ++i)
                          r.measure("mu" + std::to_string(i), mu.at("weights")[i].get<double>());
                        failed += eq ? 0 : 1;
                      }
                      r.measure("checks_failed", failed);
                      r.claim("checks_failed", Relation::Equal, 0.0, 0.0);
                      return r;
                    }),
      c);
}

int cmd_kp(const Common& c, double p, bool report) {
  double v = 0.0;
  call(setfn_kp(p, &v), "--p");
  if (!report) {
    std::cout << setfn::report::format_double(v) << "\n";
    return 0;
  }
  ReportRecord r;
  r.id = "kp";
  r.param("p", p);
  r.measure("kp", v);
  return emit({r}, c);
}

setfn_lorentz_form form_of(const std::string& s) {
  if (s == "integral") return SETFN_FORM_INTEGRAL;
  if (s == "weak") return SETFN_FORM_WEAK;
  if (s == "lambda-sup") return SETFN_FORM_LAMBDA_SUP;
  return SETFN_FORM_LAMBDA_INF;
}

int cmd_lorentz(const Common& c, double p, double q, const std::string& form) {
  const setfn_lorentz_form f = form_of(form);
  if (f == SETFN_FORM_LAMBDA_SUP && !(p < q)) usage_error("precondition: lambda-sup needs p < q");
  if (f == SETFN_FORM_LAMBDA_INF && !(q < p)) usage_error("precondition: lambda-inf needs q < p");
  if (c.inputs.empty()) usage_error("provide --input with step functions {\"steps\": [[value, mass], ...]}");
  double lo = kNaN, hi = kNaN;
  if (f == SETFN_FORM_LAMBDA_SUP || f == SETFN_FORM_LAMBDA_INF)
    call(setfn_comparison_constants(p, q, &lo, &hi), "comparison constants");
  return emit(run_instances(load_inputs(c), c,
                            [&](const Instance& inst) {
                              double v = 0.0;
                              call(setfn_lorentz_norm(inst.json.c_str(), p, q, f, &v), "lorentz");
                              ReportRecord r;
                              r.param("p", p);
                              r.param("q", q);
                              r.param("form", form);
                              r.measure("value", v);
                              if (f == SETFN_FORM_LAMBDA_SUP || f == SETFN_FORM_LAMBDA_INF) {
                                double l = 0.0;
                                call(setfn_lorentz_norm(inst.json.c_str(), p, q, SETFN_FORM_INTEGRAL, &l),
                                     "lorentz");
                                r.param("ordering", f == SETFN_FORM_LAMBDA_SUP
                                                        ? "Lambda <= L <= upper * Lambda"
                                                        : "corrected: lower * Lambda <= L <= Lambda");
                                const double ratio = v > 0.0 ? l / v : 1.0;
                                r.measure("L", l);
                                r.measure("ratio", ratio);
                                r.measure("lower", lo);
                                r.measure("upper", hi);
                                r.measure("band_excess", std::max(lo - ratio, ratio - hi));
                                r.claim("band_excess", Relation::LessEq, 0.0, c.tol);
                              }
                              return r;
                            }),
              c);
}

std::vector<Instance> required_inputs(const Common& c, const char* what) {
  if (c.inputs.empty()) usage_error(std::string("provide --input with ") + what);
  return load_inputs(c);
}

int cmd_renorm(const Common& c, const Exponents& given, int families) {
  return emit(run_instances(required_inputs(c, "quasi-norm specs"), c,
                            [&](const Instance& inst) {
                              const NormPtr x = make_norm(inst);
                              const Exponents e = resolve(x.get(), given);
                              char* s = nullptr;
                              call(setfn_renorm_verify(x.get(), e.p, e.q, e.a, e.b, families,
                                                       inst.seed, c.tol, &s),
                                   "renorm");
                              const Json j = Json::parse(take(s));
                              ReportRecord r;
                              add_exponent_params(r, e);
                              r.param("families", families);
                              double total = 0.0;
                              for (const char* k : {"sandwich_violations", "upper_violations", "lower_violations"}) {
                                r.measure(k, number(j, k));
                                total += number(j, k);
                              }
                              for (const char* k : {"worst_sandwich", "worst_upper", "worst_lower"})
                                r.measure(k, number(j, k));
                              r.measure("violations", total);
                              r.claim("violations", Relation::Equal, 0.0, 0.0);
                              return r;
                            }),
              c);
}

int cmd_lattice(const Common& c, const Exponents& given, const std::string& side,
                const std::string& fspec, int samples) {
  const setfn_certificate_side sd = side == "lpinfty" ? SETFN_SIDE_LPINFTY
                                    : side == "lower"  ? SETFN_SIDE_LOWER
                                                       : SETFN_SIDE_UPPER;
  const std::vector<double> fv = fspec.empty() ? std::vector<double>{} : parse_vector(fspec);
  return emit(run_instances(required_inputs(c, "quasi-norm specs"), c,
                            [&](const Instance& inst) {
                              const NormPtr x = make_norm(inst);
                              const Exponents e = resolve(x.get(), given);
                              char* s = nullptr;
                              call(setfn_lattice_measure(x.get(), sd, e.p, e.q, e.a, e.b,
                                                         fv.empty() ? nullptr : fv.data(), fv.size(),
                                                         samples, inst.seed, c.tol, &s),
                                   "lattice-measure");
                              const Json j = Json::parse(take(s));
                              ReportRecord r;
                              r.param("side", side);
                              add_exponent_params(r, e);
                              r.param("samples", samples);
                              for (const char* k : {"constant", "max_observed_ratio", "extracted_mass", "kp"})
                                r.measure(k, number(j, k));
                              const Json& w = j.at("mu").at("weights");
                              for (std::size_t i = 0; i < w.size(); ++i)
                                r.measure("mu" + std::to_string(i), w[i].get<double>());
                              r.claim("max_observed_ratio", Relation::LessEq, number(j, "constant"), c.tol);
                              return r;
                            }),
              c);
}

int cmd_convexity(const Common& c, const std::string& kind, double rr, long budget, double theta,
                  double p, double cstar) {
  const setfn_convexity_kind k = kind == "convexity"   ? SETFN_CONVEXITY
                                 : kind == "concavity" ? SETFN_CONCAVITY
                                                       : SETFN_GEOMETRIC;
  double bound = kNaN;
  if (!std::isnan(theta)) {
    if (k != SETFN_CONVEXITY) usage_error("--theta bounds apply to --kind convexity");
    if (!(rr < p)) usage_error("precondition: the convexity bound needs --r < --p");
    call(setfn_convexity_bound(rr, p, theta, cstar, &bound), "convexity bound");
  }
  // Workers go to the search itself, instances run in order.
  const int workers = worker_count(c);
  return emit(run_instances(required_inputs(c, "quasi-norm specs"), c,
                            [&](const Instance& inst) {
                              const NormPtr x = make_norm(inst);
                              char* s = nullptr;
                              call(setfn_convexity(x.get(), k, rr, budget, inst.seed, workers, &s),
                                   "convexity");
                              const Json j = Json::parse(take(s));
                              ReportRecord r;
                              r.param("kind", kind);
                              r.param("r", rr);
                              r.param("budget", budget);
                              r.measure("lower_bound", number(j, "lower_bound"));
                              r.measure("budget_used", number(j, "budget_used"));
                              if (!std::isnan(bound)) {
                                r.param("theta", theta);
                                r.param("p", p);
                                r.param("c", cstar);
                                r.measure("bound", bound);
                                r.claim("lower_bound", Relation::LessEq, bound, c.tol);
                              }
                              return r;
                            },
                            1),
              c);
}

int cmd_sharpness(const Common& c, const std::vector<double>& thetas, int grid, double slack) {
  for (double t : thetas)
    if (!(t > 0.0 && t < 1.0)) usage_error("precondition: --theta must lie in (0, 1)");
  if (grid < 1000) usage_error("precondition: --grid must be at least 1000");
  std::vector<Instance> insts;
  for (std::size_t k = 0; k < thetas.size(); ++k)
    insts.push_back({"theta-" + setfn::report::format_double(thetas[k]), "", k});
  return emit(run_instances(insts, c,
                            [&](const Instance& inst) {
                              const double theta = thetas[inst.seed];
                              char* s = nullptr;
                              call(setfn_sharpness(theta, grid, &s), "sharpness");
                              const Json j = Json::parse(take(s));
                              ReportRecord r;
                              r.param("theta", theta);
                              r.param("grid", grid);
                              for (const char* k : {"q", "phi", "psi", "beta", "lambda_norm", "norm_q",
                                                    "norm_bound", "kappa_lower", "kappa_from_norm",
                                                    "log_ratio"})
                                r.measure(k, number(j, k));
                              r.claim("norm_q", Relation::LessEq, number(j, "norm_bound") * (1.0 + slack),
                                      c.tol);
                              return r;
                            }),
              c);
}

struct OperatorSource {
  bool random = false;
  double q = 2.0;
};

std::vector<Instance> operator_instances(const Common& c, const OperatorSource& src) {
  if (src.random) {
    if (!c.inputs.empty()) usage_error("--random and --input are exclusive");
    std::vector<Instance> out;
    for (int k = 0; k < c.trials; ++k)
      out.push_back({"op-" + std::to_string(k), "", setfn::mix_seed(c.seed, k)});
    return out;
  }
  return required_inputs(c, "operator specs");
}

OpPtr make_operator(const Instance& inst, const OperatorSource& src) {
  setfn_operator* raw = nullptr;
  if (inst.json.empty())
    call(setfn_operator_random(inst.seed, src.q, &raw), "random operator");
  else
    call(setfn_operator_from_json(inst.json.c_str(), &raw), "operator");
  return OpPtr(raw);
}

std::string factor(const setfn_operator* t, double p, int samples, std::uint64_t seed, double tol) {
  char* s = nullptr;
  call(setfn_factorize(t, p, samples, seed, tol, &s), "factorize");
  return take(s);
}

int cmd_factorize(const Common& c, const OperatorSource& src, double p, int samples,
                  const std::string& cert_out) {
  std::vector<Instance> insts = operator_instances(c, src);
  std::vector<std::string> certs(insts.size());
  auto records = run_instances(insts, c, [&](const Instance& inst) {
    const OpPtr t = make_operator(inst, src);
    const std::string cs = factor(t.get(), p, samples, inst.seed, c.tol);
    const Json j = Json::parse(cs);
    const std::size_t k = static_cast<std::size_t>(&inst - insts.data());
    certs[k] = cs;
    ReportRecord r;
    r.param("mode", j.at("mode"));
    r.param("r", number(j, "r"));
    r.param("q", number(j, "q"));
    r.param("p", number(j, "p"));
    r.param("samples", samples);
    for (const char* key : {"C1", "C2", "C3", "C4", "B", "kp_factor", "comparison_factor",
                            "max_ratio_iv"})
      r.measure(key, number(j, key));
    const Json& w = j.at("mu").at("weights");
    for (std::size_t i = 0; i < w.size(); ++i) r.measure("mu" + std::to_string(i), w[i].get<double>());
    r.claim("max_ratio_iv", Relation::LessEq, number(j, "C4"), c.tol);
    return r;
  });
  if (!cert_out.empty()) {
    Json all = Json::array();
    for (const auto& s : certs) all.push_back(Json::parse(s));
    std::ofstream out(cert_out, std::ios::binary);
    if (!out) throw CliError{kExitInput, cert_out + ": cannot write"};
    out << all.dump(2) << "\n";
  }
  return emit(records, c);
}

int cmd_verify(const Common& c, const OperatorSource& src, const std::string& cert_path, double p,
               int samples) {
  const std::vector<Instance> insts = operator_instances(c, src);
  std::vector<std::string> certs(insts.size());
  if (!cert_path.empty()) {
    const Json j = parse_file(cert_path);
    const Json list = j.is_array() ? j : Json::array({j});
    if (list.size() != insts.size())
      throw CliError{kExitInput, cert_path + ": " + std::to_string(list.size()) +
                                     " certificates for " + std::to_string(insts.size()) +
                                     " operators"};
    for (std::size_t k = 0; k < list.size(); ++k) certs[k] = list[k].dump();
  }
  return emit(run_instances(insts, c,
                            [&](const Instance& inst) {
                              const OpPtr t = make_operator(inst, src);
                              const std::size_t k = static_cast<std::size_t>(&inst - insts.data());
                              const std::string cs =
                                  certs[k].empty() ? factor(t.get(), p, 100, inst.seed, c.tol) : certs[k];
                              char* s = nullptr;
                              call(setfn_verify_conditions(t.get(), cs.c_str(), samples,
                                                           setfn::mix_seed(inst.seed, 1), 1, c.tol, &s),
                                   "verify");
                              const Json j = Json::parse(take(s));
                              const Json cert = Json::parse(cs);
                              ReportRecord r;
                              r.param("mode", cert.at("mode"));
                              r.param("p", number(cert, "p"));
                              r.param("samples", samples);
                              for (const char* key : {"C2", "C3", "C4"}) r.measure(key, number(cert, key));
                              double total = 0.0;
                              for (const char* key : {"max_ratio_ii", "max_ratio_iii", "max_ratio_iv"})
                                r.measure(key, number(j, key));
                              for (const char* key : {"violations_ii", "violations_iii", "violations_iv"}) {
                                r.measure(key, number(j, key));
                                total += number(j, key);
                              }
                              r.measure("violations", total);
                              r.claim("violations", Relation::Equal, 0.0, 0.0);
                              return r;
                            }),
              c);
}

int cmd_selftest(const Common& c, const std::vector<int>& only) {
  for (int id : only)
    if (id < 1 || id > 11) usage_error("--only: criteria are numbered 1 to 11");
  char* s = nullptr;
  call(setfn_selftest(c.trials, c.seed, worker_count(c), only.empty() ? nullptr : only.data(),
                      only.size(), &s),
       "selftest");
  const Json lines = Json::parse(take(s));
  std::vector<ReportRecord> records;
  for (const Json& line : lines) {
    ReportRecord r;
    r.id = "criterion-" + std::to_string(line.at("id").get<int>());
    r.param("title", line.at("title"));
    r.param("detail", line.at("detail"));
    for (auto it = line.at("measured").begin(); it != line.at("measured").end(); ++it)
      r.measure(it.key(), it.value().is_null() ? kNaN : it.value().get<double>());
    const bool pass = line.at("pass").get<bool>();
    r.measure("pass", pass ? 1.0 : 0.0);
    r.claim("pass", Relation::Equal, 1.0, 0.0);
    r.ms = c.timing ? 1000.0 * line.at("seconds").get<double>() : 0.0;
    std::fprintf(stderr, "[%s] %2d %s\n", pass ? "PASS" : "FAIL", line.at("id").get<int>(),
                 line.at("title").get<std::string>().c_str());
    records.push_back(std::move(r));
  }
  return emit(records, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-function and quasi-Banach lattice laboratory"};
  app.set_version_flag("--version", std::string(setfn_version()));
  app.require_subcommand(1);

  Common common;
  Generate gen;

  auto* check = app.add_subcommand(
      "check", "Classify set-functions: monotone, submeasure, supermeasure, measure, normalized");
  std::string expect = "monotone";
  add_common(check, common);
  add_generate(check, gen);
  check->add_option("--expect", expect, "Property every instance must have")
      ->check(CLI::IsMember({"monotone", "submeasure", "supermeasure", "measure", "normalized"}));

  auto* exps = app.add_subcommand(
      "exponents", "Critical exponents of the upper and lower p-estimates of a set-function");
  double at_least = kNaN, at_most = kNaN;
  add_common(exps, common);
  add_generate(exps, gen);
  auto* o_lower = exps->add_option("--expect-lower", at_least, "Claim: lower exponent is at least this");
  exps->add_option("--expect-upper", at_most, "Claim: upper exponent is at most this")->excludes(o_lower);

  auto* extract = app.add_subcommand(
      "extract",
      "Measure extraction by LP: the largest measure dominated by a submeasure, or the smallest "
      "measure dominating a supermeasure, compared with the constant K_p");
  std::string mode;
  bool continuity = false, exact = false;
  double extract_p = kNaN;
  add_common(extract, common);
  add_generate(extract, gen);
  extract->add_option("--mode", mode, "dominated | dominating")
      ->required()
      ->check(CLI::IsMember({"dominated", "dominating"}));
  extract->add_flag("--continuity", continuity, "Force the measure to vanish on null sets");
  extract->add_flag("--exact", exact, "Exact rational simplex (n <= 8)");
  extract->add_option("--p", extract_p, "Estimate exponent; claims objective against K_p * phi(Omega)")
      ->check(CLI::PositiveNumber);

  auto* envelope = app.add_subcommand(
      "envelope",
      "Supermeasure envelope psi of phi^q for a set-function with an upper q-estimate, and the "
      "measure with the same null sets");
  double env_q = 1.0, env_c = kNaN;
  add_common(envelope, common);
  add_generate(envelope, gen);
  envelope->add_option("--q", env_q, "Envelope exponent (>= 1)")->required();
  envelope->add_option("--c", env_c, "Constant with c^q psi <= phi^q, in (0, 1]");

  auto* kp = app.add_subcommand("kp", "The measure-extraction constant K_p = 2 (2^p - 1)^(-1/p) - 1");
  double kp_p = 1.0;
  add_common(kp, common, false);
  kp->add_option("--p", kp_p, "Exponent (> 0)")->required()->check(CLI::PositiveNumber);

  auto* lorentz = app.add_subcommand(
      "lorentz",
      "Lorentz quasi-norms of step functions: the integral L_{p,q} form, weak L_p, and the "
      "partition norms Lambda_{p,q} (sup for p < q, inf for q < p, with the corrected ordering)");
  double lz_p = 1.0, lz_q = 2.0;
  std::string form = "integral";
  add_common(lorentz, common);
  lorentz->add_option("--p", lz_p, "Exponent p (> 0)")->required()->check(CLI::PositiveNumber);
  lorentz->add_option("--q", lz_q, "Exponent q (> 0)")->required()->check(CLI::PositiveNumber);
  lorentz->add_option("--form", form, "integral | weak | lambda-sup | lambda-inf")
      ->check(CLI::IsMember({"integral", "weak", "lambda-sup", "lambda-inf"}));

  auto* renorm = app.add_subcommand(
      "renorm",
      "Renorming a quasi-Banach lattice with upper p- and lower q-estimates to exact constants "
      "one, checked on random disjoint families");
  Exponents ren_e;
  int families = 100;
  add_common(renorm, common);
  add_exponents(renorm, ren_e);
  renorm->add_option("--families", families, "Disjoint families per instance")->check(CLI::PositiveNumber);

  auto* lattice = app.add_subcommand(
      "lattice-measure",
      "Lattice measure certificates: the L_{p,infty} embedding measure, and the lower and upper "
      "Lorentz-comparison measures, with sampled ratio checks");
  Exponents lat_e;
  std::string side = "upper", fspec;
  int lat_samples = 100;
  add_common(lattice, common);
  add_exponents(lattice, lat_e);
  lattice->add_option("--side", side, "lpinfty | lower | upper")
      ->check(CLI::IsMember({"lpinfty", "lower", "upper"}));
  lattice->add_option("--f", fspec, "Base function, comma separated, unit norm (default: constant)");
  lattice->add_option("--samples", lat_samples, "Sampled g per instance")->check(CLI::NonNegativeNumber);

  auto* convexity = app.add_subcommand(
      "convexity",
      "Search for lower bounds on the r-convexity, p-concavity or geometric convexity constant "
      "of a quasi-norm, optionally against the theta-renorming bound");
  std::string kind = "convexity";
  double cv_r = 0.5, cv_theta = kNaN, cv_p = 1.0, cv_c = 2.0;
  long budget = 20000;
  add_common(convexity, common);
  convexity->add_option("--r", cv_r, "Convexity exponent")->required()->check(CLI::PositiveNumber);
  convexity->add_option("--kind", kind, "convexity | concavity | geometric")
      ->check(CLI::IsMember({"convexity", "concavity", "geometric"}));
  convexity->add_option("--budget", budget, "Norm evaluations")->check(CLI::PositiveNumber);
  convexity->add_option("--theta", cv_theta, "Claim the bound at this theta in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));
  convexity->add_option("--p", cv_p, "Upper estimate exponent for the bound")->check(CLI::PositiveNumber);
  convexity->add_option("--c", cv_c, "Constant c* for the bound")->check(CLI::PositiveNumber);

  auto* sharp = app.add_subcommand(
      "sharpness",
      "The sharpness example: the function f_theta in a Lorentz space, its norm bound and the "
      "convexity lower bound kappa(theta)");
  std::vector<double> thetas;
  int grid = 10000;
  double sharp_slack = 1e-3;
  add_common(sharp, common, false);
  sharp->add_option("--theta", thetas, "One record per theta in (0, 1)")->required();
  sharp->add_option("--grid", grid, "Grid cells (>= 1000)");
  sharp->add_option("--slack", sharp_slack, "Relative slack on the norm bound")->check(CLI::NonNegativeNumber);

  OperatorSource src;
  auto* factorize = app.add_subcommand(
      "factorize",
      "Change-of-density factorization of an operator from C(K) into a space with a lower "
      "q-estimate: disjointness constant C1, measure mu and the constant chain C2..C4");
  double fac_p = 0.0;
  int fac_samples = 100;
  std::string cert_out;
  add_common(factorize, common);
  factorize->add_flag("--random", src.random, "Seeded random operators (--trials of them)");
  factorize->add_option("--q", src.q, "Codomain lower estimate for random operators");
  factorize->add_option("--p", fac_p, "Exponent in [r, q) (default (r + q) / 2)");
  factorize->add_option("--samples", fac_samples, "Samples for the (iv) ratio")->check(CLI::NonNegativeNumber);
  factorize->add_option("--certificate-out", cert_out, "Write certificates (JSON array)");

  auto* verify = app.add_subcommand(
      "verify",
      "Sampled verification of the factorization conditions (ii), (iii) and (iv) against a "
      "certificate's constants");
  std::string cert_in;
  double ver_p = 0.0;
  int ver_samples = 1000;
  add_common(verify, common);
  verify->add_flag("--random", src.random, "Seeded random operators (--trials of them)");
  verify->add_option("--q", src.q, "Codomain lower estimate for random operators");
  verify->add_option("--certificate", cert_in, "Certificates from factorize --certificate-out")
      ->check(CLI::ExistingFile);
  verify->add_option("--p", ver_p, "Exponent when factorizing in place");
  verify->add_option("--samples", ver_samples, "Samples per condition")->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand(
      "selftest", "Run the acceptance suite: one record per criterion");
  std::vector<int> only;
  add_common(selftest, common, false);
  selftest->add_option("--only", only, "Criteria to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  // selftest keeps the per-criterion default counts unless --trials is given.
  if (selftest->parsed() && selftest->count("--trials") == 0) common.trials = 0;

  try {
    if (check->parsed()) return cmd_check(common, gen, expect);
    if (exps->parsed()) return cmd_exponents(common, gen, at_least, at_most);
    if (extract->parsed()) return cmd_extract(common, gen, mode, continuity, exact, extract_p);
    if (envelope->parsed()) return cmd_envelope(common, gen, env_q, env_c);
    if (kp->parsed())
      return cmd_kp(common, kp_p, kp->count("--format") > 0 || kp->count("--output") > 0);
    if (lorentz->parsed()) return cmd_lorentz(common, lz_p, lz_q, form);
    if (renorm->parsed()) return cmd_renorm(common, ren_e, families);
    if (lattice->parsed()) return cmd_lattice(common, lat_e, side, fspec, lat_samples);
    if (convexity->parsed())
      return cmd_convexity(common, kind, cv_r, budget, cv_theta, cv_p, cv_c);
    if (sharp->parsed()) return cmd_sharpness(common, thetas, grid, sharp_slack);
    if (factorize->parsed()) return cmd_factorize(common, src, fac_p, fac_samples, cert_out);
    if (verify->parsed()) return cmd_verify(common, src, cert_in, ver_p, ver_samples);
    if (selftest->parsed()) return cmd_selftest(common, only);
  } catch (const CliError& e) {
    std::fprintf(stderr, "setfn: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "setfn: %s\n", e.what());
    return kExitCompute;
  }
  return kExitUsage;
}
