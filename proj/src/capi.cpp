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

#include "setfn/setfn.h"

#include <cstring>
#include <new>
#include <string>

#include "setfn/acceptance.hpp"
#include "setfn/error.hpp"
#include "setfn/factorization.hpp"
#include "setfn/lattice.hpp"
#include "setfn/lorentz.hpp"
#include "setfn/measure_lp.hpp"
#include "setfn/serialization.hpp"
#include "setfn/set_function.hpp"

struct setfn_setfunction {
  setfn::SetFunction value;
};

struct setfn_norm {
  setfn::QuasiNormSpec value;
};

struct setfn_operator {
  setfn::OperatorSpec value;
};

namespace {

using setfn::ErrorCode;
using setfn::Json;

thread_local std::string g_last_error;

setfn_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return SETFN_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SETFN_ERR_PARSE;
    case ErrorCode::Precondition: return SETFN_ERR_PRECONDITION;
    case ErrorCode::Infeasible: return SETFN_ERR_INFEASIBLE;
    case ErrorCode::Numerical: return SETFN_ERR_NUMERICAL;
    case ErrorCode::Budget: return SETFN_ERR_BUDGET;
  }
  return SETFN_ERR_INTERNAL;
}

template <class Fn>
setfn_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SETFN_OK;
  } catch (const setfn::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SETFN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SETFN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SETFN_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  setfn::require(p != nullptr, ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = duplicate(setfn::dump_json(j)); }

std::vector<double> vector_arg(const double* f, size_t len) {
  if (len > 0) need(f, "function pointer");
  return std::vector<double>(f, f + len);
}

setfn::ZMode mode_arg(const setfn::OperatorSpec& t, setfn_z_mode m) {
  switch (m) {
    case SETFN_Z_AUTO: return setfn::default_mode(t);
    case SETFN_Z_EXACT: return setfn::ZMode::Exact;
    case SETFN_Z_HEURISTIC: return setfn::ZMode::Heuristic;
  }
  setfn::fail(ErrorCode::InvalidArgument, "unknown Z mode");
}

}  // namespace

extern "C" {

const char* setfn_version(void) { return "1.0.0"; }

const char* setfn_last_error(void) { return g_last_error.c_str(); }

const char* setfn_status_name(setfn_status s) {
  switch (s) {
    case SETFN_OK: return "ok";
    case SETFN_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SETFN_ERR_PARSE: return "parse";
    case SETFN_ERR_PRECONDITION: return "precondition";
    case SETFN_ERR_INFEASIBLE: return "infeasible";
    case SETFN_ERR_NUMERICAL: return "numerical";
    case SETFN_ERR_BUDGET: return "budget";
    case SETFN_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void setfn_string_free(char* s) { std::free(s); }

setfn_status setfn_setfunction_from_json(const char* json, setfn_setfunction** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new setfn_setfunction{setfn::set_function_from_json(setfn::parse_json(json))};
  });
}

setfn_status setfn_setfunction_to_json(const setfn_setfunction* phi, char** json) {
  return guard([&] {
    need(phi, "set-function");
    need(json, "json");
    emit(setfn::to_json(phi->value), json);
  });
}

void setfn_setfunction_free(setfn_setfunction* phi) { delete phi; }

setfn_status setfn_setfunction_atoms(const setfn_setfunction* phi, int* n) {
  return guard([&] {
    need(phi, "set-function");
    need(n, "n");
    *n = phi->value.n();
  });
}

setfn_status setfn_setfunction_value(const setfn_setfunction* phi, uint32_t mask, double* value) {
  return guard([&] {
    need(phi, "set-function");
    need(value, "value");
    setfn::require(phi->value.ground().contains(setfn::Subset(mask)), ErrorCode::InvalidArgument,
                   "mask lies outside the ground set");
    *value = phi->value(setfn::Subset(mask));
  });
}

setfn_status setfn_setfunction_power(const setfn_setfunction* phi, double s,
                                     setfn_setfunction** out) {
  return guard([&] {
    need(phi, "set-function");
    need(out, "out");
    *out = new setfn_setfunction{setfn::power(phi->value, s)};
  });
}

setfn_status setfn_random_submeasure(int n, double p, int family, uint64_t seed,
                                     setfn_setfunction** out) {
  return guard([&] {
    need(out, "out");
    setfn::require(family >= 0 && family <= 2, ErrorCode::InvalidArgument,
                   "family must be 0, 1 or 2");
    *out = new setfn_setfunction{setfn::random_submeasure_lower_p(
        setfn::GroundSet(n), p, seed, static_cast<setfn::SubmeasureFamily>(family))};
  });
}

setfn_status setfn_random_supermeasure(int n, double p, int family, uint64_t seed,
                                       setfn_setfunction** out) {
  return guard([&] {
    need(out, "out");
    setfn::require(family >= 0 && family <= 2, ErrorCode::InvalidArgument,
                   "family must be 0, 1 or 2");
    *out = new setfn_setfunction{setfn::random_supermeasure_upper_p(
        setfn::GroundSet(n), p, seed, static_cast<setfn::SupermeasureFamily>(family))};
  });
}

setfn_status setfn_classify(const setfn_setfunction* phi, double tol, char** json) {
  return guard([&] {
    need(phi, "set-function");
    need(json, "json");
    emit(setfn::to_json(setfn::classify(phi->value, tol)), json);
  });
}

setfn_status setfn_exponents(const setfn_setfunction* phi, double tol, char** json) {
  return guard([&] {
    need(phi, "set-function");
    need(json, "json");
    emit(setfn::to_json(setfn::estimate_exponents(phi->value, tol)), json);
  });
}

setfn_status setfn_kp(double p, double* value) {
  return guard([&] {
    need(value, "value");
    *value = setfn::kp_constant(p);
  });
}

setfn_status setfn_extract(const setfn_setfunction* phi, setfn_extract_mode mode, int continuity,
                           int exact, double tol, char** json) {
  return guard([&] {
    need(phi, "set-function");
    need(json, "json");
    setfn::LpOptions opt;
    opt.tol = tol;
    opt.exact = exact != 0;
    switch (mode) {
      case SETFN_EXTRACT_DOMINATED:
        emit(setfn::to_json(setfn::max_dominated_measure(phi->value, opt)), json);
        return;
      case SETFN_EXTRACT_DOMINATING:
        emit(setfn::to_json(setfn::min_dominating_measure(phi->value, continuity != 0, opt)), json);
        return;
    }
    setfn::fail(ErrorCode::InvalidArgument, "unknown extraction mode");
  });
}

setfn_status setfn_envelope(const setfn_setfunction* phi, double q, setfn_setfunction** out) {
  return guard([&] {
    need(phi, "set-function");
    need(out, "out");
    *out = new setfn_setfunction{setfn::envelope_supermeasure(phi->value, q)};
  });
}

setfn_status setfn_equivalent_measure(const setfn_setfunction* phi, double q, double c, double tol,
                                      char** json) {
  return guard([&] {
    need(phi, "set-function");
    need(json, "json");
    const setfn::AtomicMeasure mu = setfn::equivalent_measure(phi->value, q, c, tol);
    Json j = setfn::to_json(mu);
    j["equivalent"] = setfn::check_equivalence(phi->value, mu);
    emit(j, json);
  });
}

setfn_status setfn_lorentz_norm(const char* steps_json, double p, double q, setfn_lorentz_form form,
                                double* value) {
  return guard([&] {
    need(steps_json, "steps json");
    need(value, "value");
    const setfn::StepFunction f = setfn::step_function_from_json(setfn::parse_json(steps_json));
    switch (form) {
      case SETFN_FORM_INTEGRAL: *value = setfn::lpq_norm(f, {p, q}); return;
      case SETFN_FORM_WEAK: *value = setfn::lp_weak_norm(f, p); return;
      case SETFN_FORM_LAMBDA_SUP: *value = setfn::lambda_sup_norm(f, {p, q}); return;
      case SETFN_FORM_LAMBDA_INF: *value = setfn::lambda_inf_norm(f, {p, q}); return;
    }
    setfn::fail(ErrorCode::InvalidArgument, "unknown Lorentz form");
  });
}

setfn_status setfn_comparison_constants(double p, double q, double* lower, double* upper) {
  return guard([&] {
    need(lower, "lower");
    need(upper, "upper");
    const setfn::ComparisonConstants c = setfn::comparison_constants({p, q});
    *lower = c.lower;
    *upper = c.upper;
  });
}

setfn_status setfn_norm_from_json(const char* json, setfn_norm** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new setfn_norm{setfn::quasi_norm_from_json(setfn::parse_json(json))};
  });
}

setfn_status setfn_norm_to_json(const setfn_norm* x, char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    emit(setfn::to_json(x->value), json);
  });
}

void setfn_norm_free(setfn_norm* x) { delete x; }

setfn_status setfn_norm_atoms(const setfn_norm* x, int* n) {
  return guard([&] {
    need(x, "norm");
    need(n, "n");
    *n = x->value.n();
  });
}

setfn_status setfn_norm_eval(const setfn_norm* x, const double* f, size_t len, double* value) {
  return guard([&] {
    need(x, "norm");
    need(value, "value");
    *value = x->value(vector_arg(f, len));
  });
}

setfn_status setfn_norm_estimates(const setfn_norm* x, char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    const auto e = x->value.estimates();
    if (!e) {
      emit(Json(nullptr), json);
      return;
    }
    emit(Json{{"upper_exponent", e->upper_exponent},
              {"lower_exponent", e->lower_exponent},
              {"a", e->a},
              {"b", e->b}},
         json);
  });
}

setfn_status setfn_admissibility(const setfn_norm* x, int samples, uint64_t seed, double tol,
                                 char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    const setfn::AdmissibilityReport r = setfn::check_admissible(x->value, samples, seed, tol);
    emit(Json{{"samples", r.samples},
              {"monotone_violations", r.monotone_violations},
              {"homogeneity_violations", r.homogeneity_violations},
              {"pass", r.pass()}},
         json);
  });
}

setfn_status setfn_renorm(const setfn_norm* x, double p, double q, double a, double b,
                          setfn_norm** y) {
  return guard([&] {
    need(x, "norm");
    need(y, "out");
    *y = new setfn_norm{setfn::renorm(x->value, p, q, a, b).y};
  });
}

setfn_status setfn_renorm_verify(const setfn_norm* x, double p, double q, double a, double b,
                                 int families, uint64_t seed, double tol, char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    const setfn::RenormResult r = setfn::renorm(x->value, p, q, a, b);
    emit(setfn::to_json(setfn::verify_renorm(r, x->value, families, seed, tol)), json);
  });
}

setfn_status setfn_lattice_measure(const setfn_norm* x, setfn_certificate_side side, double p,
                                   double q, double a, double b, const double* f, size_t len,
                                   int samples, uint64_t seed, double tol, char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    setfn::require(samples >= 0, ErrorCode::InvalidArgument, "sample count must be nonnegative");
    std::vector<double> fv;
    if (f == nullptr) {
      fv.assign(x->value.n(), 1.0);
    } else {
      fv = vector_arg(f, len);
    }
    // The lpinfty construction works on the renormed space itself.
    const setfn::QuasiNormSpec space =
        side == SETFN_SIDE_LPINFTY ? setfn::renorm(x->value, p, q, a, b).y : x->value;
    if (f == nullptr) {
      const double norm = space(fv);
      setfn::require(norm > 0.0, ErrorCode::Precondition, "the constant function has norm 0");
      for (double& v : fv) v /= norm;
    }
    const setfn::CertificateOptions opt{samples, seed, tol};
    switch (side) {
      case SETFN_SIDE_LPINFTY:
        emit(setfn::to_json(setfn::lpinfty_embedding_measure(space, p, q, fv, opt)), json);
        return;
      case SETFN_SIDE_LOWER:
        emit(setfn::to_json(setfn::lattice_measure_lower(space, p, q, a, b, fv, opt)), json);
        return;
      case SETFN_SIDE_UPPER:
        emit(setfn::to_json(setfn::lattice_measure_upper(space, p, q, a, b, fv, opt)), json);
        return;
    }
    setfn::fail(ErrorCode::InvalidArgument, "unknown certificate side");
  });
}

setfn_status setfn_nondegeneracy_measure(const setfn_norm* x, double p, double q, char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    emit(setfn::to_json(setfn::nondegeneracy_measure(x->value, p, q)), json);
  });
}

setfn_status setfn_convexity(const setfn_norm* x, setfn_convexity_kind kind, double r, long budget,
                             uint64_t seed, int workers, char** json) {
  return guard([&] {
    need(x, "norm");
    need(json, "json");
    const setfn::SearchOptions opt{budget, seed, workers};
    switch (kind) {
      case SETFN_CONVEXITY: emit(setfn::to_json(setfn::estimate_convexity(x->value, r, opt)), json); return;
      case SETFN_CONCAVITY: emit(setfn::to_json(setfn::estimate_concavity(x->value, r, opt)), json); return;
      case SETFN_GEOMETRIC: emit(setfn::to_json(setfn::estimate_geo_convexity(x->value, opt)), json); return;
    }
    setfn::fail(ErrorCode::InvalidArgument, "unknown convexity kind");
  });
}

setfn_status setfn_convexity_bound(double r, double p, double theta, double c, double* value) {
  return guard([&] {
    need(value, "value");
    *value = setfn::convexity_bound(r, p, theta, c);
  });
}

setfn_status setfn_sharpness(double theta, int grid, char** json) {
  return guard([&] {
    need(json, "json");
    emit(setfn::to_json(setfn::sharpness_example(theta, grid)), json);
  });
}

setfn_status setfn_operator_from_json(const char* json, setfn_operator** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new setfn_operator{setfn::operator_from_json(setfn::parse_json(json))};
  });
}

setfn_status setfn_operator_random(uint64_t seed, double q, setfn_operator** out) {
  return guard([&] {
    need(out, "out");
    *out = new setfn_operator{setfn::random_operator(seed, q)};
  });
}

setfn_status setfn_operator_to_json(const setfn_operator* t, char** json) {
  return guard([&] {
    need(t, "operator");
    need(json, "json");
    emit(setfn::to_json(t->value), json);
  });
}

void setfn_operator_free(setfn_operator* t) { delete t; }

setfn_status setfn_disjointness_constant(const setfn_operator* t, setfn_z_mode mode, double* value) {
  return guard([&] {
    need(t, "operator");
    need(value, "value");
    *value = setfn::disjointness_constant(t->value, mode_arg(t->value, mode));
  });
}

setfn_status setfn_z_norm(const setfn_operator* t, const double* f, size_t len, setfn_z_mode mode,
                          double* value) {
  return guard([&] {
    need(t, "operator");
    need(value, "value");
    *value = setfn::z_norm(t->value, vector_arg(f, len), mode_arg(t->value, mode));
  });
}

setfn_status setfn_factorize(const setfn_operator* t, double p, int samples, uint64_t seed,
                             double tol, char** certificate_json) {
  return guard([&] {
    need(t, "operator");
    need(certificate_json, "json");
    const setfn::FactorizationOptions opt{p, samples, seed, tol};
    emit(setfn::to_json(setfn::factorization_measure(t->value, opt)), certificate_json);
  });
}

setfn_status setfn_verify_conditions(const setfn_operator* t, const char* certificate_json,
                                     int samples, uint64_t seed, int workers, double tol,
                                     char** json) {
  return guard([&] {
    need(t, "operator");
    need(certificate_json, "certificate json");
    need(json, "json");
    const setfn::FactorizationCertificate cert =
        setfn::certificate_from_json(setfn::parse_json(certificate_json));
    setfn::require(cert.mu.n() == t->value.cols(), ErrorCode::InvalidArgument,
                   "certificate measure does not match the operator's column count");
    emit(setfn::to_json(setfn::verify_conditions(t->value, cert, samples, seed, workers, tol)), json);
  });
}

setfn_status setfn_selftest(int trials, uint64_t seed, int workers, const int* only,
                            size_t only_len, char** json) {
  return guard([&] {
    need(json, "json");
    setfn::AcceptanceConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.workers = workers;
    if (only_len > 0) {
      need(only, "criteria list");
      cfg.only.assign(only, only + only_len);
      for (int id : cfg.only)
        setfn::require(id >= 1 && id <= setfn::kAcceptanceCriteria, ErrorCode::InvalidArgument,
                       "unknown acceptance criterion " + std::to_string(id));
    }
    Json out = Json::array();
    for (const setfn::AcceptanceLine& line : setfn::run_acceptance(cfg)) {
      Json measured = Json::object();
      for (const auto& [k, v] : line.measured) measured[k] = v;
      out.push_back(Json{{"id", line.id},
                         {"title", line.title},
                         {"pass", line.pass},
                         {"measured", measured},
                         {"detail", line.detail},
                         {"seconds", line.seconds}});
    }
    emit(out, json);
  });
}

}  // extern "C"
