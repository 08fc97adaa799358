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

/* C interface to the set-function laboratory.
 *
 * Every call returns a setfn_status. On failure the message is available
 * from setfn_last_error() until the next call on the same thread. Strings
 * returned through char** are owned by the caller and released with
 * setfn_string_free. Handles are immutable once created and may be shared
 * between threads.
 */
#ifndef SETFN_SETFN_H
#define SETFN_SETFN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SETFN_API __declspec(dllexport)
#else
#define SETFN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SETFN_OK = 0,
  SETFN_ERR_INVALID_ARGUMENT = 1,
  SETFN_ERR_PARSE = 2,
  SETFN_ERR_PRECONDITION = 3,
  SETFN_ERR_INFEASIBLE = 4,
  SETFN_ERR_NUMERICAL = 5,
  SETFN_ERR_BUDGET = 6,
  SETFN_ERR_INTERNAL = 7
} setfn_status;

typedef enum { SETFN_EXTRACT_DOMINATED = 0, SETFN_EXTRACT_DOMINATING = 1 } setfn_extract_mode;

typedef enum {
  SETFN_FORM_INTEGRAL = 0,
  SETFN_FORM_WEAK = 1,
  SETFN_FORM_LAMBDA_SUP = 2,
  SETFN_FORM_LAMBDA_INF = 3
} setfn_lorentz_form;

typedef enum {
  SETFN_SIDE_LPINFTY = 0,
  SETFN_SIDE_LOWER = 1,
  SETFN_SIDE_UPPER = 2
} setfn_certificate_side;

typedef enum {
  SETFN_CONVEXITY = 0,
  SETFN_CONCAVITY = 1,
  SETFN_GEOMETRIC = 2
} setfn_convexity_kind;

typedef enum { SETFN_Z_AUTO = -1, SETFN_Z_EXACT = 0, SETFN_Z_HEURISTIC = 1 } setfn_z_mode;

typedef struct setfn_setfunction setfn_setfunction;
typedef struct setfn_norm setfn_norm;
typedef struct setfn_operator setfn_operator;

SETFN_API const char* setfn_version(void);
SETFN_API const char* setfn_last_error(void);
SETFN_API const char* setfn_status_name(setfn_status s);
SETFN_API void setfn_string_free(char* s);

/* Set-functions: JSON {"n": int, "values": [...]} indexed by bitmask. */
SETFN_API setfn_status setfn_setfunction_from_json(const char* json, setfn_setfunction** out);
SETFN_API setfn_status setfn_setfunction_to_json(const setfn_setfunction* phi, char** json);
SETFN_API void setfn_setfunction_free(setfn_setfunction* phi);
SETFN_API setfn_status setfn_setfunction_atoms(const setfn_setfunction* phi, int* n);
SETFN_API setfn_status setfn_setfunction_value(const setfn_setfunction* phi, uint32_t mask,
                                               double* value);
/* A -> phi(A)^s. */
SETFN_API setfn_status setfn_setfunction_power(const setfn_setfunction* phi, double s,
                                               setfn_setfunction** out);
/* Seeded generators. family selects the construction (0, 1 or 2). */
SETFN_API setfn_status setfn_random_submeasure(int n, double p, int family, uint64_t seed,
                                               setfn_setfunction** out);
SETFN_API setfn_status setfn_random_supermeasure(int n, double p, int family, uint64_t seed,
                                                 setfn_setfunction** out);

SETFN_API setfn_status setfn_classify(const setfn_setfunction* phi, double tol, char** json);
SETFN_API setfn_status setfn_exponents(const setfn_setfunction* phi, double tol, char** json);
SETFN_API setfn_status setfn_kp(double p, double* value);

/* LP extraction; the solution JSON carries weights, objective, status,
 * residual and active constraints. */
SETFN_API setfn_status setfn_extract(const setfn_setfunction* phi, setfn_extract_mode mode,
                                     int continuity, int exact, double tol, char** json);
SETFN_API setfn_status setfn_envelope(const setfn_setfunction* phi, double q,
                                      setfn_setfunction** out);
SETFN_API setfn_status setfn_equivalent_measure(const setfn_setfunction* phi, double q, double c,
                                                double tol, char** json);

/* Lorentz quasi-norms of a step function JSON {"steps": [[value, mass], ...]}. */
SETFN_API setfn_status setfn_lorentz_norm(const char* steps_json, double p, double q,
                                          setfn_lorentz_form form, double* value);
SETFN_API setfn_status setfn_comparison_constants(double p, double q, double* lower,
                                                  double* upper);

/* Quasi-norm specs: JSON {"n": int, "kind": "...", ...}. */
SETFN_API setfn_status setfn_norm_from_json(const char* json, setfn_norm** out);
SETFN_API setfn_status setfn_norm_to_json(const setfn_norm* x, char** json);
SETFN_API void setfn_norm_free(setfn_norm* x);
SETFN_API setfn_status setfn_norm_atoms(const setfn_norm* x, int* n);
SETFN_API setfn_status setfn_norm_eval(const setfn_norm* x, const double* f, size_t len,
                                       double* value);
/* JSON {"upper_exponent", "lower_exponent", "a", "b"} or null. */
SETFN_API setfn_status setfn_norm_estimates(const setfn_norm* x, char** json);
SETFN_API setfn_status setfn_admissibility(const setfn_norm* x, int samples, uint64_t seed,
                                           double tol, char** json);
SETFN_API setfn_status setfn_renorm(const setfn_norm* x, double p, double q, double a, double b,
                                    setfn_norm** y);
SETFN_API setfn_status setfn_renorm_verify(const setfn_norm* x, double p, double q, double a,
                                           double b, int families, uint64_t seed, double tol,
                                           char** json);
/* f may be NULL, meaning the constant function scaled to unit norm. */
SETFN_API setfn_status setfn_lattice_measure(const setfn_norm* x, setfn_certificate_side side,
                                             double p, double q, double a, double b,
                                             const double* f, size_t len, int samples,
                                             uint64_t seed, double tol, char** json);
SETFN_API setfn_status setfn_nondegeneracy_measure(const setfn_norm* x, double p, double q,
                                                   char** json);
SETFN_API setfn_status setfn_convexity(const setfn_norm* x, setfn_convexity_kind kind, double r,
                                       long budget, uint64_t seed, int workers, char** json);
SETFN_API setfn_status setfn_convexity_bound(double r, double p, double theta, double c,
                                             double* value);
SETFN_API setfn_status setfn_sharpness(double theta, int grid, char** json);

/* Operators: JSON {"matrix": [[...]], "codomain": <spec>, "r": real, "q": real}. */
SETFN_API setfn_status setfn_operator_from_json(const char* json, setfn_operator** out);
SETFN_API setfn_status setfn_operator_random(uint64_t seed, double q, setfn_operator** out);
SETFN_API setfn_status setfn_operator_to_json(const setfn_operator* t, char** json);
SETFN_API void setfn_operator_free(setfn_operator* t);
SETFN_API setfn_status setfn_disjointness_constant(const setfn_operator* t, setfn_z_mode mode,
                                                   double* value);
SETFN_API setfn_status setfn_z_norm(const setfn_operator* t, const double* f, size_t len,
                                    setfn_z_mode mode, double* value);
/* p <= 0 selects (r + q) / 2. */
SETFN_API setfn_status setfn_factorize(const setfn_operator* t, double p, int samples,
                                       uint64_t seed, double tol, char** certificate_json);
SETFN_API setfn_status setfn_verify_conditions(const setfn_operator* t,
                                               const char* certificate_json, int samples,
                                               uint64_t seed, int workers, double tol,
                                               char** json);

/* Runs the acceptance criteria. trials = 0 keeps each criterion's count;
 * only may be NULL to run all. The JSON is an array of result lines. */
SETFN_API setfn_status setfn_selftest(int trials, uint64_t seed, int workers, const int* only,
                                      size_t only_len, char** json);

#ifdef __cplusplus
}
#endif

#endif /* SETFN_SETFN_H */
