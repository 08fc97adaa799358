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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include <json.hpp>

#include "setfn/setfn.h"

namespace {

std::string take(char* s) {
  std::string out = s;
  setfn_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(setfn_version()) == "1.0.0");
  CHECK(std::string(setfn_status_name(SETFN_ERR_PARSE)) == "parse");
  CHECK(std::string(setfn_status_name(SETFN_OK)) == "ok");
}

TEST_CASE("set-function handle lifecycle") {
  setfn_setfunction* phi = nullptr;
  REQUIRE(setfn_setfunction_from_json(R"({"n": 2, "values": [0, 1, 2, 3]})", &phi) == SETFN_OK);
  int n = 0;
  CHECK(setfn_setfunction_atoms(phi, &n) == SETFN_OK);
  CHECK(n == 2);
  double v = 0.0;
  CHECK(setfn_setfunction_value(phi, 3, &v) == SETFN_OK);
  CHECK(v == 3.0);
  CHECK(setfn_setfunction_value(phi, 4, &v) == SETFN_ERR_INVALID_ARGUMENT);
  char* json = nullptr;
  REQUIRE(setfn_classify(phi, 1e-9, &json) == SETFN_OK);
  const auto cls = nlohmann::json::parse(take(json));
  CHECK(cls["measure"] == true);
  REQUIRE(setfn_extract(phi, SETFN_EXTRACT_DOMINATED, 0, 1, 1e-9, &json) == SETFN_OK);
  const auto sol = nlohmann::json::parse(take(json));
  CHECK(sol["objective"].get<double>() == doctest::Approx(3.0));
  setfn_setfunction* root = nullptr;
  REQUIRE(setfn_setfunction_power(phi, 0.5, &root) == SETFN_OK);
  CHECK(setfn_setfunction_value(root, 3, &v) == SETFN_OK);
  CHECK(v == doctest::Approx(std::sqrt(3.0)));
  setfn_setfunction_free(root);
  setfn_setfunction_free(phi);
  setfn_setfunction_free(nullptr);
}

TEST_CASE("errors carry codes and messages") {
  setfn_setfunction* phi = nullptr;
  CHECK(setfn_setfunction_from_json("{\"n\": 2,", &phi) == SETFN_ERR_PARSE);
  CHECK(std::string(setfn_last_error()).find("line") != std::string::npos);
  CHECK(phi == nullptr);
  CHECK(setfn_setfunction_from_json(R"({"n": 1, "values": [1, 1]})", &phi) == SETFN_ERR_PARSE);
  CHECK(setfn_classify(nullptr, 1e-9, nullptr) == SETFN_ERR_INVALID_ARGUMENT);
  double v = 0.0;
  CHECK(setfn_kp(-1.0, &v) == SETFN_ERR_INVALID_ARGUMENT);
  CHECK(setfn_kp(1.0, &v) == SETFN_OK);
  CHECK(v == 1.0);
  CHECK(std::string(setfn_last_error()).empty());
  CHECK(setfn_lorentz_norm(R"({"steps": [[2, 1], [1, 1]]})", 2.0, 1.0, SETFN_FORM_LAMBDA_SUP, &v) ==
        SETFN_ERR_PRECONDITION);
}

TEST_CASE("last error is per thread") {
  double v = 0.0;
  CHECK(setfn_kp(-1.0, &v) != SETFN_OK);
  const std::string mine = setfn_last_error();
  std::thread([] {
    double w = 0.0;
    CHECK(setfn_kp(2.0, &w) == SETFN_OK);
    CHECK(std::string(setfn_last_error()).empty());
  }).join();
  CHECK(std::string(setfn_last_error()) == mine);
}

TEST_CASE("lorentz and comparison constants") {
  double v = 0.0;
  const char* two = R"({"steps": [[2, 1], [1, 1]]})";
  CHECK(setfn_lorentz_norm(two, 1.0, 2.0, SETFN_FORM_LAMBDA_SUP, &v) == SETFN_OK);
  CHECK(v == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(setfn_lorentz_norm(two, 1.0, 2.0, SETFN_FORM_INTEGRAL, &v) == SETFN_OK);
  CHECK(v == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
  double lo = 0.0, hi = 0.0;
  CHECK(setfn_comparison_constants(1.0, 2.0, &lo, &hi) == SETFN_OK);
  CHECK(lo == 1.0);
  CHECK(hi >= 1.0);
}

TEST_CASE("norms, renorming and certificates") {
  setfn_norm* x = nullptr;
  REQUIRE(setfn_norm_from_json(R"({"n": 3, "kind": "lorentz-lambda", "p": 1, "q": 2, "mu": [1, 1, 2]})", &x) ==
          SETFN_OK);
  char* json = nullptr;
  REQUIRE(setfn_norm_estimates(x, &json) == SETFN_OK);
  const auto est = nlohmann::json::parse(take(json));
  const double p = est["upper_exponent"], q = est["lower_exponent"], a = est["a"], b = est["b"];
  REQUIRE(setfn_renorm_verify(x, p, q, a, b, 20, 3, 1e-9, &json) == SETFN_OK);
  CHECK(nlohmann::json::parse(take(json))["pass"] == true);
  for (setfn_certificate_side side : {SETFN_SIDE_LPINFTY, SETFN_SIDE_LOWER, SETFN_SIDE_UPPER}) {
    REQUIRE(setfn_lattice_measure(x, side, p, q, a, b, nullptr, 0, 30, 5, 1e-9, &json) == SETFN_OK);
    CHECK(nlohmann::json::parse(take(json))["pass"] == true);
  }
  setfn_norm* y = nullptr;
  REQUIRE(setfn_renorm(x, p, q, a, b, &y) == SETFN_OK);
  const double f[3] = {1.0, 2.0, 3.0};
  double fx = 0.0, fy = 0.0;
  CHECK(setfn_norm_eval(x, f, 3, &fx) == SETFN_OK);
  CHECK(setfn_norm_eval(y, f, 3, &fy) == SETFN_OK);
  CHECK(fx <= fy * (1.0 + 1e-9));
  CHECK(setfn_norm_eval(x, f, 2, &fx) == SETFN_ERR_INVALID_ARGUMENT);
  setfn_norm_free(y);
  setfn_norm_free(x);
}

TEST_CASE("operators: factorize then verify through JSON") {
  setfn_operator* t = nullptr;
  REQUIRE(setfn_operator_random(3, 2.0, &t) == SETFN_OK);
  char* cert = nullptr;
  REQUIRE(setfn_factorize(t, 0.0, 50, 7, 1e-9, &cert) == SETFN_OK);
  char* report = nullptr;
  REQUIRE(setfn_verify_conditions(t, cert, 200, 9, 2, 1e-9, &report) == SETFN_OK);
  CHECK(nlohmann::json::parse(take(report))["pass"] == true);
  double c1 = 0.0;
  CHECK(setfn_disjointness_constant(t, SETFN_Z_AUTO, &c1) == SETFN_OK);
  CHECK(nlohmann::json::parse(std::string(cert))["C1"].get<double>() == c1);
  setfn_string_free(cert);
  CHECK(setfn_verify_conditions(t, "{}", 10, 1, 1, 1e-9, &report) == SETFN_ERR_PARSE);
  setfn_operator_free(t);
}

TEST_CASE("selftest subset") {
  const int only[] = {3, 11};
  char* json = nullptr;
  REQUIRE(setfn_selftest(0, 7, 1, only, 2, &json) == SETFN_OK);
  const auto lines = nlohmann::json::parse(take(json));
  REQUIRE(lines.size() == 2u);
  CHECK(lines[0]["id"] == 3);
  CHECK(lines[0]["pass"] == true);
  CHECK(lines[1]["pass"] == true);
}
