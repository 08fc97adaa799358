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
#include <string>
#include <vector>

#include "setfn/error.hpp"
#include "setfn/serialization.hpp"

using namespace setfn;

namespace {

std::string parse_message(const std::string& text) {
  try {
    (void)parse_json(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

template <class Fn>
std::string field_message(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("syntax errors report line and column") {
  const std::string msg = parse_message("{\n  \"n\": 2,\n  \"values\": [0, 1,, 2]\n}");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("field errors name the field path") {
  auto msg = field_message([] { set_function_from_json(parse_json(R"({"n": 2, "values": [0, 1, -1, 2]})")); });
  CHECK(msg.find("values[2]") != std::string::npos);
  msg = field_message([] { set_function_from_json(parse_json(R"({"values": [0]})")); });
  CHECK(msg.find("'n'") != std::string::npos);
  msg = field_message([] {
    operator_from_json(parse_json(
        R"({"matrix": [[1, 0]], "codomain": {"n": 1, "kind": "weighted-ls", "s": 1, "weights": ["x"]}})"));
  });
  CHECK(msg.find("codomain.weights[0]") != std::string::npos);
  msg = field_message([] { quasi_norm_from_json(parse_json(R"({"n": 2, "kind": "nope"})")); });
  CHECK(msg.find("kind") != std::string::npos);
}

TEST_CASE("set-function round trip is lossless") {
  const SetFunction phi(GroundSet(2), {0.0, 0.1, 1.0 / 3.0, std::sqrt(2.0)});
  const std::string text = dump_json(to_json(phi));
  const SetFunction back = set_function_from_json(parse_json(text));
  for (std::uint32_t m = 0; m < 4; ++m) CHECK(back(Subset(m)) == phi(Subset(m)));
  CHECK(dump_json(to_json(back)) == text);
}

TEST_CASE("quasi-norm specs round trip") {
  const AtomicMeasure mu(GroundSet(3), {0.5, 1.0, 2.0});
  const std::vector<QuasiNormSpec> specs{
      weighted_ls(1.5, {1.0, 2.0, 3.0}), lorentz_lambda(1.0, 2.0, mu), lorentz_integral(2.0, 1.0, mu),
      weak_lp(1.5, mu), scaled(2.0, max_of(weighted_ls(1.0, {1, 1, 1}), lorentz_lambda(2.0, 0.5, mu)))};
  const std::vector<double> f{0.3, -1.2, 2.5};
  for (const QuasiNormSpec& x : specs) {
    const QuasiNormSpec back = quasi_norm_from_json(parse_json(dump_json(to_json(x))));
    CHECK(back(f) == x(f));
  }
  const QuasiNormSpec mu_object =
      quasi_norm_from_json(parse_json(R"({"n": 2, "kind": "weak-lp", "p": 2, "mu": {"n": 2, "weights": [1, 4]}})"));
  CHECK(mu_object(std::vector<double>{1.0, 1.0}) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("operator and certificate round trip") {
  const OperatorSpec t = operator_from_json(parse_json(
      R"({"matrix": [[1, 0], [0, -2]], "codomain": {"n": 2, "kind": "weighted-ls", "s": 1, "weights": [1, 1]}})"));
  CHECK(t.r == 1.0);
  CHECK(t.q == 2.0);
  const auto cert = factorization_measure(t);
  const auto back = certificate_from_json(parse_json(dump_json(to_json(cert))));
  CHECK(back.c1 == cert.c1);
  CHECK(back.c4 == cert.c4);
  CHECK(back.mode == cert.mode);
  CHECK(back.mu.weight(1) == cert.mu.weight(1));
  const OperatorSpec t2 = operator_from_json(parse_json(dump_json(to_json(t))));
  CHECK(apply_norm(t2, std::vector<double>{1.0, 1.0}) == apply_norm(t, std::vector<double>{1.0, 1.0}));
}

TEST_CASE("dump prints 17 significant digits and nulls non-finite values") {
  Json j = Json::object();
  j["x"] = 0.1;
  j["y"] = std::numeric_limits<double>::infinity();
  const std::string s = dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("null") != std::string::npos);
}

TEST_CASE("step functions parse") {
  const StepFunction f = step_function_from_json(parse_json(R"({"steps": [[2, 1], [1, 1]]})"));
  CHECK(f.total_mass() == 2.0);
  CHECK_THROWS_AS(step_function_from_json(parse_json(R"({"steps": [[1, 1], [2, 1]]})")), Error);
}
