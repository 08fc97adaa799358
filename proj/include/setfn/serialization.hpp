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

#include <string>
#include <string_view>

#include <json.hpp>

#include "setfn/factorization.hpp"
#include "setfn/lattice.hpp"
#include "setfn/lorentz.hpp"
#include "setfn/measure_lp.hpp"
#include "setfn/quasi_norm.hpp"
#include "setfn/set_function.hpp"

namespace setfn {

using Json = nlohmann::ordered_json;

/// Parses text, reporting syntax errors as ErrorCode::Parse with line and column.
Json parse_json(std::string_view text);

/// Compact dump with every double printed to 17 significant digits.
std::string dump_json(const Json& j, int indent = -1);

// Readers raise ErrorCode::Parse naming the offending field.
SetFunction set_function_from_json(const Json& j);
AtomicMeasure measure_from_json(const Json& j);
StepFunction step_function_from_json(const Json& j);
QuasiNormSpec quasi_norm_from_json(const Json& j);
OperatorSpec operator_from_json(const Json& j);
/// Reads back what to_json(FactorizationCertificate) writes.
FactorizationCertificate certificate_from_json(const Json& j);

/// Function vectors, as plain arrays of numbers.
std::vector<double> vector_from_json(const Json& j, const std::string& field);

Json to_json(const SetFunction& phi);
Json to_json(const AtomicMeasure& mu);
Json to_json(const LpSolution& s);
Json to_json(const StepFunction& f);
Json to_json(const QuasiNormSpec& x);
Json to_json(const OperatorSpec& t);
Json to_json(const ClassificationReport& r);
Json to_json(const ExponentEstimate& e);
Json to_json(const RenormCheck& r);
Json to_json(const LatticeMeasureCertificate& c);
Json to_json(const ConvexityEstimate& e);
Json to_json(const SharpnessResult& s);
Json to_json(const FactorizationCertificate& c);
Json to_json(const ConditionReport& r);

}  // namespace setfn
