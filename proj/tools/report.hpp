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
#include <utility>
#include <vector>

#include <json.hpp>

namespace setfn::report {

using Json = nlohmann::ordered_json;

/// How the subject quantity is compared with the bound.
enum class Relation { None, LessEq, GreaterEq, Equal };

const char* to_string(Relation r);
Relation relation_from_string(std::string_view s);

/// One instance of one experiment. The pass flag is a function of the
/// other fields: see recompute_pass.
struct ReportRecord {
  std::string id;
  /// Numbers or strings.
  std::vector<std::pair<std::string, Json>> params;
  /// Non-finite values serialize as null.
  std::vector<std::pair<std::string, double>> measured;
  /// Key into measured, or empty when the record makes no claim.
  std::string subject;
  Relation relation = Relation::None;
  double bound = 0.0;
  double tol = 0.0;
  bool pass = true;
  double ms = 0.0;

  void param(std::string key, Json value) { params.emplace_back(std::move(key), std::move(value)); }
  void measure(std::string key, double value) { measured.emplace_back(std::move(key), value); }
  /// Sets the claim and the pass flag together.
  void claim(std::string subject_, Relation relation_, double bound_, double tol_);
};

/// Tolerance is relative with unit floor: slack = tol * max(1, |bound|).
bool recompute_pass(const ReportRecord& r);

Json to_json(const ReportRecord& r);
ReportRecord record_from_json(const Json& j);

std::string emit_json(const std::vector<ReportRecord>& records);
/// Columns: id, params, subject, relation, tol, measured, bound, pass, ms.
/// Params and measured columns are the union over records in first-seen order.
std::string emit_csv(const std::vector<ReportRecord>& records);
std::vector<ReportRecord> parse_report(std::string_view json_text);

/// %.17g, with a trailing ".0" for integral values.
std::string format_double(double v);

}  // namespace setfn::report
