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

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace setfn::report {

namespace {

void write_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  out += format_double(v);
}

void write(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        write_string(out, it.key());
        out += ':';
        write(out, it.value());
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(out, j[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: write_number(out, j.get<double>()); break;
    default: out += j.dump();
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string csv_value(const Json& v) {
  if (v.is_string()) return csv_cell(v.get<std::string>());
  if (v.is_number_float()) {
    double d = v.get<double>();
    return std::isfinite(d) ? format_double(d) : "";
  }
  if (v.is_null()) return "";
  std::string s;
  write(s, v);
  return csv_cell(s);
}

void add_key(std::vector<std::string>& keys, const std::string& k) {
  if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
}

double number_or_nan(const Json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::None: return "none";
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "==";
  }
  return "none";
}

Relation relation_from_string(std::string_view s) {
  if (s == "none") return Relation::None;
  if (s == "<=") return Relation::LessEq;
  if (s == ">=") return Relation::GreaterEq;
  if (s == "==") return Relation::Equal;
  throw std::invalid_argument("unknown relation '" + std::string(s) + "'");
}

void ReportRecord::claim(std::string subject_, Relation relation_, double bound_, double tol_) {
  subject = std::move(subject_);
  relation = relation_;
  bound = bound_;
  tol = tol_;
  pass = recompute_pass(*this);
}

bool recompute_pass(const ReportRecord& r) {
  if (r.relation == Relation::None) return true;
  auto it = std::find_if(r.measured.begin(), r.measured.end(),
                         [&](const auto& kv) { return kv.first == r.subject; });
  if (it == r.measured.end()) return false;
  double v = it->second;
  if (std::isnan(v) || std::isnan(r.bound)) return false;
  double slack = r.tol * std::max(1.0, std::isfinite(r.bound) ? std::fabs(r.bound) : 1.0);
  switch (r.relation) {
    case Relation::LessEq: return v <= r.bound + slack;
    case Relation::GreaterEq: return v >= r.bound - slack;
    case Relation::Equal: return v == r.bound || std::fabs(v - r.bound) <= slack;
    case Relation::None: break;
  }
  return true;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

Json to_json(const ReportRecord& r) {
  Json j = Json::object();
  j["id"] = r.id;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  Json measured = Json::object();
  for (const auto& [k, v] : r.measured) measured[k] = std::isfinite(v) ? Json(v) : Json(nullptr);
  j["measured"] = measured;
  j["subject"] = r.subject;
  j["relation"] = to_string(r.relation);
  j["bound"] = std::isfinite(r.bound) ? Json(r.bound) : Json(nullptr);
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["ms"] = r.ms;
  return j;
}

ReportRecord record_from_json(const Json& j) {
  ReportRecord r;
  r.id = j.at("id").get<std::string>();
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
    r.params.emplace_back(it.key(), it.value());
  for (auto it = j.at("measured").begin(); it != j.at("measured").end(); ++it)
    r.measured.emplace_back(it.key(), number_or_nan(it.value()));
  r.subject = j.at("subject").get<std::string>();
  r.relation = relation_from_string(j.at("relation").get<std::string>());
  r.bound = number_or_nan(j.at("bound"));
  r.tol = j.at("tol").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.ms = j.at("ms").get<double>();
  return r;
}

std::string emit_json(const std::vector<ReportRecord>& records) {
  std::string out = "[";
  for (size_t i = 0; i < records.size(); ++i) {
    out += i ? ",\n" : "\n";
    write(out, to_json(records[i]));
  }
  out += records.empty() ? "]" : "\n]";
  out += '\n';
  return out;
}

std::string emit_csv(const std::vector<ReportRecord>& records) {
  std::vector<std::string> pkeys, mkeys;
  for (const auto& r : records) {
    for (const auto& kv : r.params) add_key(pkeys, kv.first);
    for (const auto& kv : r.measured) add_key(mkeys, kv.first);
  }
  std::string out = "id";
  for (const auto& k : pkeys) out += "," + csv_cell(k);
  out += ",subject,relation,tol";
  for (const auto& k : mkeys) out += "," + csv_cell(k);
  out += ",bound,pass,ms\n";
  for (const auto& r : records) {
    out += csv_cell(r.id);
    for (const auto& k : pkeys) {
      out += ',';
      for (const auto& kv : r.params)
        if (kv.first == k) out += csv_value(kv.second);
    }
    out += "," + csv_cell(r.subject) + "," + to_string(r.relation) + "," + format_double(r.tol);
    for (const auto& k : mkeys) {
      out += ',';
      for (const auto& kv : r.measured)
        if (kv.first == k && std::isfinite(kv.second)) out += format_double(kv.second);
    }
    out += ",";
    if (std::isfinite(r.bound)) out += format_double(r.bound);
    out += r.pass ? ",true," : ",false,";
    out += format_double(r.ms) + "\n";
  }
  return out;
}

std::vector<ReportRecord> parse_report(std::string_view json_text) {
  Json j = Json::parse(json_text);
  if (!j.is_array()) throw std::invalid_argument("report must be a JSON array");
  std::vector<ReportRecord> out;
  for (const auto& e : j) out.push_back(record_from_json(e));
  return out;
}

}  // namespace setfn::report
