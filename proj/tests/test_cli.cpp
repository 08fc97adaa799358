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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" SETFN_CLI "' " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string("'" SETFN_DATA_DIR "/") + name + "'"; }
std::string scratch(const char* name) { return std::string(SETFN_SCRATCH_DIR "/") + name; }

nlohmann::json records(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("kp prints the constant") {
  const Result r = run("kp --p 1");
  CHECK(r.code == 0);
  CHECK(r.out == "1.0\n");
  const Result j = run("kp --p 2 --format json");
  CHECK(j.code == 0);
  CHECK(records(j)[0]["measured"]["kp"].get<double>() == doctest::Approx(2.0 / std::sqrt(3.0) - 1.0));
}

TEST_CASE("dominated extraction on an additive function returns its total") {
  const Result r = run("extract --mode dominated -i " + data("additive.json"));
  CHECK(r.code == 0);
  const auto m = records(r)[0]["measured"];
  CHECK(m["objective"].get<double>() == doctest::Approx(m["total"].get<double>()).epsilon(1e-12));
}

TEST_CASE("reports are deterministic across runs and worker counts") {
  const std::string args = "check --generate submeasure --n 5 --gen-p 1.5 --trials 12 --seed 3";
  const Result a = run(args + " --workers 1");
  const Result b = run(args + " --workers 1");
  const Result c = run(args + " --workers 4");
  const Result d = run(args, "SETFN_WORKERS=3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out == d.out);
  CHECK(records(a).size() == 12u);
  CHECK(run(args, "SETFN_WORKERS=zero 2>/dev/null").code == 2);
}

TEST_CASE("a failed claim gives exit status 1") {
  const Result r = run("check --expect measure -i " + data("sqrt_measure.json"));
  CHECK(r.code == 1);
  CHECK(records(r)[0]["pass"] == false);
}

TEST_CASE("diagnostics") {
  {
    std::ofstream out(scratch("bad.json"));
    out << "{\"n\": 2,\n \"values\": [0, 1,, 2]}\n";
  }
  Result r = run("check -i '" + scratch("bad.json") + "' 2>&1");
  CHECK(r.code == 3);
  CHECK(r.out.find("bad.json:2:") != std::string::npos);
  {
    std::ofstream out(scratch("bad_field.json"));
    out << "[{\"n\": 1, \"values\": [0, 1]}, {\"n\": 2, \"values\": [0, 1, 1]}]\n";
  }
  r = run("check -i '" + scratch("bad_field.json") + "' 2>&1");
  CHECK(r.code == 3);
  CHECK(r.out.find("#1") != std::string::npos);
  CHECK(r.out.find("values") != std::string::npos);
  r = run("lorentz --p 2 --q 1 --form lambda-sup -i " + data("two_step.json") + " 2>&1");
  CHECK(r.code == 2);
  CHECK(r.out.find("precondition") != std::string::npos);
  r = run("envelope --q 0.5 -i " + data("additive.json") + " 2>&1");
  CHECK(r.code == 2);
  r = run("sharpness --theta 1.5 2>&1");
  CHECK(r.code == 2);
  r = run("extract --mode sideways -i " + data("additive.json") + " 2>&1");
  CHECK(r.code == 2);
}

TEST_CASE("help names the construct") {
  const std::pair<const char*, const char*> cases[] = {
      {"check", "submeasure"},      {"exponents", "p-estimate"}, {"extract", "K_p"},
      {"envelope", "envelope"},     {"kp", "K_p"},               {"lorentz", "Lambda_{p,q}"},
      {"renorm", "Renorming"},      {"lattice-measure", "L_{p,infty}"},
      {"convexity", "r-convexity"}, {"sharpness", "kappa"},      {"factorize", "Change-of-density"},
      {"verify", "(iv)"},           {"selftest", "acceptance"}};
  for (const auto& [cmd, word] : cases) {
    const Result r = run(std::string(cmd) + " --help");
    CHECK(r.code == 0);
    CHECK_MESSAGE(r.out.find(word) != std::string::npos, std::string(cmd));
  }
}

TEST_CASE("lorentz forms and the corrected ordering") {
  Result r = run("lorentz --p 1 --q 2 --form lambda-sup -i " + data("two_step.json"));
  CHECK(r.code == 0);
  CHECK(records(r)[0]["measured"]["value"].get<double>() == doctest::Approx(std::sqrt(5.0)));
  r = run("lorentz --p 2 --q 1 --form lambda-inf -i " + data("two_step.json"));
  CHECK(r.code == 0);
  const auto rec = records(r)[0];
  CHECK(rec["measured"]["value"].get<double>() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(rec["params"]["ordering"].get<std::string>().find("corrected") != std::string::npos);
}

TEST_CASE("csv output") {
  const Result r = run("check --generate supermeasure --gen-p 0.5 --trials 3 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("id,", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

TEST_CASE("factorize writes certificates that verify reads") {
  const std::string cert = scratch("certs.json");
  Result r = run("factorize --random --trials 3 --seed 5 --certificate-out '" + cert + "'");
  CHECK(r.code == 0);
  r = run("verify --random --trials 3 --seed 5 --samples 200 --certificate '" + cert + "'");
  CHECK(r.code == 0);
  CHECK(records(r).size() == 3u);
  r = run("verify --random --trials 2 --seed 5 --certificate '" + cert + "' 2>&1");
  CHECK(r.code == 3);
}

TEST_CASE("norm subcommands on a Lorentz lattice") {
  CHECK(run("renorm -i " + data("lorentz_norm.json")).code == 0);
  for (const char* side : {"lpinfty", "lower", "upper"})
    CHECK(run(std::string("lattice-measure --samples 30 --side ") + side + " -i " + data("lorentz_norm.json")).code == 0);
  CHECK(run("convexity --r 0.5 --budget 500 --theta 0.1 --p 1 -i " + data("lorentz_norm.json")).code == 0);
  CHECK(run("sharpness --theta 0.2 --theta 0.1").code == 0);
}

TEST_CASE("selftest subset") {
  const Result r = run("selftest --only 3 --only 11 2>/dev/null");
  CHECK(r.code == 0);
  CHECK(records(r).size() == 2u);
}
