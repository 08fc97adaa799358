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

// Runs every acceptance criterion and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "setfn/acceptance.hpp"

int main(int argc, char** argv) {
  setfn::AcceptanceConfig cfg;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--trials" && i + 1 < argc) cfg.trials = std::atoi(argv[++i]);
    else if (a == "--seed" && i + 1 < argc) cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "--workers" && i + 1 < argc) cfg.workers = std::atoi(argv[++i]);
    else if (a == "--only" && i + 1 < argc) cfg.only.push_back(std::atoi(argv[++i]));
    else {
      std::fprintf(stderr, "usage: %s [--trials N] [--seed S] [--workers W] [--only K]...\n", argv[0]);
      return 2;
    }
  }
  int failed = 0;
  for (const auto& line : setfn::run_acceptance(cfg)) {
    std::printf("[%s] %2d  %-44s %6.1fs  %s\n", line.pass ? "PASS" : "FAIL", line.id, line.title.c_str(),
                line.seconds, line.detail.c_str());
    for (const auto& [k, v] : line.measured) std::printf("          %s = %.17g\n", k.c_str(), v);
    std::fflush(stdout);
    if (!line.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
