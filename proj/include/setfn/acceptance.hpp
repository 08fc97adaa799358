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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace setfn {

struct AcceptanceConfig {
  /// Instances per configuration; 0 keeps each criterion's own count.
  int trials = 0;
  std::uint64_t seed = 7;
  int workers = 1;
  /// Criteria to run (1..11); empty runs all.
  std::vector<int> only;
};

struct AcceptanceLine {
  AcceptanceLine() = default;
  AcceptanceLine(int id_, std::string title_) : id(id_), title(std::move(title_)) {}

  int id = 0;
  std::string title;
  bool pass = false;
  /// Named measured quantities, in a fixed order per criterion.
  std::vector<std::pair<std::string, double>> measured;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kAcceptanceCriteria = 11;

std::vector<AcceptanceLine> run_acceptance(const AcceptanceConfig& cfg);

/// Runs one criterion.
AcceptanceLine run_criterion(int id, const AcceptanceConfig& cfg);

}  // namespace setfn
