// Copyright 2026 The ifcmr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifcmr/em/config.hpp"
#include "ifcmr/lang/channel.hpp"

namespace ifcmr {

// Checks made on every transition of an enforced run:
//  - global reads on high channels never serve executions >= 1 (only when
//    `high_reads_only_by_zero`, i.e. for NI-like tables);
//  - execution 1 only ever receives default values on high channels;
//  - high global writes come from execution 0, low ones from execution 1;
//  - a woken execution carries no pending signal.
class AttributionChecker {
 public:
  AttributionChecker(const ChannelEnv& env, bool high_reads_only_by_zero)
      : env_(env), high_reads_only_by_zero_(high_reads_only_by_zero) {}

  // Records and returns the first problem with this transition, if any.
  std::optional<std::string> check(const EmConfig& before, const Transition& t);

  const std::vector<std::string>& violations() const { return violations_; }
  std::size_t transitions_checked() const { return checked_; }
  std::size_t high_reads_by_low() const { return high_reads_by_low_; }

 private:
  const ChannelEnv& env_;
  bool high_reads_only_by_zero_;
  std::vector<std::string> violations_;
  std::size_t checked_ = 0;
  std::size_t high_reads_by_low_ = 0;
};

// True for policies whose execution 1 may not ask for high inputs.
bool forbids_high_reads_by_low(const std::string& policy_name);

}  // namespace ifcmr
