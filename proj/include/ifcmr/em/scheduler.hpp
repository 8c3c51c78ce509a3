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

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifcmr/em/config.hpp"

namespace ifcmr {

struct SchedulerSpec {
  enum class Kind : std::uint8_t {
    LowestIndex,   // first enabled transition in canonical order
    RoundRobin,    // rotate over executions, MAP and REDUCE
    SeededRandom,  // uniform choice from a seeded mt19937_64
    Scripted,      // follow a recorded schedule
  };

  Kind kind = Kind::LowestIndex;
  std::uint64_t seed = 0;
  std::vector<TransitionLabel> script;

  static SchedulerSpec lowest_index() { return {}; }
  static SchedulerSpec round_robin() { return {Kind::RoundRobin, 0, {}}; }
  static SchedulerSpec seeded(std::uint64_t seed) { return {Kind::SeededRandom, seed, {}}; }
  static SchedulerSpec scripted(std::vector<TransitionLabel> script) { return {Kind::Scripted, 0, std::move(script)}; }
};

std::string_view to_string(SchedulerSpec::Kind k);  // lowest, round-robin, random, scripted
std::optional<SchedulerSpec::Kind> parse_scheduler_kind(std::string_view s);

// A scripted schedule asked for a transition that is not enabled. `step`
// is the 0-based index of the schedule entry.
class ReplayDivergence : public std::runtime_error {
 public:
  ReplayDivergence(std::size_t step, std::string expected, std::vector<std::string> enabled);

  std::size_t step() const { return step_; }
  const std::string& expected() const { return expected_; }
  const std::vector<std::string>& enabled_labels() const { return enabled_; }

 private:
  std::size_t step_;
  std::string expected_;
  std::vector<std::string> enabled_;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  // Index into `enabled`, which is non-empty and in canonical order.
  virtual std::size_t choose(const std::vector<TransitionLabel>& enabled) = 0;
  // Scripted schedulers stop the run when the script is used up.
  virtual bool exhausted() const { return false; }
};

std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec& spec);

}  // namespace ifcmr
