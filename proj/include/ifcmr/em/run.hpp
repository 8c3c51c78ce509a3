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

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ifcmr/em/machine.hpp"
#include "ifcmr/em/scheduler.hpp"

namespace ifcmr {

// Called after every transition with the configuration it started from.
using TransitionObserver = std::function<void(const EmConfig& before, const Transition& t)>;

inline constexpr std::size_t kDefaultBudget = 100000;

struct RunOptions {
  SchedulerSpec scheduler;
  std::size_t budget = kDefaultBudget;
  TransitionObserver observer;
};

struct GlobalReadRecord {
  std::size_t step;  // 1-based index of the transition
  IoItem item;
  std::size_t requester;
};

struct GlobalWriteRecord {
  std::size_t step;
  IoItem item;
  std::size_t source_exec;
};

struct ExecutionSummary {
  std::size_t id = 0;
  std::optional<std::size_t> parent;  // set for clones
  ExecState state = ExecState::Executing;
  bool finished = false;  // program reduced to skip
  IoQueue delivered;      // everything put in its local input
  IoQueue produced;       // everything it output locally
  IoQueue pending_in;     // local input left at the end
};

struct RunResult {
  RunOutcome outcome = RunOutcome::Deadlocked;
  std::size_t steps = 0;
  IoQueue input;
  IoQueue consumed;  // global reads, in the order they happened
  IoQueue residual;
  IoQueue global_output;
  std::vector<GlobalReadRecord> reads;
  std::vector<GlobalWriteRecord> writes;
  std::vector<ExecutionSummary> executions;
  std::size_t clone_count = 0;
  std::vector<TransitionLabel> schedule;
  std::vector<std::string> notes;  // why a deadlocked run stopped
  EmConfig final_config;
};

RunResult run_enforced(const Program& p, const Machine& m, const IoQueue& input, const RunOptions& options = {});

// Outcome plus the per-channel view of the global input consumed and the
// global output produced.
struct RunClass {
  RunOutcome outcome = RunOutcome::Completed;
  std::map<std::string, std::vector<Value>> consumed;
  std::map<std::string, std::vector<Value>> output;

  auto operator<=>(const RunClass&) const = default;
  bool operator==(const RunClass&) const = default;
};

RunClass run_class(RunOutcome outcome, const IoQueue& input, const EmConfig& cfg);
std::string to_string(const RunClass& c);

struct ExploreOptions {
  std::size_t depth = 400;
  std::size_t max_states = 2'000'000;
  // Take internal local steps eagerly (see Machine::internal_local_step).
  // A clone of an executing local execution would make this unsound; if
  // one is seen, the search is redone without it.
  bool reduce = true;
  TransitionObserver observer;
};

struct ExploreResult {
  // BudgetExceeded classes stand for paths cut at the depth bound or
  // closing a cycle.
  std::set<RunClass> classes;
  bool partial = false;        // max_states reached
  bool depth_limited = false;  // some path hit the depth bound
  bool divergent = false;      // a cycle was found
  bool reduced = false;        // the eager silent-step reduction was used
  std::size_t states = 0;
};

// All schedules, up to the bounds.
ExploreResult explore(const Program& p, const Machine& m, const IoQueue& input, const ExploreOptions& options = {});

}  // namespace ifcmr
