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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifcmr/em/config.hpp"
#include "ifcmr/lang/channel.hpp"
#include "ifcmr/policy/policy.hpp"

namespace ifcmr {

enum class GlobalReadMode : std::uint8_t {
  // MAP's `input x from c` takes the first item on c anywhere in the queue.
  PerChannel,
  // Only the head of the global queue may be read; it must be on c.
  HeadOnly,
};

struct EmOptions {
  GlobalReadMode read_mode = GlobalReadMode::PerChannel;
};

class TransitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The fixed part of an enforcement setup: channels, policy and options.
// Configurations are plain values threaded through it.
class Machine {
 public:
  Machine(ChannelEnv env, PolicyConfig policy, EmOptions options = {});

  const ChannelEnv& env() const { return env_; }
  const PolicyConfig& policy() const { return policy_; }
  const EmOptions& options() const { return options_; }

  // Every execution starts on `p` with empty memory and queues; both
  // components are idle.
  EmConfig initial(const Program& p, const IoQueue& input) const;

  // Enabled transitions in canonical order: local executions by index,
  // then MAP, then REDUCE.
  std::vector<Transition> successors(const EmConfig& cfg) const;
  std::vector<TransitionLabel> enabled(const EmConfig& cfg) const;

  // The transition with this label, or nothing when it is not enabled.
  // The rule of a label is ignored when matching.
  std::optional<Transition> apply(const EmConfig& cfg, const TransitionLabel& label) const;

  // The step of the lowest executing local execution whose next step
  // touches only its own state: a silent step, or a read served from its
  // local input queue.
  std::optional<Transition> internal_local_step(const EmConfig& cfg) const;

  // Why each unfinished actor cannot move; used to describe deadlocks.
  std::vector<std::string> blocked_reasons(const EmConfig& cfg) const;

 private:
  std::optional<Transition> local_step(const EmConfig& cfg, std::size_t i) const;
  std::optional<Transition> activate(const EmConfig& cfg, std::size_t i, bool reduce) const;
  std::optional<Transition> handler_step(const EmConfig& cfg, bool reduce) const;

  ChannelEnv env_;
  PolicyConfig policy_;
  EmOptions options_;
  std::map<std::string, std::vector<PrivCell>> clone_in_columns_;
  std::map<std::string, std::vector<PrivCell>> clone_out_columns_;
};

EmConfig init_em(const Program& p, const Machine& m, const IoQueue& input);
std::vector<TransitionLabel> enabled(const Machine& m, const EmConfig& cfg);
// Throws TransitionError when the label is not enabled.
Transition apply_transition(const Machine& m, const EmConfig& cfg, const TransitionLabel& label);

// stt = S, the signal names an input channel and the next instruction reads it.
bool is_waiting_input(const LocalExec& e, const ChannelEnv& env);
// stt = S and the signal names an output channel.
bool is_waiting_output(const LocalExec& e, const ChannelEnv& env);

// Truth of `pred` for execution x. `handler_mem` resolves expressions in
// identical(...).
bool eval_predicate(const Predicate& pred, std::size_t x, const EmConfig& cfg, const Memory& handler_mem,
                    const ChannelEnv& env);

enum class RunOutcome : std::uint8_t {
  Completed,              // everything finished and the global input is empty
  QuiescentWithResidual,  // everything finished, global input left over
  Deadlocked,             // stopped with unfinished work
  BudgetExceeded,
};

std::string_view to_string(RunOutcome o);
std::optional<RunOutcome> parse_run_outcome(std::string_view s);

// Classification of a configuration with no enabled transition.
RunOutcome classify_terminal(const EmConfig& cfg);

}  // namespace ifcmr
