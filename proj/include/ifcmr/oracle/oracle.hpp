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

// Bounded checkers for the four information-flow properties. Every verdict
// is relative to the input domain (maximum length and per-channel
// alphabets) and to the step budget used for each run.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifcmr/em/machine.hpp"
#include "ifcmr/em/run.hpp"
#include "ifcmr/em/scheduler.hpp"
#include "ifcmr/lang/channel.hpp"
#include "ifcmr/lang/interpreter.hpp"
#include "ifcmr/lang/queue.hpp"
#include "ifcmr/policy/policy.hpp"

namespace ifcmr {

struct InputDomain {
  ChannelEnv env;
  std::size_t max_len = 3;
  std::map<std::string, std::vector<Value>> alphabet;  // per input channel

  // Booleans {F, T} on boolean channels and {0, 1} on integer channels.
  static InputDomain standard(const ChannelEnv& env, std::size_t max_len);

  // Every input item, channel by channel in declaration order.
  std::vector<IoItem> items() const;
  // Number of input queues of length 0..max_len.
  std::size_t size() const;
  // Visits queues in order of length, then lexicographically by items();
  // stops early when `visit` returns false.
  void for_each_input(const std::function<bool(const IoQueue&)>& visit) const;
};

// Parses "cH1=T,F;cL2=0,1,2". Channels not mentioned keep their alphabet.
void apply_alphabet_spec(InputDomain& dom, std::string_view spec);

// The system under test: a program run on its own or under enforcement.
struct SystemRun {
  enum class Status : std::uint8_t {
    Terminated,     // finished and consumed the whole input
    NotTerminated,  // stopped without that: blocked, residual input, deadlock
    Diverged,       // ran out of budget
    Faulted,        // a kind error
  };

  Status status = Status::NotTerminated;
  IoQueue output;

  bool terminated() const { return status == Status::Terminated; }
};

// `env` carries the default values the run should use.
using System = std::function<SystemRun(const IoQueue& input, const ChannelEnv& env)>;

System standalone_system(const Program& p, std::size_t budget);
// A Completed run terminates only if it consumed the input in queue order.
System enforced_system(const Program& p, const PolicyConfig& policy, SchedulerSpec scheduler, std::size_t budget,
                       EmOptions options = {});

enum class Property : std::uint8_t { Tini, Tsni, Ri, Di };

std::string_view to_string(Property p);
std::optional<Property> parse_property(std::string_view s);

enum class Verdict : std::uint8_t { Holds, Violated, Inconclusive };

std::string_view to_string(Verdict v);

struct Witness {
  Property property = Property::Tini;
  std::string clause;
  IoQueue input;
  IoQueue output;
  // TINI/TSNI: the low-equivalent input that behaves differently.
  std::optional<IoQueue> other_input;
  std::optional<IoQueue> other_output;
  // RI/DI: default value per high input channel.
  std::map<std::string, Value> defaults;
  // DI: position in `input` of the high item that was deleted.
  std::optional<std::size_t> deleted_index;
  std::size_t candidates_tried = 0;
};

struct OracleOptions {
  std::size_t budget = 10000;
  std::size_t max_inputs = 2'000'000;  // Inconclusive beyond this
  // DI: inputs after the deleted item may not grow on any channel.
  bool di_strict = false;
  // TSNI: a kind error counts as non-termination of the second run.
  bool tsni_faults_diverge = true;
};

struct CheckResult {
  Verdict verdict = Verdict::Holds;
  std::optional<Witness> witness;
  std::size_t inputs_checked = 0;
  std::size_t runs = 0;
  std::string bounds;  // human-readable domain and budget
};

CheckResult check_tini(const System& sys, const InputDomain& dom, const OracleOptions& opt = {});
CheckResult check_tsni(const System& sys, const InputDomain& dom, const OracleOptions& opt = {});
CheckResult check_ri(const System& sys, const InputDomain& dom, const OracleOptions& opt = {});
CheckResult check_di(const System& sys, const InputDomain& dom, const OracleOptions& opt = {});
CheckResult check_property(Property p, const System& sys, const InputDomain& dom, const OracleOptions& opt = {});

// Convenience overloads for a stand-alone program.
CheckResult check_property(Property p, const Program& prog, const InputDomain& dom, const OracleOptions& opt = {});

// Uniform defaults: one value per value kind, taken from the alphabets of
// the high input channels, applied to every high input channel.
std::vector<std::map<std::string, Value>> default_assignments(const InputDomain& dom);

// Re-runs the instance described by a witness and confirms that it breaks
// the definition.
bool confirm_witness(const System& sys, const InputDomain& dom, const Witness& w, const OracleOptions& opt = {});

// Precision: for a program satisfying the property the policy enforces,
// every terminating input must give a single Completed outcome across all
// schedules, with the same per-channel I/O as the stand-alone run.
struct PrecisionCase {
  IoQueue input;
  IoQueue expected_output;
  bool ok = false;
  std::string detail;
  std::size_t states = 0;
};

struct PrecisionReport {
  bool ok = true;
  std::vector<PrecisionCase> cases;
};

PrecisionReport check_precision(const Program& p, const Machine& m, const InputDomain& dom,
                                const ExploreOptions& explore_options, std::size_t budget);

}  // namespace ifcmr
