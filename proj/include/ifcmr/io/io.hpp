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

// File formats: channel environments, input traces, policy files and run
// trace documents, plus the text tables used by `run --pretty`.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ifcmr/em/machine.hpp"
#include "ifcmr/em/run.hpp"
#include "ifcmr/em/scheduler.hpp"
#include "ifcmr/lang/channel.hpp"
#include "ifcmr/lang/interpreter.hpp"
#include "ifcmr/lang/queue.hpp"
#include "ifcmr/oracle/oracle.hpp"
#include "ifcmr/policy/policy.hpp"

namespace ifcmr::io {

using Json = nlohmann::ordered_json;

// A file could not be read or does not have the expected shape.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

// Values are JSON booleans and unsigned integers; the strings "T", "F" and
// decimal numerals are accepted on input too.
Json value_to_json(Value v);
Value value_from_json(const Json& j);

Json queue_to_json(const IoQueue& q);
IoQueue queue_from_json(const Json& j);

// {"channels": [{"name", "direction": "in"|"out", "level": "H"|"L",
//   "type": "bool"|"int", "default"}]}; "type" may be left out when
// "default" is given, and "default" falls back to F or 0.
Json channels_to_json(const ChannelEnv& env);
ChannelEnv channels_from_json(const Json& j);
ChannelEnv load_channels(const std::filesystem::path& path);

// Input traces: one `CHANNEL=VALUE` per line (blank lines and lines
// starting with '#' are skipped), a JSON array of {channel, value}, or a
// JSON object with an "input" array (so trace documents and witnesses can
// be fed back in). Every item must name a declared input channel and
// carry a value of its kind.
IoQueue parse_input(std::string_view text, const ChannelEnv& env);
IoQueue load_input(const std::filesystem::path& path, const ChannelEnv& env);

// Policy files. Table columns are objects with optional "H" and "L" cells
// and concrete channel names that override them.
Json policy_to_json(const PolicyConfig& p);
PolicyConfig policy_from_json(const Json& j);
PolicyConfig load_policy(const std::filesystem::path& path);
// The variant REDUCE table as a stand-alone document.
Json variant_reduce_table_json();

Json scheduler_to_json(const SchedulerSpec& s);
SchedulerSpec scheduler_from_json(const Json& j);

// What a trace document needs besides the run itself.
struct TraceContext {
  std::string program_path;
  std::string program_source;
  ChannelEnv env;
  std::string policy;  // shipped name, "none", or a custom name
  std::optional<PolicyConfig> custom_policy;
  SchedulerSpec scheduler;
  std::size_t budget = kDefaultBudget;
  EmOptions options;
};

inline constexpr std::string_view kTraceFormat = "ifcmr-trace";

Json trace_to_json(const RunResult& r, const TraceContext& ctx);
// A stand-alone run (policy "none"): no schedule and no executions.
Json standalone_trace_to_json(const Outcome& o, const IoQueue& input, const TraceContext& ctx);
// An oracle counterexample in trace form; `input` and `global_output` are
// the witness input and the output of the stand-alone run on it.
Json witness_to_json(const Witness& w, const TraceContext& ctx);

// Shape problems of a trace document; empty when valid.
std::vector<std::string> validate_trace(const Json& doc);

// The first field on which two trace documents differ, described for a
// human, or nothing when the run-dependent fields agree.
std::optional<std::string> first_difference(const Json& recorded, const Json& replayed);

// Time-by-channel table: one row per channel, one column per item.
std::string render_queue_table(std::string_view title, const IoQueue& q, const std::vector<std::string>& channels);
// Global input consumed, global output and every local queue.
std::string render_run_tables(const RunResult& r, const ChannelEnv& env);

}  // namespace ifcmr::io
