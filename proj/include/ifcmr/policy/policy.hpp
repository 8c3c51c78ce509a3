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
#include <string_view>
#include <vector>

#include "ifcmr/em/tables.hpp"
#include "ifcmr/lang/ast.hpp"
#include "ifcmr/lang/channel.hpp"

namespace ifcmr {

class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Privileges of one execution, given per security level with optional
// per-channel overrides.
struct PrivTemplate {
  std::optional<PrivCell> high;
  std::optional<PrivCell> low;
  std::map<std::string, PrivCell> overrides;

  PrivCell cell_for(const Channel& ch) const;  // throws PolicyError if uncovered
  bool operator==(const PrivTemplate&) const = default;
};

struct PolicyConfig {
  std::string name;
  std::string description;
  std::vector<PrivTemplate> map_columns;     // T_M, one per initial execution
  std::vector<PrivTemplate> reduce_columns;  // T_R, one per initial execution
  std::map<std::string, PrivTemplate> clone_templates;
  StmtPtr map_handler;     // template over i and c
  StmtPtr reduce_handler;  // template over i and c

  std::size_t initial_executions() const { return map_columns.size(); }
};

// The shipped policies. SubDI runs the RI MAP handler over the NI tables.
const PolicyConfig& ni_policy();
const PolicyConfig& ri_policy();
const PolicyConfig& di_policy();
const PolicyConfig& subdi_policy();

std::optional<PolicyConfig> shipped_policy(std::string_view name);
std::vector<std::string> shipped_policy_names();

// An alternative REDUCE table in which execution 1 may also write high
// channels. Not used by any shipped policy.
std::vector<PrivTemplate> variant_reduce_columns();

// One cell per channel of direction `d`, in declaration order.
std::vector<PrivCell> template_column(const PrivTemplate& t, const ChannelEnv& env, Direction d);

// T_M over the input channels and T_R over the output channels.
PrivTable initial_map_table(const PolicyConfig& p, const ChannelEnv& env);
PrivTable initial_reduce_table(const PolicyConfig& p, const ChannelEnv& env);

enum class HandlerKind { Map, Reduce };

// Problems with a handler: instructions outside the vocabulary of its
// component, or template names without a definition. Empty when clean.
std::vector<std::string> lint_handler(const Stmt& handler, HandlerKind kind, const PolicyConfig* policy = nullptr);

// Handler problems plus table shape problems; with an environment, also
// checks that every declared channel is covered.
std::vector<std::string> lint_policy(const PolicyConfig& p, const ChannelEnv* env = nullptr);

}  // namespace ifcmr
