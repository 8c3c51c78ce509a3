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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifcmr/em/tables.hpp"
#include "ifcmr/lang/ast.hpp"
#include "ifcmr/lang/interpreter.hpp"
#include "ifcmr/lang/queue.hpp"

namespace ifcmr {

enum class ExecState : std::uint8_t { Executing, Sleeping };

std::string_view to_string(ExecState s);  // "E" / "S"

// One copy of the controlled program.
struct LocalExec {
  ExecState state = ExecState::Executing;
  std::optional<std::string> signal;  // channel of the pending request
  StmtPtr prg;
  Memory mem;
  IoQueue in;
  IoQueue out;
};

bool operator==(const LocalExec& a, const LocalExec& b);

// MAP or REDUCE. Idle when its program is skip; an idle component carries
// no handler state.
struct Component {
  StmtPtr prg = ast::skip();
  Memory mem;
  std::optional<std::size_t> requester;
  std::string channel;

  bool idle() const { return prg->is_skip(); }
};

bool operator==(const Component& a, const Component& b);

struct EmConfig {
  PrivTable t_m;
  PrivTable t_r;
  Component map;
  Component red;
  IoQueue in;   // global input
  IoQueue out;  // global output
  std::vector<LocalExec> ex;

  // Index of the last local execution.
  std::size_t top() const { return ex.size() - 1; }
  std::size_t hash() const;
};

bool operator==(const EmConfig& a, const EmConfig& b);

struct EmConfigHash {
  std::size_t operator()(const EmConfig& c) const { return c.hash(); }
};

struct TransitionLabel {
  enum class Kind : std::uint8_t {
    Local,       // a step of local execution `exec`
    Mact,        // MAP activated for `exec` on `channel`
    Ract,        // REDUCE activated for `exec` on `channel`
    MapStep,     // a step of the active MAP handler
    ReduceStep,  // a step of the active REDUCE handler
  };

  Kind kind = Kind::Local;
  std::size_t exec = 0;
  std::string channel;
  std::optional<Rule> rule;

  bool operator==(const TransitionLabel&) const = default;
};

// L0:ASSG, MACT1:cH1, RACT0:cL3, MAP:INPM, RED:OUTR
std::string to_string(const TransitionLabel& l);
std::optional<TransitionLabel> parse_label(std::string_view text);

struct Event {
  enum class Kind : std::uint8_t {
    GlobalRead,   // exec: requester the handler runs for
    GlobalWrite,  // exec: requester the handler runs for
    Delivered,    // value put in exec's local input
    Woken,
    Slept,  // exec raised a request on channel
    Cloned,  // exec: new index, parent: copied execution
    Cleaned,
    LocalInput,
    LocalOutput,
    Activated,  // parent: 0 for MAP, 1 for REDUCE
  };

  Kind kind;
  std::size_t exec = 0;
  std::string channel;
  Value value;
  std::size_t parent = 0;
};

std::string_view to_string(Event::Kind k);

struct Transition {
  TransitionLabel label;
  EmConfig next;
  std::vector<Event> events;
};

}  // namespace ifcmr
