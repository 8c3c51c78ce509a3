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

// Abstract syntax shared by controlled programs and MAP/REDUCE handlers.
// Nodes are immutable and shared; every node caches a structural hash so
// that configurations holding programs can be hashed cheaply.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "ifcmr/lang/channel.hpp"
#include "ifcmr/lang/value.hpp"

namespace ifcmr {

enum class BinaryOp : std::uint8_t { Add, Monus, Eq, Lt, And, Or };

enum class PrivilegeTable : std::uint8_t { Map, Reduce };  // T_M, T_R
enum class Privilege : std::uint8_t { Ask = 1, Tell = 2 };

// A channel named in a statement. Inside handler templates the parameter `c`
// stands for the channel the handler was activated for.
struct ChannelRef {
  std::string name;
  bool is_param = false;

  static ChannelRef named(std::string n) { return {std::move(n), false}; }
  static ChannelRef param() { return {"c", true}; }

  bool operator==(const ChannelRef&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Literal {
    Value value;
  };
  struct Variable {
    std::string name;
  };
  struct Not {
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  // Handler-only forms.
  struct ExecIndex {};  // `i`
  struct DefaultOf {    // `val_def`, or default(ch)
    ChannelRef channel;
  };
  struct HasPrivilege {  // a in T_M[e][c]
    PrivilegeTable table;
    Privilege privilege;
    ExprPtr exec;
    ChannelRef channel;
  };
  struct LevelIs {  // LVL[c] == H
    ChannelRef channel;
    Level level;
  };

  using Node = std::variant<Literal, Variable, Not, Binary, ExecIndex, DefaultOf, HasPrivilege, LevelIs>;

  Node node;
  std::size_t hash = 0;
};

// Selects local executions by index; used by map, wake, clone and clean.
struct Predicate {
  enum class Kind : std::uint8_t { CanTell, IsReady, Identical, WaitingInput, WaitingOutput };

  Kind kind = Kind::Identical;
  bool negated = false;
  ChannelRef channel;  // CanTell, IsReady
  ExprPtr exec;        // Identical

  std::size_t hash() const;
};

bool operator==(const Predicate& a, const Predicate& b);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  struct Skip {};
  struct Assign {
    std::string var;
    ExprPtr value;
  };
  struct Seq {
    StmtPtr first;
    StmtPtr second;
  };
  struct If {
    ExprPtr cond;
    StmtPtr then_branch;
    StmtPtr else_branch;
  };
  struct While {
    ExprPtr cond;
    StmtPtr body;
  };
  struct Input {
    std::string var;
    ChannelRef channel;
  };
  struct Output {
    ExprPtr value;
    ChannelRef channel;
  };
  // Handler-only instructions.
  struct Map {
    ExprPtr value;
    ChannelRef channel;
    Predicate target;
  };
  struct Wake {
    Predicate target;
  };
  struct Clone {
    Predicate target;
    std::string map_template;
    std::string reduce_template;
  };
  struct Retrieve {
    std::string var;
    ExprPtr exec;
    ChannelRef channel;
  };
  struct Clean {
    ChannelRef channel;
    Predicate target;
  };

  using Node = std::variant<Skip, Assign, Seq, If, While, Input, Output, Map, Wake, Clone, Retrieve, Clean>;

  Node node;
  std::size_t hash = 0;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  bool is_skip() const { return std::holds_alternative<Skip>(node); }
};

using Program = StmtPtr;

bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const StmtPtr& a, const StmtPtr& b);

namespace ast {

ExprPtr lit(Value v);
ExprPtr boolean(bool b);
ExprPtr integer(std::uint64_t n);
ExprPtr var(std::string name);
ExprPtr not_(ExprPtr e);
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr exec_index();
ExprPtr default_of(ChannelRef ch);
ExprPtr has_privilege(PrivilegeTable table, Privilege p, ExprPtr exec, ChannelRef ch);
ExprPtr level_is(ChannelRef ch, Level level);

StmtPtr skip();
StmtPtr assign(std::string var, ExprPtr value);
StmtPtr seq(StmtPtr first, StmtPtr second);
StmtPtr if_(ExprPtr cond, StmtPtr then_branch, StmtPtr else_branch);
StmtPtr while_(ExprPtr cond, StmtPtr body);
StmtPtr input(std::string var, ChannelRef ch);
StmtPtr output(ExprPtr value, ChannelRef ch);
StmtPtr map(ExprPtr value, ChannelRef ch, Predicate target);
StmtPtr wake(Predicate target);
StmtPtr clone(Predicate target, std::string map_template, std::string reduce_template);
StmtPtr retrieve(std::string var, ExprPtr exec, ChannelRef ch);
StmtPtr clean(ChannelRef ch, Predicate target);

Predicate can_tell(ChannelRef ch, bool negated = false);
Predicate is_ready(ChannelRef ch, bool negated = false);
Predicate identical(ExprPtr exec, bool negated = false);
Predicate waiting_input(bool negated = false);
Predicate waiting_output(bool negated = false);

// Right-nested sequence of the given statements; skip when empty.
StmtPtr block(std::initializer_list<StmtPtr> stmts);

}  // namespace ast

// Leftmost instruction of a sequence, i.e. the next one to run when the
// program is not of the form skip; P.
const Stmt& head_instruction(const Stmt& s);

// Replaces the handler parameters: `i` by the execution index, `c` by the
// channel name.
StmtPtr instantiate(const StmtPtr& handler, std::size_t exec, const std::string& channel);
ExprPtr instantiate(const ExprPtr& e, std::size_t exec, const std::string& channel);

// True when the tree contains any handler-only expression or instruction.
bool uses_handler_syntax(const Stmt& s);

}  // namespace ifcmr
