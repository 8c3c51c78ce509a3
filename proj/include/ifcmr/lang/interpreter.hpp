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
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifcmr/lang/ast.hpp"
#include "ifcmr/lang/queue.hpp"

namespace ifcmr {

// Dynamic kind errors and misuse of handler syntax. A run that raises one
// is stuck.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variable store. Unbound variables hold the initial value; binding a
// variable to the initial value unbinds it, so equal stores compare equal.
class Memory {
 public:
  Value get(std::string_view name) const;
  void set(const std::string& name, Value v);

  const std::vector<std::pair<std::string, Value>>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t hash() const;

  bool operator==(const Memory&) const = default;

 private:
  std::vector<std::pair<std::string, Value>> bindings_;  // sorted by name
};

std::string to_string(const Memory& m);

// What handler-only expressions are evaluated against.
class HandlerScope {
 public:
  virtual ~HandlerScope() = default;
  virtual const ChannelEnv& env() const = 0;
  virtual bool has_privilege(PrivilegeTable table, Privilege p, std::size_t exec, std::string_view channel) const = 0;
};

Value eval_expr(const Memory& m, const Expr& e, const HandlerScope* scope = nullptr);

// Guard evaluation: the initial value counts as F, integers are an error.
bool eval_condition(const Memory& m, const Expr& e, const HandlerScope* scope = nullptr);

enum class Rule : std::uint8_t {
  Assg,
  IfT,
  IfF,
  WhileT,
  WhileF,
  Skip,
  Inp,
  Outp,
  // local executions
  Linp1,
  Linp2,
  Loutp,
  // MAP
  Inpm,
  Map,
  Wakm,
  Clon,
  // REDUCE
  Retr,
  Outr,
  Wakr,
  Cln,
};

std::string_view to_string(Rule r);
std::optional<Rule> parse_rule(std::string_view name);

struct Reduction {
  StmtPtr next;
  Rule rule;
};

// One small step of `s`. Silent instructions are reduced here; any other
// instruction at the redex is passed to `effect(stmt, mem)`, which returns
// the rule it applied, or nothing when the instruction is blocked. Blocked
// and terminated programs yield nothing. `mem` is only written on success.
template <typename Effect>
std::optional<Reduction> reduce(const StmtPtr& s, Memory& mem, Effect&& effect, const HandlerScope* scope = nullptr) {
  const Stmt& st = *s;
  if (const auto* q = st.as<Stmt::Seq>()) {
    if (q->first->is_skip()) return Reduction{q->second, Rule::Skip};
    auto inner = reduce(q->first, mem, effect, scope);
    if (!inner) return std::nullopt;
    return Reduction{ast::seq(std::move(inner->next), q->second), inner->rule};
  }
  if (st.is_skip()) return std::nullopt;
  if (const auto* a = st.as<Stmt::Assign>()) {
    mem.set(a->var, eval_expr(mem, *a->value, scope));
    return Reduction{ast::skip(), Rule::Assg};
  }
  if (const auto* f = st.as<Stmt::If>()) {
    if (eval_condition(mem, *f->cond, scope)) return Reduction{f->then_branch, Rule::IfT};
    return Reduction{f->else_branch, Rule::IfF};
  }
  if (const auto* w = st.as<Stmt::While>()) {
    if (eval_condition(mem, *w->cond, scope)) return Reduction{ast::seq(w->body, s), Rule::WhileT};
    return Reduction{ast::skip(), Rule::WhileF};
  }
  std::optional<Rule> rule = effect(st, mem);
  if (!rule) return std::nullopt;
  return Reduction{ast::skip(), *rule};
}

// Whether the next step of `s` is reduced by `reduce` without calling the
// effect callback.
bool redex_is_silent(const Stmt& s);

struct ProgConfig {
  StmtPtr prg;
  Memory mem;
  IoQueue in;
  IoQueue out;
};

struct ProgStep {
  ProgConfig next;
  Rule rule;
};

// Stand-alone semantics: `input x from c` needs the head of the input queue
// to be on c. Throws EvalError on kind errors.
std::optional<ProgStep> step_program(const ProgConfig& cfg);

struct Outcome {
  enum class Kind : std::uint8_t {
    Terminated,            // skip with all input consumed
    FinishedWithResidual,  // skip with input left over
    Stuck,                 // blocked on input or a kind error
    BudgetExceeded,
  };

  Kind kind = Kind::Stuck;
  IoQueue output;
  IoQueue residual;
  std::size_t steps = 0;
  bool fault = false;  // Stuck because of a kind error
  std::string reason;

  bool terminated() const { return kind == Kind::Terminated; }
};

std::string_view to_string(Outcome::Kind k);

Outcome run_program(const Program& p, const IoQueue& input, std::size_t budget);

}  // namespace ifcmr
