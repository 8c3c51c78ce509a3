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

#include "ifcmr/lang/interpreter.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "ifcmr/lang/printer.hpp"

namespace ifcmr {

Value Memory::get(std::string_view name) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), name,
                             [](const auto& b, std::string_view n) { return b.first < n; });
  if (it == bindings_.end() || it->first != name) return Value::initial();
  return it->second;
}

void Memory::set(const std::string& name, Value v) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), name,
                             [](const auto& b, const std::string& n) { return b.first < n; });
  const bool present = it != bindings_.end() && it->first == name;
  if (v.is_initial()) {
    if (present) bindings_.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    bindings_.insert(it, {name, v});
  }
}

std::size_t Memory::hash() const {
  std::size_t h = 0xCBF29CE484222325ULL;
  for (const auto& [k, v] : bindings_) {
    h ^= std::hash<std::string>{}(k) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= v.hash() + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string to_string(const Memory& m) {
  std::string s = "{";
  for (const auto& [k, v] : m.bindings()) {
    if (s.size() > 1) s += ", ";
    s += k + "=" + to_string(v);
  }
  return s + "}";
}

namespace {

std::uint64_t as_int(Value v, const Expr& where) {
  if (v.is_bool()) throw EvalError("integer expected in '" + to_source(where) + "', got a boolean");
  return v.int_value();
}

bool as_bool(Value v, const Expr& where) {
  if (v.is_int()) throw EvalError("boolean expected in '" + to_source(where) + "', got an integer");
  return v.bool_value();
}

const std::string& named(const ChannelRef& ch) {
  if (ch.is_param) throw EvalError("handler parameter 'c' used outside an instantiated handler");
  return ch.name;
}

const HandlerScope& need_scope(const HandlerScope* scope, const Expr& e) {
  if (scope == nullptr) throw EvalError("'" + to_source(e) + "' is only meaningful inside a handler");
  return *scope;
}

}  // namespace

Value eval_expr(const Memory& m, const Expr& e, const HandlerScope* scope) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          return m.get(n.name);
        } else if constexpr (std::is_same_v<T, Expr::Not>) {
          return Value::boolean(!as_bool(eval_expr(m, *n.operand, scope), e));
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          const Value a = eval_expr(m, *n.lhs, scope);
          const Value b = eval_expr(m, *n.rhs, scope);
          switch (n.op) {
            case BinaryOp::Add: {
              const std::uint64_t x = as_int(a, e);
              const std::uint64_t y = as_int(b, e);
              const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
              return Value::integer(x > cap - y ? cap : x + y);
            }
            case BinaryOp::Monus: {
              const std::uint64_t x = as_int(a, e);
              const std::uint64_t y = as_int(b, e);
              return Value::integer(x > y ? x - y : 0);
            }
            case BinaryOp::Lt:
              return Value::boolean(as_int(a, e) < as_int(b, e));
            case BinaryOp::Eq:
              if (a.is_initial() && b.is_initial()) return Value::boolean(true);
              if (a.is_bool() || b.is_bool()) return Value::boolean(as_bool(a, e) == as_bool(b, e));
              return Value::boolean(as_int(a, e) == as_int(b, e));
            case BinaryOp::And:
              return Value::boolean(as_bool(a, e) && as_bool(b, e));
            case BinaryOp::Or:
              return Value::boolean(as_bool(a, e) || as_bool(b, e));
          }
          throw EvalError("unknown operator");
        } else if constexpr (std::is_same_v<T, Expr::ExecIndex>) {
          throw EvalError("handler parameter 'i' used outside an instantiated handler");
        } else if constexpr (std::is_same_v<T, Expr::DefaultOf>) {
          return need_scope(scope, e).env().at(named(n.channel)).default_value;
        } else if constexpr (std::is_same_v<T, Expr::HasPrivilege>) {
          const HandlerScope& s = need_scope(scope, e);
          const std::uint64_t x = as_int(eval_expr(m, *n.exec, scope), e);
          return Value::boolean(s.has_privilege(n.table, n.privilege, x, named(n.channel)));
        } else {
          return Value::boolean(need_scope(scope, e).env().level_of(named(n.channel)) == n.level);
        }
      },
      e.node);
}

bool eval_condition(const Memory& m, const Expr& e, const HandlerScope* scope) {
  return as_bool(eval_expr(m, e, scope), e);
}

namespace {

constexpr std::array<std::string_view, 19> kRuleNames = {
    "ASSG", "IF-T", "IF-F", "WHIL-T", "WHIL-F", "SKIP", "INP",  "OUTP", "LINP1", "LINP2",
    "LOUTP", "INPM", "MAP",  "WAKM",   "CLON",   "RETR", "OUTR", "WAKR", "CLN"};

}  // namespace

std::string_view to_string(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> parse_rule(std::string_view name) {
  for (std::size_t k = 0; k < kRuleNames.size(); ++k) {
    if (kRuleNames[k] == name) return static_cast<Rule>(k);
  }
  return std::nullopt;
}

bool redex_is_silent(const Stmt& s) {
  const Stmt* cur = &s;
  while (const auto* q = cur->as<Stmt::Seq>()) {
    if (q->first->is_skip()) return true;
    cur = q->first.get();
  }
  return std::holds_alternative<Stmt::Assign>(cur->node) || std::holds_alternative<Stmt::If>(cur->node) ||
         std::holds_alternative<Stmt::While>(cur->node);
}

std::optional<ProgStep> step_program(const ProgConfig& cfg) {
  ProgConfig next{nullptr, cfg.mem, {}, {}};
  bool consumed = false;
  std::optional<Value> sent;
  std::string sent_on;
  auto effect = [&](const Stmt& st, Memory& mem) -> std::optional<Rule> {
    if (const auto* in = st.as<Stmt::Input>()) {
      if (cfg.in.empty() || cfg.in.front().channel != in->channel.name) return std::nullopt;
      mem.set(in->var, cfg.in.front().value);
      consumed = true;
      return Rule::Inp;
    }
    if (const auto* out = st.as<Stmt::Output>()) {
      sent = eval_expr(mem, *out->value).settled();
      sent_on = out->channel.name;
      return Rule::Outp;
    }
    throw EvalError("'" + to_source_inline(st) + "' is not a program instruction");
  };
  auto r = reduce(cfg.prg, next.mem, effect);
  if (!r) return std::nullopt;
  next.prg = std::move(r->next);
  next.in.assign(cfg.in.begin() + (consumed ? 1 : 0), cfg.in.end());
  next.out = cfg.out;
  if (sent) next.out.push_back({sent_on, *sent});
  return ProgStep{std::move(next), r->rule};
}

std::string_view to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Terminated:
      return "Terminated";
    case Outcome::Kind::FinishedWithResidual:
      return "FinishedWithResidual";
    case Outcome::Kind::Stuck:
      return "Stuck";
    case Outcome::Kind::BudgetExceeded:
      return "BudgetExceeded";
  }
  return "?";
}

Outcome run_program(const Program& p, const IoQueue& input, std::size_t budget) {
  ProgConfig cfg{p, {}, input, {}};
  Outcome result;
  auto finish = [&](Outcome::Kind k) {
    result.kind = k;
    result.output = std::move(cfg.out);
    result.residual = std::move(cfg.in);
    return result;
  };
  while (result.steps < budget) {
    std::optional<ProgStep> s;
    try {
      s = step_program(cfg);
    } catch (const EvalError& err) {
      result.fault = true;
      result.reason = err.what();
      return finish(Outcome::Kind::Stuck);
    }
    if (!s) {
      if (cfg.prg->is_skip()) {
        return finish(cfg.in.empty() ? Outcome::Kind::Terminated : Outcome::Kind::FinishedWithResidual);
      }
      result.reason = "blocked on '" + to_source_inline(head_instruction(*cfg.prg)) + "'";
      return finish(Outcome::Kind::Stuck);
    }
    cfg = std::move(s->next);
    ++result.steps;
  }
  if (cfg.prg->is_skip()) {
    return finish(cfg.in.empty() ? Outcome::Kind::Terminated : Outcome::Kind::FinishedWithResidual);
  }
  return finish(Outcome::Kind::BudgetExceeded);
}

}  // namespace ifcmr
