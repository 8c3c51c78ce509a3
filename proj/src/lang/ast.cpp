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

#include "ifcmr/lang/ast.hpp"

#include <functional>

namespace ifcmr {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

std::size_t hash_ref(const ChannelRef& c) { return mix(hash_str(c.name), c.is_param ? 1 : 0); }

template <typename... Ts>
std::size_t combine(std::size_t tag, Ts... parts) {
  std::size_t h = tag * 0x100000001B3ULL;
  ((h = mix(h, parts)), ...);
  return h;
}

std::size_t ptr_hash(const ExprPtr& e) { return e ? e->hash : 0; }

ExprPtr make_expr(Expr::Node node) {
  auto e = std::make_shared<Expr>();
  e->node = std::move(node);
  const std::size_t tag = e->node.index() + 1;
  e->hash = std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return combine(tag, n.value.hash());
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          return combine(tag, hash_str(n.name));
        } else if constexpr (std::is_same_v<T, Expr::Not>) {
          return combine(tag, ptr_hash(n.operand));
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          return combine(tag, static_cast<std::size_t>(n.op), ptr_hash(n.lhs), ptr_hash(n.rhs));
        } else if constexpr (std::is_same_v<T, Expr::ExecIndex>) {
          return combine(tag);
        } else if constexpr (std::is_same_v<T, Expr::DefaultOf>) {
          return combine(tag, hash_ref(n.channel));
        } else if constexpr (std::is_same_v<T, Expr::HasPrivilege>) {
          return combine(tag, static_cast<std::size_t>(n.table), static_cast<std::size_t>(n.privilege),
                         ptr_hash(n.exec), hash_ref(n.channel));
        } else {
          return combine(tag, hash_ref(n.channel), static_cast<std::size_t>(n.level));
        }
      },
      e->node);
  return e;
}

StmtPtr make_stmt(Stmt::Node node) {
  auto s = std::make_shared<Stmt>();
  s->node = std::move(node);
  const std::size_t tag = s->node.index() + 101;
  auto h = [](const StmtPtr& p) { return p ? p->hash : 0; };
  s->hash = std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Skip>) {
          return combine(tag);
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return combine(tag, hash_str(n.var), ptr_hash(n.value));
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return combine(tag, h(n.first), h(n.second));
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          return combine(tag, ptr_hash(n.cond), h(n.then_branch), h(n.else_branch));
        } else if constexpr (std::is_same_v<T, Stmt::While>) {
          return combine(tag, ptr_hash(n.cond), h(n.body));
        } else if constexpr (std::is_same_v<T, Stmt::Input>) {
          return combine(tag, hash_str(n.var), hash_ref(n.channel));
        } else if constexpr (std::is_same_v<T, Stmt::Output>) {
          return combine(tag, ptr_hash(n.value), hash_ref(n.channel));
        } else if constexpr (std::is_same_v<T, Stmt::Map>) {
          return combine(tag, ptr_hash(n.value), hash_ref(n.channel), n.target.hash());
        } else if constexpr (std::is_same_v<T, Stmt::Wake>) {
          return combine(tag, n.target.hash());
        } else if constexpr (std::is_same_v<T, Stmt::Clone>) {
          return combine(tag, n.target.hash(), hash_str(n.map_template), hash_str(n.reduce_template));
        } else if constexpr (std::is_same_v<T, Stmt::Retrieve>) {
          return combine(tag, hash_str(n.var), ptr_hash(n.exec), hash_ref(n.channel));
        } else {
          return combine(tag, hash_ref(n.channel), n.target.hash());
        }
      },
      s->node);
  return s;
}

}  // namespace

std::size_t Predicate::hash() const {
  return combine(static_cast<std::size_t>(kind) + 7, negated ? 1 : 0, hash_ref(channel), ptr_hash(exec));
}

bool operator==(const Predicate& a, const Predicate& b) {
  return a.kind == b.kind && a.negated == b.negated && a.channel == b.channel && equal(a.exec, b.exec);
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Expr::Not>) {
          return equal(x.operand, y.operand);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, Expr::ExecIndex>) {
          return true;
        } else if constexpr (std::is_same_v<T, Expr::DefaultOf>) {
          return x.channel == y.channel;
        } else if constexpr (std::is_same_v<T, Expr::HasPrivilege>) {
          return x.table == y.table && x.privilege == y.privilege && equal(x.exec, y.exec) && x.channel == y.channel;
        } else {
          return x.channel == y.channel && x.level == y.level;
        }
      },
      a.node);
}

bool equal(const Stmt& a, const Stmt& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Stmt::Skip>) {
          return true;
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return x.var == y.var && equal(x.value, y.value);
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return equal(x.first, y.first) && equal(x.second, y.second);
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          return equal(x.cond, y.cond) && equal(x.then_branch, y.then_branch) && equal(x.else_branch, y.else_branch);
        } else if constexpr (std::is_same_v<T, Stmt::While>) {
          return equal(x.cond, y.cond) && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Stmt::Input>) {
          return x.var == y.var && x.channel == y.channel;
        } else if constexpr (std::is_same_v<T, Stmt::Output>) {
          return equal(x.value, y.value) && x.channel == y.channel;
        } else if constexpr (std::is_same_v<T, Stmt::Map>) {
          return equal(x.value, y.value) && x.channel == y.channel && x.target == y.target;
        } else if constexpr (std::is_same_v<T, Stmt::Wake>) {
          return x.target == y.target;
        } else if constexpr (std::is_same_v<T, Stmt::Clone>) {
          return x.target == y.target && x.map_template == y.map_template && x.reduce_template == y.reduce_template;
        } else if constexpr (std::is_same_v<T, Stmt::Retrieve>) {
          return x.var == y.var && equal(x.exec, y.exec) && x.channel == y.channel;
        } else {
          return x.channel == y.channel && x.target == y.target;
        }
      },
      a.node);
}

namespace ast {

ExprPtr lit(Value v) { return make_expr(Expr::Literal{v}); }
ExprPtr boolean(bool b) { return lit(Value::boolean(b)); }
ExprPtr integer(std::uint64_t n) { return lit(Value::integer(n)); }
ExprPtr var(std::string name) { return make_expr(Expr::Variable{std::move(name)}); }
ExprPtr not_(ExprPtr e) { return make_expr(Expr::Not{std::move(e)}); }
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return make_expr(Expr::Binary{op, std::move(lhs), std::move(rhs)});
}
ExprPtr exec_index() { return make_expr(Expr::ExecIndex{}); }
ExprPtr default_of(ChannelRef ch) { return make_expr(Expr::DefaultOf{std::move(ch)}); }
ExprPtr has_privilege(PrivilegeTable table, Privilege p, ExprPtr exec, ChannelRef ch) {
  return make_expr(Expr::HasPrivilege{table, p, std::move(exec), std::move(ch)});
}
ExprPtr level_is(ChannelRef ch, Level level) { return make_expr(Expr::LevelIs{std::move(ch), level}); }

StmtPtr skip() {
  static const StmtPtr node = make_stmt(Stmt::Skip{});
  return node;
}
StmtPtr assign(std::string var, ExprPtr value) { return make_stmt(Stmt::Assign{std::move(var), std::move(value)}); }
StmtPtr seq(StmtPtr first, StmtPtr second) { return make_stmt(Stmt::Seq{std::move(first), std::move(second)}); }
StmtPtr if_(ExprPtr cond, StmtPtr then_branch, StmtPtr else_branch) {
  return make_stmt(Stmt::If{std::move(cond), std::move(then_branch), std::move(else_branch)});
}
StmtPtr while_(ExprPtr cond, StmtPtr body) { return make_stmt(Stmt::While{std::move(cond), std::move(body)}); }
StmtPtr input(std::string var, ChannelRef ch) { return make_stmt(Stmt::Input{std::move(var), std::move(ch)}); }
StmtPtr output(ExprPtr value, ChannelRef ch) { return make_stmt(Stmt::Output{std::move(value), std::move(ch)}); }
StmtPtr map(ExprPtr value, ChannelRef ch, Predicate target) {
  return make_stmt(Stmt::Map{std::move(value), std::move(ch), std::move(target)});
}
StmtPtr wake(Predicate target) { return make_stmt(Stmt::Wake{std::move(target)}); }
StmtPtr clone(Predicate target, std::string map_template, std::string reduce_template) {
  return make_stmt(Stmt::Clone{std::move(target), std::move(map_template), std::move(reduce_template)});
}
StmtPtr retrieve(std::string var, ExprPtr exec, ChannelRef ch) {
  return make_stmt(Stmt::Retrieve{std::move(var), std::move(exec), std::move(ch)});
}
StmtPtr clean(ChannelRef ch, Predicate target) { return make_stmt(Stmt::Clean{std::move(ch), std::move(target)}); }

Predicate can_tell(ChannelRef ch, bool negated) { return {Predicate::Kind::CanTell, negated, std::move(ch), nullptr}; }
Predicate is_ready(ChannelRef ch, bool negated) { return {Predicate::Kind::IsReady, negated, std::move(ch), nullptr}; }
Predicate identical(ExprPtr exec, bool negated) { return {Predicate::Kind::Identical, negated, {}, std::move(exec)}; }
Predicate waiting_input(bool negated) { return {Predicate::Kind::WaitingInput, negated, {}, nullptr}; }
Predicate waiting_output(bool negated) { return {Predicate::Kind::WaitingOutput, negated, {}, nullptr}; }

StmtPtr block(std::initializer_list<StmtPtr> stmts) {
  if (stmts.size() == 0) return skip();
  auto it = std::rbegin(stmts);
  StmtPtr acc = *it++;
  for (; it != std::rend(stmts); ++it) acc = seq(*it, acc);
  return acc;
}

}  // namespace ast

const Stmt& head_instruction(const Stmt& s) {
  const Stmt* cur = &s;
  while (const auto* q = cur->as<Stmt::Seq>()) cur = q->first.get();
  return *cur;
}

namespace {

ChannelRef subst(const ChannelRef& ch, const std::string& channel) {
  return ch.is_param ? ChannelRef::named(channel) : ch;
}

Predicate subst(const Predicate& p, std::size_t exec, const std::string& channel) {
  Predicate out = p;
  if (!out.channel.name.empty() || out.channel.is_param) out.channel = subst(p.channel, channel);
  if (p.exec) out.exec = instantiate(p.exec, exec, channel);
  return out;
}

}  // namespace

ExprPtr instantiate(const ExprPtr& e, std::size_t exec, const std::string& channel) {
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal> || std::is_same_v<T, Expr::Variable>) {
          return e;
        } else if constexpr (std::is_same_v<T, Expr::Not>) {
          return ast::not_(instantiate(n.operand, exec, channel));
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          return ast::binary(n.op, instantiate(n.lhs, exec, channel), instantiate(n.rhs, exec, channel));
        } else if constexpr (std::is_same_v<T, Expr::ExecIndex>) {
          return ast::integer(exec);
        } else if constexpr (std::is_same_v<T, Expr::DefaultOf>) {
          return ast::default_of(subst(n.channel, channel));
        } else if constexpr (std::is_same_v<T, Expr::HasPrivilege>) {
          return ast::has_privilege(n.table, n.privilege, instantiate(n.exec, exec, channel), subst(n.channel, channel));
        } else {
          return ast::level_is(subst(n.channel, channel), n.level);
        }
      },
      e->node);
}

StmtPtr instantiate(const StmtPtr& s, std::size_t exec, const std::string& channel) {
  auto sub = [&](const StmtPtr& p) { return instantiate(p, exec, channel); };
  auto subx = [&](const ExprPtr& p) { return instantiate(p, exec, channel); };
  return std::visit(
      [&](const auto& n) -> StmtPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Skip>) {
          return s;
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return ast::assign(n.var, subx(n.value));
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return ast::seq(sub(n.first), sub(n.second));
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          return ast::if_(subx(n.cond), sub(n.then_branch), sub(n.else_branch));
        } else if constexpr (std::is_same_v<T, Stmt::While>) {
          return ast::while_(subx(n.cond), sub(n.body));
        } else if constexpr (std::is_same_v<T, Stmt::Input>) {
          return ast::input(n.var, subst(n.channel, channel));
        } else if constexpr (std::is_same_v<T, Stmt::Output>) {
          return ast::output(subx(n.value), subst(n.channel, channel));
        } else if constexpr (std::is_same_v<T, Stmt::Map>) {
          return ast::map(subx(n.value), subst(n.channel, channel), subst(n.target, exec, channel));
        } else if constexpr (std::is_same_v<T, Stmt::Wake>) {
          return ast::wake(subst(n.target, exec, channel));
        } else if constexpr (std::is_same_v<T, Stmt::Clone>) {
          return ast::clone(subst(n.target, exec, channel), n.map_template, n.reduce_template);
        } else if constexpr (std::is_same_v<T, Stmt::Retrieve>) {
          return ast::retrieve(n.var, subx(n.exec), subst(n.channel, channel));
        } else {
          return ast::clean(subst(n.channel, channel), subst(n.target, exec, channel));
        }
      },
      s->node);
}

namespace {

bool expr_uses_handler_syntax(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal> || std::is_same_v<T, Expr::Variable>) {
          return false;
        } else if constexpr (std::is_same_v<T, Expr::Not>) {
          return expr_uses_handler_syntax(*n.operand);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          return expr_uses_handler_syntax(*n.lhs) || expr_uses_handler_syntax(*n.rhs);
        } else {
          return true;
        }
      },
      e.node);
}

}  // namespace

bool uses_handler_syntax(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Skip>) {
          return false;
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return expr_uses_handler_syntax(*n.value);
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return uses_handler_syntax(*n.first) || uses_handler_syntax(*n.second);
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          return expr_uses_handler_syntax(*n.cond) || uses_handler_syntax(*n.then_branch) ||
                 uses_handler_syntax(*n.else_branch);
        } else if constexpr (std::is_same_v<T, Stmt::While>) {
          return expr_uses_handler_syntax(*n.cond) || uses_handler_syntax(*n.body);
        } else if constexpr (std::is_same_v<T, Stmt::Input>) {
          return n.channel.is_param;
        } else if constexpr (std::is_same_v<T, Stmt::Output>) {
          return n.channel.is_param || expr_uses_handler_syntax(*n.value);
        } else {
          return true;
        }
      },
      s.node);
}

}  // namespace ifcmr
