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

#include "ifcmr/em/machine.hpp"

#include "ifcmr/lang/parser.hpp"
#include "ifcmr/lang/printer.hpp"

namespace ifcmr {
namespace {

class ConfigScope final : public HandlerScope {
 public:
  ConfigScope(const ChannelEnv& env, const EmConfig& cfg) : env_(env), cfg_(cfg) {}

  const ChannelEnv& env() const override { return env_; }

  bool has_privilege(PrivilegeTable table, Privilege p, std::size_t exec, std::string_view channel) const override {
    return (table == PrivilegeTable::Map ? cfg_.t_m : cfg_.t_r).has(exec, channel, p);
  }

 private:
  const ChannelEnv& env_;
  const EmConfig& cfg_;
};

// The instruction `reduce` would act on next, or the sequence whose first
// part is skip.
const Stmt& redex_of(const Stmt& s) {
  const Stmt* cur = &s;
  while (const auto* q = cur->as<Stmt::Seq>()) {
    if (q->first->is_skip()) break;
    cur = q->first.get();
  }
  return *cur;
}

void settle_if_idle(Component& c) {
  if (c.idle()) c = Component{};
}

std::string joined(const std::vector<std::string>& lines) {
  std::string s;
  for (const std::string& l : lines) s += (s.empty() ? "" : "; ") + l;
  return s;
}

}  // namespace

Machine::Machine(ChannelEnv env, PolicyConfig policy, EmOptions options)
    : env_(std::move(env)), policy_(std::move(policy)), options_(options) {
  if (auto problems = lint_policy(policy_, &env_); !problems.empty()) {
    throw PolicyError("policy '" + policy_.name + "': " + joined(problems));
  }
  for (const auto& [name, t] : policy_.clone_templates) {
    clone_in_columns_[name] = template_column(t, env_, Direction::In);
    clone_out_columns_[name] = template_column(t, env_, Direction::Out);
  }
}

EmConfig Machine::initial(const Program& p, const IoQueue& input) const {
  validate_channels(*p, env_);
  if (uses_handler_syntax(*p)) throw ChannelError("program uses handler-only syntax");
  for (const IoItem& item : input) {
    const Channel& ch = env_.at(item.channel);
    if (ch.direction != Direction::In) throw ChannelError("input item on output channel '" + item.channel + "'");
    if (item.value.kind() != ch.default_value.kind()) {
      throw ChannelError("input item " + to_string(item) + " does not match the kind of channel '" + ch.name + "'");
    }
  }
  EmConfig cfg;
  cfg.t_m = initial_map_table(policy_, env_);
  cfg.t_r = initial_reduce_table(policy_, env_);
  cfg.in = input;
  cfg.ex.assign(policy_.initial_executions(), LocalExec{ExecState::Executing, std::nullopt, p, {}, {}, {}});
  return cfg;
}

std::optional<Transition> Machine::local_step(const EmConfig& cfg, std::size_t i) const {
  const LocalExec& e = cfg.ex[i];
  if (e.state != ExecState::Executing || e.prg->is_skip()) return std::nullopt;

  Transition t{{TransitionLabel::Kind::Local, i, {}, std::nullopt}, cfg, {}};
  LocalExec& ne = t.next.ex[i];

  if (const auto* in = redex_of(*e.prg).as<Stmt::Input>()) {
    if (!dequeue(e.in, in->channel.name).value) {
      ne.state = ExecState::Sleeping;
      ne.signal = in->channel.name;
      t.label.rule = Rule::Linp2;
      t.events.push_back({Event::Kind::Slept, i, in->channel.name, {}, 0});
      return t;
    }
  }

  Memory mem = e.mem;
  auto effect = [&](const Stmt& st, Memory& m) -> std::optional<Rule> {
    if (const auto* in = st.as<Stmt::Input>()) {
      Dequeued d = dequeue(e.in, in->channel.name);
      m.set(in->var, *d.value);
      ne.in = std::move(d.rest);
      t.events.push_back({Event::Kind::LocalInput, i, in->channel.name, *d.value, 0});
      return Rule::Linp1;
    }
    if (const auto* out = st.as<Stmt::Output>()) {
      const Value v = eval_expr(m, *out->value).settled();
      ne.out.push_back({out->channel.name, v});
      ne.state = ExecState::Sleeping;
      ne.signal = out->channel.name;
      t.events.push_back({Event::Kind::LocalOutput, i, out->channel.name, v, 0});
      t.events.push_back({Event::Kind::Slept, i, out->channel.name, {}, 0});
      return Rule::Loutp;
    }
    throw EvalError("'" + to_source_inline(st) + "' is not a program instruction");
  };
  try {
    auto r = reduce(e.prg, mem, effect);
    if (!r) return std::nullopt;
    ne.prg = std::move(r->next);
    ne.mem = std::move(mem);
    t.label.rule = r->rule;
  } catch (const EvalError&) {
    return std::nullopt;
  }
  return t;
}

std::optional<Transition> Machine::activate(const EmConfig& cfg, std::size_t i, bool reduce) const {
  const LocalExec& e = cfg.ex[i];
  if (reduce ? !is_waiting_output(e, env_) : !is_waiting_input(e, env_)) return std::nullopt;
  const std::string c = *e.signal;
  Transition t{{reduce ? TransitionLabel::Kind::Ract : TransitionLabel::Kind::Mact, i, c, std::nullopt}, cfg, {}};
  t.next.ex[i].signal.reset();
  Component& comp = reduce ? t.next.red : t.next.map;
  comp.prg = instantiate(reduce ? policy_.reduce_handler : policy_.map_handler, i, c);
  comp.mem = Memory{};
  comp.requester = i;
  comp.channel = c;
  settle_if_idle(comp);
  t.events.push_back({Event::Kind::Activated, i, c, {}, reduce ? 1U : 0U});
  return t;
}

std::optional<Transition> Machine::handler_step(const EmConfig& cfg, bool reduce_side) const {
  const Component& comp = reduce_side ? cfg.red : cfg.map;
  if (comp.idle()) return std::nullopt;
  const std::size_t requester = comp.requester.value_or(0);
  Transition t{{reduce_side ? TransitionLabel::Kind::ReduceStep : TransitionLabel::Kind::MapStep, 0, {}, std::nullopt},
               cfg,
               {}};
  EmConfig& next = t.next;
  const ConfigScope scope(env_, cfg);
  const char* where = reduce_side ? "REDUCE" : "MAP";

  auto matching = [&](const Predicate& p, const Memory& m) {
    std::vector<std::size_t> xs;
    for (std::size_t x = 0; x < cfg.ex.size(); ++x) {
      if (eval_predicate(p, x, cfg, m, env_)) xs.push_back(x);
    }
    return xs;
  };
  auto misplaced = [&](const Stmt& st) -> EvalError {
    return EvalError("'" + to_source_inline(st) + "' cannot run in " + where);
  };

  auto effect = [&](const Stmt& st, Memory& m) -> std::optional<Rule> {
    if (const auto* in = st.as<Stmt::Input>()) {
      if (reduce_side) throw misplaced(st);
      const std::string& c = in->channel.name;
      std::optional<Value> v;
      if (options_.read_mode == GlobalReadMode::HeadOnly) {
        if (cfg.in.empty() || cfg.in.front().channel != c) return std::nullopt;
        v = cfg.in.front().value;
        next.in.erase(next.in.begin());
      } else {
        Dequeued d = dequeue(cfg.in, c);
        if (!d.value) return std::nullopt;
        v = d.value;
        next.in = std::move(d.rest);
      }
      m.set(in->var, *v);
      t.events.push_back({Event::Kind::GlobalRead, requester, c, *v, 0});
      return Rule::Inpm;
    }
    if (const auto* mp = st.as<Stmt::Map>()) {
      if (reduce_side) throw misplaced(st);
      const Value v = eval_expr(m, *mp->value, &scope).settled();
      for (std::size_t x : matching(mp->target, m)) {
        next.ex[x].in.push_back({mp->channel.name, v});
        t.events.push_back({Event::Kind::Delivered, x, mp->channel.name, v, 0});
      }
      return Rule::Map;
    }
    if (const auto* w = st.as<Stmt::Wake>()) {
      for (std::size_t x : matching(w->target, m)) {
        LocalExec& e = next.ex[x];
        if (e.state == ExecState::Sleeping) t.events.push_back({Event::Kind::Woken, x, e.signal.value_or(""), {}, 0});
        e.state = ExecState::Executing;
        e.signal.reset();
      }
      return reduce_side ? Rule::Wakr : Rule::Wakm;
    }
    if (const auto* cl = st.as<Stmt::Clone>()) {
      if (reduce_side) throw misplaced(st);
      for (std::size_t x : matching(cl->target, m)) {
        LocalExec copy = cfg.ex[x];
        copy.state = ExecState::Sleeping;
        next.ex.push_back(std::move(copy));
        next.t_m.add_execution(clone_in_columns_.at(cl->map_template));
        next.t_r.add_execution(clone_out_columns_.at(cl->reduce_template));
        t.events.push_back({Event::Kind::Cloned, next.ex.size() - 1, {}, {}, x});
      }
      return Rule::Clon;
    }
    if (const auto* rt = st.as<Stmt::Retrieve>()) {
      if (!reduce_side) throw misplaced(st);
      const Value idx = eval_expr(m, *rt->exec, &scope);
      if (!idx.is_int() || idx.int_value() >= cfg.ex.size()) throw EvalError("retrieve from a missing execution");
      Dequeued d = dequeue(cfg.ex[idx.int_value()].out, rt->channel.name);
      if (!d.value) throw EvalError("retrieve found no item on '" + rt->channel.name + "'");
      m.set(rt->var, *d.value);
      return Rule::Retr;
    }
    if (const auto* out = st.as<Stmt::Output>()) {
      if (!reduce_side) throw misplaced(st);
      const Value v = eval_expr(m, *out->value, &scope).settled();
      next.out.push_back({out->channel.name, v});
      t.events.push_back({Event::Kind::GlobalWrite, requester, out->channel.name, v, 0});
      return Rule::Outr;
    }
    if (const auto* cn = st.as<Stmt::Clean>()) {
      if (!reduce_side) throw misplaced(st);
      for (std::size_t x : matching(cn->target, m)) {
        Dequeued d = dequeue(next.ex[x].out, cn->channel.name);
        if (!d.value) continue;
        next.ex[x].out = std::move(d.rest);
        t.events.push_back({Event::Kind::Cleaned, x, cn->channel.name, *d.value, 0});
      }
      return Rule::Cln;
    }
    throw misplaced(st);
  };

  Memory mem = comp.mem;
  try {
    auto r = reduce(comp.prg, mem, effect, &scope);
    if (!r) return std::nullopt;
    Component& nc = reduce_side ? next.red : next.map;
    nc.prg = std::move(r->next);
    nc.mem = std::move(mem);
    settle_if_idle(nc);
    t.label.rule = r->rule;
  } catch (const EvalError&) {
    return std::nullopt;
  } catch (const ChannelError&) {
    return std::nullopt;
  }
  return t;
}

std::vector<Transition> Machine::successors(const EmConfig& cfg) const {
  std::vector<Transition> out;
  for (std::size_t i = 0; i < cfg.ex.size(); ++i) {
    if (auto t = local_step(cfg, i)) out.push_back(std::move(*t));
  }
  for (bool reduce_side : {false, true}) {
    const Component& comp = reduce_side ? cfg.red : cfg.map;
    if (comp.idle()) {
      for (std::size_t i = 0; i < cfg.ex.size(); ++i) {
        if (auto t = activate(cfg, i, reduce_side)) out.push_back(std::move(*t));
      }
    } else if (auto t = handler_step(cfg, reduce_side)) {
      out.push_back(std::move(*t));
    }
  }
  return out;
}

std::vector<TransitionLabel> Machine::enabled(const EmConfig& cfg) const {
  std::vector<TransitionLabel> labels;
  for (Transition& t : successors(cfg)) labels.push_back(std::move(t.label));
  return labels;
}

std::optional<Transition> Machine::apply(const EmConfig& cfg, const TransitionLabel& label) const {
  using K = TransitionLabel::Kind;
  switch (label.kind) {
    case K::Local:
      return label.exec < cfg.ex.size() ? local_step(cfg, label.exec) : std::nullopt;
    case K::Mact:
    case K::Ract: {
      const bool reduce_side = label.kind == K::Ract;
      if (!(reduce_side ? cfg.red : cfg.map).idle() || label.exec >= cfg.ex.size()) return std::nullopt;
      if (!label.channel.empty() && cfg.ex[label.exec].signal != label.channel) return std::nullopt;
      return activate(cfg, label.exec, reduce_side);
    }
    case K::MapStep:
      return handler_step(cfg, false);
    case K::ReduceStep:
      return handler_step(cfg, true);
  }
  return std::nullopt;
}

std::optional<Transition> Machine::internal_local_step(const EmConfig& cfg) const {
  for (std::size_t i = 0; i < cfg.ex.size(); ++i) {
    const LocalExec& e = cfg.ex[i];
    if (e.state != ExecState::Executing || e.prg->is_skip()) continue;
    bool internal = redex_is_silent(*e.prg);
    if (const auto* in = redex_of(*e.prg).as<Stmt::Input>()) {
      internal = dequeue(e.in, in->channel.name).value.has_value();
    }
    if (!internal) continue;
    if (auto t = local_step(cfg, i)) return t;
  }
  return std::nullopt;
}

std::vector<std::string> Machine::blocked_reasons(const EmConfig& cfg) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cfg.ex.size(); ++i) {
    const LocalExec& e = cfg.ex[i];
    const std::string who = "execution " + std::to_string(i);
    if (e.state == ExecState::Sleeping) {
      out.push_back(who + " is asleep" + (e.signal ? " with a request on " + *e.signal : " with no pending request") +
                    " at '" + to_source_inline(head_instruction(*e.prg)) + "'");
    } else if (!e.prg->is_skip() && !local_step(cfg, i)) {
      std::string why = "cannot step";
      try {
        Memory m = e.mem;
        auto probe = [](const Stmt&, Memory&) -> std::optional<Rule> { return Rule::Skip; };
        reduce(e.prg, m, probe);
      } catch (const EvalError& err) {
        why = err.what();
      }
      out.push_back(who + ": " + why);
    }
  }
  for (bool reduce_side : {false, true}) {
    const Component& comp = reduce_side ? cfg.red : cfg.map;
    if (comp.idle() || handler_step(cfg, reduce_side)) continue;
    const Stmt& h = redex_of(*comp.prg);
    std::string msg = std::string(reduce_side ? "REDUCE" : "MAP") + " is stuck at '" + to_source_inline(h) + "'";
    if (const auto* in = h.as<Stmt::Input>()) msg += " (blocked global read on " + in->channel.name + ")";
    out.push_back(msg);
  }
  return out;
}

EmConfig init_em(const Program& p, const Machine& m, const IoQueue& input) { return m.initial(p, input); }

std::vector<TransitionLabel> enabled(const Machine& m, const EmConfig& cfg) { return m.enabled(cfg); }

Transition apply_transition(const Machine& m, const EmConfig& cfg, const TransitionLabel& label) {
  auto t = m.apply(cfg, label);
  if (!t) throw TransitionError("transition " + to_string(label) + " is not enabled");
  return std::move(*t);
}

bool is_waiting_input(const LocalExec& e, const ChannelEnv& env) {
  if (e.state != ExecState::Sleeping || !e.signal) return false;
  const Channel* ch = env.find(*e.signal);
  if (ch == nullptr || ch->direction != Direction::In) return false;
  const auto* in = head_instruction(*e.prg).as<Stmt::Input>();
  return in != nullptr && in->channel.name == *e.signal;
}

bool is_waiting_output(const LocalExec& e, const ChannelEnv& env) {
  if (e.state != ExecState::Sleeping || !e.signal) return false;
  const Channel* ch = env.find(*e.signal);
  return ch != nullptr && ch->direction == Direction::Out;
}

bool eval_predicate(const Predicate& pred, std::size_t x, const EmConfig& cfg, const Memory& handler_mem,
                    const ChannelEnv& env) {
  const LocalExec& e = cfg.ex.at(x);
  bool r = false;
  switch (pred.kind) {
    case Predicate::Kind::CanTell:
      r = cfg.t_m.has(x, pred.channel.name, Privilege::Tell);
      break;
    case Predicate::Kind::IsReady: {
      const auto* in = head_instruction(*e.prg).as<Stmt::Input>();
      r = e.state == ExecState::Sleeping && in != nullptr && in->channel.name == pred.channel.name &&
          dequeue(e.in, pred.channel.name).value.has_value();
      break;
    }
    case Predicate::Kind::Identical: {
      const ConfigScope scope(env, cfg);
      const Value v = eval_expr(handler_mem, *pred.exec, &scope);
      r = v.is_int() && v.int_value() == x;
      break;
    }
    case Predicate::Kind::WaitingInput:
      r = is_waiting_input(e, env);
      break;
    case Predicate::Kind::WaitingOutput:
      r = is_waiting_output(e, env);
      break;
  }
  return pred.negated ? !r : r;
}

std::string_view to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::Completed:
      return "Completed";
    case RunOutcome::QuiescentWithResidual:
      return "QuiescentWithResidual";
    case RunOutcome::Deadlocked:
      return "Deadlocked";
    case RunOutcome::BudgetExceeded:
      return "BudgetExceeded";
  }
  return "?";
}

std::optional<RunOutcome> parse_run_outcome(std::string_view s) {
  for (RunOutcome o : {RunOutcome::Completed, RunOutcome::QuiescentWithResidual, RunOutcome::Deadlocked,
                       RunOutcome::BudgetExceeded}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

RunOutcome classify_terminal(const EmConfig& cfg) {
  bool finished = cfg.map.idle() && cfg.red.idle();
  for (const LocalExec& e : cfg.ex) finished = finished && e.prg->is_skip();
  if (!finished) return RunOutcome::Deadlocked;
  return cfg.in.empty() ? RunOutcome::Completed : RunOutcome::QuiescentWithResidual;
}

}  // namespace ifcmr
