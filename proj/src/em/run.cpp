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

#include "ifcmr/em/run.hpp"

#include <unordered_map>

namespace ifcmr {

RunResult run_enforced(const Program& p, const Machine& m, const IoQueue& input, const RunOptions& options) {
  RunResult r;
  r.input = input;
  EmConfig cfg = m.initial(p, input);
  auto scheduler = make_scheduler(options.scheduler);
  for (std::size_t i = 0; i < cfg.ex.size(); ++i) r.executions.push_back({i, std::nullopt, {}, false, {}, {}, {}});

  for (;;) {
    if (r.steps >= options.budget) {
      r.outcome = RunOutcome::BudgetExceeded;
      break;
    }
    std::vector<Transition> succ = m.successors(cfg);
    if (succ.empty()) {
      r.outcome = classify_terminal(cfg);
      if (r.outcome == RunOutcome::Deadlocked) r.notes = m.blocked_reasons(cfg);
      break;
    }
    if (scheduler->exhausted()) {
      r.outcome = RunOutcome::BudgetExceeded;
      r.notes.push_back("schedule exhausted");
      break;
    }
    std::vector<TransitionLabel> labels;
    labels.reserve(succ.size());
    for (const Transition& t : succ) labels.push_back(t.label);
    Transition& t = succ[scheduler->choose(labels)];
    ++r.steps;
    if (options.observer) options.observer(cfg, t);

    for (const Event& e : t.events) {
      switch (e.kind) {
        case Event::Kind::GlobalRead:
          r.reads.push_back({r.steps, {e.channel, e.value}, e.exec});
          r.consumed.push_back({e.channel, e.value});
          break;
        case Event::Kind::GlobalWrite:
          r.writes.push_back({r.steps, {e.channel, e.value}, e.exec});
          break;
        case Event::Kind::Delivered:
          r.executions[e.exec].delivered.push_back({e.channel, e.value});
          break;
        case Event::Kind::LocalOutput:
          r.executions[e.exec].produced.push_back({e.channel, e.value});
          break;
        case Event::Kind::Cloned: {
          ExecutionSummary s = r.executions[e.parent];
          s.id = e.exec;
          s.parent = e.parent;
          r.executions.push_back(std::move(s));
          ++r.clone_count;
          break;
        }
        default:
          break;
      }
    }
    r.schedule.push_back(t.label);
    cfg = std::move(t.next);
  }

  r.residual = cfg.in;
  r.global_output = cfg.out;
  for (std::size_t i = 0; i < cfg.ex.size(); ++i) {
    r.executions[i].state = cfg.ex[i].state;
    r.executions[i].finished = cfg.ex[i].prg->is_skip();
    r.executions[i].pending_in = cfg.ex[i].in;
  }
  r.final_config = std::move(cfg);
  return r;
}

RunClass run_class(RunOutcome outcome, const IoQueue& input, const EmConfig& cfg) {
  RunClass c;
  c.outcome = outcome;
  auto all = split_by_channel(input);
  auto left = split_by_channel(cfg.in);
  for (auto& [ch, values] : all) {
    const std::size_t remaining = left.count(ch) ? left[ch].size() : 0;
    values.resize(values.size() - remaining);
    if (!values.empty()) c.consumed[ch] = std::move(values);
  }
  c.output = split_by_channel(cfg.out);
  return c;
}

std::string to_string(const RunClass& c) {
  auto render = [](const std::map<std::string, std::vector<Value>>& m) {
    std::string s = "{";
    for (const auto& [ch, vs] : m) {
      if (s.size() > 1) s += ", ";
      s += ch + ":[";
      for (std::size_t k = 0; k < vs.size(); ++k) s += (k ? "," : "") + to_string(vs[k]);
      s += "]";
    }
    return s + "}";
  };
  return std::string(to_string(c.outcome)) + " consumed=" + render(c.consumed) + " output=" + render(c.output);
}

namespace {

struct Visit {
  std::size_t depth;
  bool on_path;
};

struct Frame {
  const EmConfig* cfg;  // key in the visited map
  std::size_t depth;
  std::vector<Transition> succ;
  std::size_t next = 0;
};

// Depth-first search keeping the smallest depth at which each
// configuration was reached; a shallower revisit expands it again.
ExploreResult search(const Program& p, const Machine& m, const IoQueue& input, const ExploreOptions& opt,
                     bool reduce, bool& unsound) {
  ExploreResult res;
  res.reduced = reduce;
  std::unordered_map<EmConfig, Visit, EmConfigHash> visited;

  auto expand = [&](const EmConfig& cfg) {
    if (reduce) {
      if (auto t = m.internal_local_step(cfg)) {
        std::vector<Transition> one;
        one.push_back(std::move(*t));
        return one;
      }
    }
    return m.successors(cfg);
  };

  std::vector<Frame> stack;
  auto enter = [&](const EmConfig& cfg, std::size_t depth) {
    auto succ = expand(cfg);
    if (succ.empty()) {
      res.classes.insert(run_class(classify_terminal(cfg), input, cfg));
      return;
    }
    auto it = visited.find(cfg);
    it->second.on_path = true;
    stack.push_back({&it->first, depth, std::move(succ), 0});
  };

  EmConfig root = m.initial(p, input);
  visited.emplace(root, Visit{0, false});
  enter(visited.begin()->first, 0);

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.succ.size()) {
      visited.find(*f.cfg)->second.on_path = false;
      stack.pop_back();
      continue;
    }
    Transition& t = f.succ[f.next++];
    const std::size_t depth = f.depth + 1;
    const EmConfig& before = *f.cfg;
    if (opt.observer) opt.observer(before, t);
    for (const Event& e : t.events) {
      if (e.kind == Event::Kind::Cloned && before.ex[e.parent].state == ExecState::Executing) unsound = true;
    }
    if (reduce && unsound) return res;

    auto it = visited.find(t.next);
    if (it != visited.end()) {
      if (it->second.on_path) {
        res.divergent = true;
        res.classes.insert(run_class(RunOutcome::BudgetExceeded, input, t.next));
        continue;
      }
      if (it->second.depth <= depth) continue;
      it->second.depth = depth;
    } else {
      if (visited.size() >= opt.max_states) {
        res.partial = true;
        break;
      }
      it = visited.emplace(std::move(t.next), Visit{depth, false}).first;
    }
    if (depth >= opt.depth) {
      res.depth_limited = true;
      res.classes.insert(run_class(RunOutcome::BudgetExceeded, input, it->first));
      continue;
    }
    enter(it->first, depth);
  }
  res.states = visited.size();
  return res;
}

}  // namespace

ExploreResult explore(const Program& p, const Machine& m, const IoQueue& input, const ExploreOptions& options) {
  bool unsound = false;
  if (options.reduce) {
    ExploreResult r = search(p, m, input, options, true, unsound);
    if (!unsound) return r;
  }
  return search(p, m, input, options, false, unsound);
}

}  // namespace ifcmr
