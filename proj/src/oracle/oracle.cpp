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

#include "ifcmr/oracle/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ifcmr/em/run.hpp"

namespace ifcmr {

InputDomain InputDomain::standard(const ChannelEnv& env, std::size_t max_len) {
  InputDomain dom;
  dom.env = env;
  dom.max_len = max_len;
  for (const Channel& ch : env.channels()) {
    if (ch.direction != Direction::In) continue;
    if (ch.default_value.is_bool()) {
      dom.alphabet[ch.name] = {Value::boolean(false), Value::boolean(true)};
    } else {
      dom.alphabet[ch.name] = {Value::integer(0), Value::integer(1)};
    }
  }
  return dom;
}

std::vector<IoItem> InputDomain::items() const {
  std::vector<IoItem> out;
  for (const Channel& ch : env.channels()) {
    auto it = alphabet.find(ch.name);
    if (ch.direction != Direction::In || it == alphabet.end()) continue;
    for (Value v : it->second) out.push_back({ch.name, v});
  }
  return out;
}

std::size_t InputDomain::size() const {
  const std::size_t n = items().size();
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t k = 0; k <= max_len; ++k) {
    total += layer;
    layer *= n;
  }
  return total;
}

void InputDomain::for_each_input(const std::function<bool(const IoQueue&)>& visit) const {
  const std::vector<IoItem> all = items();
  IoQueue q;
  bool stop = false;
  std::function<void(std::size_t)> fill = [&](std::size_t len) {
    if (stop) return;
    if (q.size() == len) {
      stop = !visit(q);
      return;
    }
    for (const IoItem& item : all) {
      q.push_back(item);
      fill(len);
      q.pop_back();
      if (stop) return;
    }
  };
  for (std::size_t len = 0; len <= max_len && !stop; ++len) fill(len);
}

void apply_alphabet_spec(InputDomain& dom, std::string_view spec) {
  std::stringstream groups{std::string(spec)};
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    const auto eq = group.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("alphabet entry '" + group + "' has no '='");
    const std::string name = group.substr(0, eq);
    const Channel& ch = dom.env.at(name);
    if (ch.direction != Direction::In) throw std::invalid_argument("'" + name + "' is not an input channel");
    std::vector<Value> values;
    std::stringstream vs{group.substr(eq + 1)};
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      auto v = parse_value(tok);
      if (!v || v->kind() != ch.default_value.kind()) {
        throw std::invalid_argument("value '" + tok + "' does not fit channel '" + name + "'");
      }
      values.push_back(*v);
    }
    dom.alphabet[name] = std::move(values);
  }
}

System standalone_system(const Program& p, std::size_t budget) {
  return [p, budget](const IoQueue& input, const ChannelEnv&) {
    const Outcome o = run_program(p, input, budget);
    SystemRun r;
    r.output = o.output;
    switch (o.kind) {
      case Outcome::Kind::Terminated:
        r.status = SystemRun::Status::Terminated;
        break;
      case Outcome::Kind::BudgetExceeded:
        r.status = SystemRun::Status::Diverged;
        break;
      case Outcome::Kind::Stuck:
        r.status = o.fault ? SystemRun::Status::Faulted : SystemRun::Status::NotTerminated;
        break;
      case Outcome::Kind::FinishedWithResidual:
        r.status = SystemRun::Status::NotTerminated;
        break;
    }
    return r;
  };
}

System enforced_system(const Program& p, const PolicyConfig& policy, SchedulerSpec scheduler, std::size_t budget,
                       EmOptions options) {
  return [p, policy, scheduler, budget, options](const IoQueue& input, const ChannelEnv& env) {
    const Machine m(env, policy, options);
    RunOptions ro;
    ro.scheduler = scheduler;
    ro.budget = budget;
    const RunResult res = run_enforced(p, m, input, ro);
    SystemRun r;
    r.output = res.global_output;
    switch (res.outcome) {
      case RunOutcome::Completed:
        // Per-channel reads can complete on items taken out of queue order;
        // that run belongs to the reordered input, not to this one.
        r.status = res.consumed == input ? SystemRun::Status::Terminated : SystemRun::Status::NotTerminated;
        break;
      case RunOutcome::BudgetExceeded:
        r.status = SystemRun::Status::Diverged;
        break;
      default:
        r.status = SystemRun::Status::NotTerminated;
        break;
    }
    return r;
  };
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::Tini:
      return "tini";
    case Property::Tsni:
      return "tsni";
    case Property::Ri:
      return "ri";
    case Property::Di:
      return "di";
  }
  return "?";
}

std::optional<Property> parse_property(std::string_view s) {
  for (Property p : {Property::Tini, Property::Tsni, Property::Ri, Property::Di}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "Holds";
    case Verdict::Violated:
      return "Violated";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

namespace {

std::string describe_bounds(const InputDomain& dom, const OracleOptions& opt) {
  std::string s = "K=" + std::to_string(dom.max_len) + " budget=" + std::to_string(opt.budget) + " alphabet={";
  bool first = true;
  for (const Channel& ch : dom.env.channels()) {
    auto it = dom.alphabet.find(ch.name);
    if (it == dom.alphabet.end()) continue;
    s += (first ? "" : "; ") + ch.name + ":";
    first = false;
    for (std::size_t k = 0; k < it->second.size(); ++k) s += (k ? "," : "") + to_string(it->second[k]);
  }
  return s + "}";
}

// Runs of one system under one environment, memoised by input.
class RunCache {
 public:
  RunCache(const System& sys, ChannelEnv env, CheckResult& stats) : sys_(sys), env_(std::move(env)), stats_(stats) {}

  const SystemRun& run(const IoQueue& input) {
    auto it = cache_.find(input);
    if (it != cache_.end()) return it->second;
    ++stats_.runs;
    return cache_.emplace(input, sys_(input, env_)).first->second;
  }

 private:
  const System& sys_;
  ChannelEnv env_;
  CheckResult& stats_;
  std::map<IoQueue, SystemRun> cache_;
};

bool too_large(const InputDomain& dom, const OracleOptions& opt, CheckResult& r) {
  if (dom.size() <= opt.max_inputs) return false;
  r.verdict = Verdict::Inconclusive;
  r.bounds += " (domain of " + std::to_string(dom.size()) + " inputs exceeds the cap of " +
              std::to_string(opt.max_inputs) + ")";
  return true;
}

CheckResult check_noninterference(const System& sys, const InputDomain& dom, const OracleOptions& opt, bool strong) {
  CheckResult res;
  res.bounds = describe_bounds(dom, opt);
  if (too_large(dom, opt, res)) return res;
  RunCache cache(sys, dom.env, res);

  // Inputs grouped by their low projection.
  std::map<IoQueue, std::vector<IoQueue>> buckets;
  dom.for_each_input([&](const IoQueue& q) {
    buckets[restrict_to_level(q, Level::Low, dom.env)].push_back(q);
    ++res.inputs_checked;
    return true;
  });

  const Property prop = strong ? Property::Tsni : Property::Tini;
  for (const auto& [low, inputs] : buckets) {
    const IoQueue* ref = nullptr;
    for (const IoQueue& q : inputs) {
      const SystemRun& r = cache.run(q);
      if (!r.terminated()) continue;
      if (ref == nullptr) {
        ref = &q;
        continue;
      }
      const SystemRun& base = cache.run(*ref);
      if (!low_eq(base.output, r.output, dom.env)) {
        res.verdict = Verdict::Violated;
        res.witness = Witness{prop, "terminating low-equivalent inputs give different low outputs", *ref, base.output,
                              q, r.output, {}, std::nullopt, 0};
        return res;
      }
    }
    if (!strong || ref == nullptr) continue;
    for (const IoQueue& q : inputs) {
      const SystemRun& r = cache.run(q);
      const bool diverges = r.status == SystemRun::Status::Diverged ||
                            (opt.tsni_faults_diverge && r.status == SystemRun::Status::Faulted);
      if (!diverges) continue;
      res.verdict = Verdict::Violated;
      res.witness = Witness{prop, "a low-equivalent input makes the program diverge", *ref, cache.run(*ref).output, q,
                            r.output, {}, std::nullopt, 0};
      return res;
    }
  }
  return res;
}

// Calls `visit` on each interleaving of `lows` (order kept) with the given
// number of default items per high channel. Stops when `visit` is true.
bool any_interleaving(const IoQueue& prefix, const IoQueue& lows, const std::vector<std::pair<std::string, Value>>& highs,
                      std::vector<std::size_t> counts, const std::function<bool(const IoQueue&)>& visit) {
  IoQueue q = prefix;
  std::size_t low_pos = 0;
  std::function<bool()> rec = [&]() -> bool {
    bool any_left = low_pos < lows.size();
    for (std::size_t c : counts) any_left = any_left || c > 0;
    if (!any_left) return visit(q);
    if (low_pos < lows.size()) {
      q.push_back(lows[low_pos++]);
      const bool hit = rec();
      --low_pos;
      q.pop_back();
      if (hit) return true;
    }
    for (std::size_t h = 0; h < highs.size(); ++h) {
      if (counts[h] == 0) continue;
      --counts[h];
      q.push_back({highs[h].first, highs[h].second});
      const bool hit = rec();
      q.pop_back();
      ++counts[h];
      if (hit) return true;
    }
    return false;
  };
  return rec();
}

// Calls `visit` with every count vector bounded per entry by `limits` and,
// when given, in total by `total`.
bool any_counts(const std::vector<std::size_t>& limits, std::optional<std::size_t> total,
                const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> counts(limits.size(), 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t used) -> bool {
    if (k == limits.size()) return visit(counts);
    for (std::size_t n = 0; n <= limits[k] && (!total || used + n <= *total); ++n) {
      counts[k] = n;
      if (rec(k + 1, used + n)) return true;
    }
    counts[k] = 0;
    return false;
  };
  return rec(0, 0);
}

std::vector<std::string> high_inputs(const ChannelEnv& env) {
  std::vector<std::string> out;
  for (const Channel& ch : env.channels()) {
    if (ch.direction == Direction::In && ch.level == Level::High) out.push_back(ch.name);
  }
  return out;
}

// RI: some input with the same low items and only default high items, no
// more per channel than the original, gives a low-equivalent output.
bool ri_instance_ok(RunCache& cache, const InputDomain& dom, const IoQueue& input, const IoQueue& output,
                    const std::map<std::string, Value>& defaults, std::size_t& tried) {
  const IoQueue lows = restrict_to_level(input, Level::Low, dom.env);
  std::vector<std::pair<std::string, Value>> highs;
  std::vector<std::size_t> limits;
  for (const std::string& h : high_inputs(dom.env)) {
    highs.emplace_back(h, defaults.at(h));
    limits.push_back(restrict_to_channel(input, h).size());
  }
  return any_counts(limits, std::nullopt, [&](const std::vector<std::size_t>& counts) {
    return any_interleaving({}, lows, highs, counts, [&](const IoQueue& cand) {
      ++tried;
      const SystemRun& r = cache.run(cand);
      return r.terminated() && low_eq(r.output, output, dom.env);
    });
  });
}

// High items of `input` after position j all carry their channel's default.
bool tail_is_default(const InputDomain& dom, const IoQueue& input, std::size_t j,
                     const std::map<std::string, Value>& defaults) {
  for (std::size_t k = j + 1; k < input.size(); ++k) {
    if (dom.env.level_of(input[k].channel) == Level::High && input[k].value != defaults.at(input[k].channel)) {
      return false;
    }
  }
  return true;
}

// DI: with the prefix before the deleted item kept as is, some correction
// of the suffix (same low items, default high items, at most max_len of
// them) gives a low-equivalent output.
bool di_instance_ok(RunCache& cache, const InputDomain& dom, const OracleOptions& opt, const IoQueue& input,
                    const IoQueue& output, std::size_t j, const std::map<std::string, Value>& defaults,
                    std::size_t& tried) {
  const IoQueue prefix(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(j));
  const IoQueue suffix(input.begin() + static_cast<std::ptrdiff_t>(j) + 1, input.end());
  const IoQueue lows = restrict_to_level(suffix, Level::Low, dom.env);
  std::vector<std::pair<std::string, Value>> highs;
  std::vector<std::size_t> limits;
  for (const std::string& h : high_inputs(dom.env)) {
    highs.emplace_back(h, defaults.at(h));
    limits.push_back(opt.di_strict ? restrict_to_channel(suffix, h).size() : dom.max_len);
  }
  return any_counts(limits, dom.max_len, [&](const std::vector<std::size_t>& counts) {
    return any_interleaving(prefix, lows, highs, counts, [&](const IoQueue& cand) {
      ++tried;
      const SystemRun& r = cache.run(cand);
      return r.terminated() && low_eq(r.output, output, dom.env);
    });
  });
}

}  // namespace

std::vector<std::map<std::string, Value>> default_assignments(const InputDomain& dom) {
  const std::vector<std::string> highs = high_inputs(dom.env);
  std::map<ValueKind, std::set<Value>> per_kind;
  for (const std::string& h : highs) {
    const ValueKind k = dom.env.at(h).default_value.kind();
    auto it = dom.alphabet.find(h);
    if (it != dom.alphabet.end()) per_kind[k].insert(it->second.begin(), it->second.end());
    if (per_kind[k].empty()) per_kind[k].insert(dom.env.at(h).default_value);
  }
  std::vector<std::map<ValueKind, Value>> choices{{}};
  for (const auto& [kind, values] : per_kind) {
    std::vector<std::map<ValueKind, Value>> next;
    for (const auto& partial : choices) {
      for (Value v : values) {
        auto c = partial;
        c[kind] = v;
        next.push_back(std::move(c));
      }
    }
    choices = std::move(next);
  }
  std::vector<std::map<std::string, Value>> out;
  for (const auto& c : choices) {
    std::map<std::string, Value> assignment;
    for (const std::string& h : highs) assignment[h] = c.at(dom.env.at(h).default_value.kind());
    out.push_back(std::move(assignment));
  }
  return out;
}

CheckResult check_tini(const System& sys, const InputDomain& dom, const OracleOptions& opt) {
  return check_noninterference(sys, dom, opt, false);
}

CheckResult check_tsni(const System& sys, const InputDomain& dom, const OracleOptions& opt) {
  return check_noninterference(sys, dom, opt, true);
}

CheckResult check_ri(const System& sys, const InputDomain& dom, const OracleOptions& opt) {
  CheckResult res;
  res.bounds = describe_bounds(dom, opt);
  if (too_large(dom, opt, res)) return res;
  for (const auto& defaults : default_assignments(dom)) {
    RunCache cache(sys, dom.env.with_defaults(defaults), res);
    std::optional<Witness> found;
    dom.for_each_input([&](const IoQueue& input) {
      ++res.inputs_checked;
      const SystemRun& r = cache.run(input);
      if (!r.terminated()) return true;
      std::size_t tried = 0;
      if (ri_instance_ok(cache, dom, input, r.output, defaults, tried)) return true;
      found = Witness{Property::Ri, "no input with only default high items reproduces the low output", input,
                      r.output, std::nullopt, std::nullopt, defaults, std::nullopt, tried};
      return false;
    });
    if (found) {
      res.verdict = Verdict::Violated;
      res.witness = std::move(found);
      return res;
    }
  }
  return res;
}

CheckResult check_di(const System& sys, const InputDomain& dom, const OracleOptions& opt) {
  CheckResult res;
  res.bounds = describe_bounds(dom, opt) + (opt.di_strict ? " strict" : "");
  if (too_large(dom, opt, res)) return res;
  for (const auto& defaults : default_assignments(dom)) {
    RunCache cache(sys, dom.env.with_defaults(defaults), res);
    std::optional<Witness> found;
    dom.for_each_input([&](const IoQueue& input) {
      ++res.inputs_checked;
      const SystemRun& r = cache.run(input);
      if (!r.terminated()) return true;
      for (std::size_t j = 0; j < input.size(); ++j) {
        if (dom.env.level_of(input[j].channel) != Level::High || !tail_is_default(dom, input, j, defaults)) continue;
        std::size_t tried = 0;
        if (di_instance_ok(cache, dom, opt, input, r.output, j, defaults, tried)) continue;
        found = Witness{Property::Di, "deleting a high item cannot be corrected with default high items", input,
                        r.output, std::nullopt, std::nullopt, defaults, j, tried};
        return false;
      }
      return true;
    });
    if (found) {
      res.verdict = Verdict::Violated;
      res.witness = std::move(found);
      return res;
    }
  }
  return res;
}

CheckResult check_property(Property p, const System& sys, const InputDomain& dom, const OracleOptions& opt) {
  switch (p) {
    case Property::Tini:
      return check_tini(sys, dom, opt);
    case Property::Tsni:
      return check_tsni(sys, dom, opt);
    case Property::Ri:
      return check_ri(sys, dom, opt);
    case Property::Di:
      return check_di(sys, dom, opt);
  }
  return {};
}

CheckResult check_property(Property p, const Program& prog, const InputDomain& dom, const OracleOptions& opt) {
  return check_property(p, standalone_system(prog, opt.budget), dom, opt);
}

bool confirm_witness(const System& sys, const InputDomain& dom, const Witness& w, const OracleOptions& opt) {
  CheckResult stats;
  switch (w.property) {
    case Property::Tini:
    case Property::Tsni: {
      if (!w.other_input || !low_eq(w.input, *w.other_input, dom.env)) return false;
      RunCache cache(sys, dom.env, stats);
      const SystemRun a = cache.run(w.input);
      const SystemRun b = cache.run(*w.other_input);
      if (!a.terminated()) return false;
      if (b.terminated()) return !low_eq(a.output, b.output, dom.env);
      return w.property == Property::Tsni &&
             (b.status == SystemRun::Status::Diverged ||
              (opt.tsni_faults_diverge && b.status == SystemRun::Status::Faulted));
    }
    case Property::Ri: {
      RunCache cache(sys, dom.env.with_defaults(w.defaults), stats);
      const SystemRun r = cache.run(w.input);
      std::size_t tried = 0;
      return r.terminated() && !ri_instance_ok(cache, dom, w.input, r.output, w.defaults, tried);
    }
    case Property::Di: {
      if (!w.deleted_index || *w.deleted_index >= w.input.size()) return false;
      if (dom.env.level_of(w.input[*w.deleted_index].channel) != Level::High) return false;
      if (!tail_is_default(dom, w.input, *w.deleted_index, w.defaults)) return false;
      RunCache cache(sys, dom.env.with_defaults(w.defaults), stats);
      const SystemRun r = cache.run(w.input);
      std::size_t tried = 0;
      return r.terminated() && !di_instance_ok(cache, dom, opt, w.input, r.output, *w.deleted_index, w.defaults, tried);
    }
  }
  return false;
}

PrecisionReport check_precision(const Program& p, const Machine& m, const InputDomain& dom,
                                const ExploreOptions& explore_options, std::size_t budget) {
  PrecisionReport report;
  dom.for_each_input([&](const IoQueue& input) {
    const Outcome o = run_program(p, input, budget);
    if (!o.terminated()) return true;
    PrecisionCase c;
    c.input = input;
    c.expected_output = o.output;
    const ExploreResult e = explore(p, m, input, explore_options);
    c.states = e.states;
    RunClass want;
    want.outcome = RunOutcome::Completed;
    want.consumed = split_by_channel(input);
    want.output = split_by_channel(o.output);
    if (e.partial) {
      c.detail = "state cap reached";
    } else if (e.classes.size() != 1) {
      c.detail = std::to_string(e.classes.size()) + " outcome classes";
      for (const RunClass& rc : e.classes) c.detail += "; " + to_string(rc);
    } else if (!(*e.classes.begin() == want)) {
      c.detail = "got " + to_string(*e.classes.begin()) + ", expected " + to_string(want);
    } else {
      c.ok = true;
    }
    report.ok = report.ok && c.ok;
    report.cases.push_back(std::move(c));
    return true;
  });
  return report;
}

}  // namespace ifcmr
