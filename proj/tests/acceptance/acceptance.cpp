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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "em_checks.hpp"
#include "generators.hpp"
#include "ifcmr/em/invariants.hpp"
#include "ifcmr/em/run.hpp"
#include "ifcmr/lang/parser.hpp"
#include "ifcmr/lang/printer.hpp"
#include "ifcmr/oracle/oracle.hpp"

namespace ifcmr {
namespace {

// Wall-clock limits, in seconds.
constexpr double kLimitReproduction = 1.0;
constexpr double kLimitMatrix = 120.0;
constexpr double kLimitSoundness = 300.0;
constexpr double kLimitPrecision = 600.0;

constexpr std::size_t kOracleBudget = 10000;
constexpr std::size_t kRunBudget = 20000;
constexpr std::size_t kExploreDepth = 400;

const Value T = Value::boolean(true);
const Value F = Value::boolean(false);

// Every enforced run made here reports to an attribution checker; the
// findings are collected for the invariant criterion.
struct Audit {
  ChannelEnv env;
  AttributionChecker checker;
  std::string context;
  Audit(ChannelEnv e, bool strict, std::string ctx)
      : env(std::move(e)), checker(env, strict), context(std::move(ctx)) {}
};

std::deque<Audit> g_audits;

TransitionObserver audited(const ChannelEnv& env, const std::string& policy, const std::string& context) {
  Audit& a = g_audits.emplace_back(env, forbids_high_reads_by_low(policy), context);
  return [&a](const EmConfig& before, const Transition& t) { (void)a.checker.check(before, t); };
}

std::size_t audit_violations(std::string* first) {
  std::size_t n = 0;
  for (const Audit& a : g_audits) {
    if (!a.checker.violations().empty() && first && first->empty()) *first = a.context + ": " + a.checker.violations()[0];
    n += a.checker.violations().size();
  }
  return n;
}

std::size_t audit_transitions() {
  std::size_t n = 0;
  for (const Audit& a : g_audits) n += a.checker.transitions_checked();
  return n;
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int g_failures = 0;

void criterion(int n, const char* title, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs > limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s");
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", n, title, secs,
              o.detail.empty() ? "" : " - ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++g_failures;
}

std::vector<std::pair<std::string, SchedulerSpec>> schedulers() {
  std::vector<std::pair<std::string, SchedulerSpec>> out{{"lowest", SchedulerSpec::lowest_index()},
                                                          {"round-robin", SchedulerSpec::round_robin()}};
  for (std::uint64_t s = 1; s <= 8; ++s) out.emplace_back("seed " + std::to_string(s), SchedulerSpec::seeded(s));
  return out;
}

RunResult enforced(const testing::CorpusProgram& c, const std::string& policy, const IoQueue& input,
                   const SchedulerSpec& sched, const std::string& context) {
  RunOptions o;
  o.scheduler = sched;
  o.budget = kRunBudget;
  o.observer = audited(c.env, policy, context);
  return run_enforced(c.program, Machine(c.env, *shipped_policy(policy)), input, o);
}

const IoQueue kExpectedOutput{{"cH3", Value::integer(2)}, {"cL3", Value::integer(2)}};

Outcome reproduce_ri() {
  Outcome o;
  const auto c = testing::load_corpus("fig8");
  std::optional<RunResult> first;
  for (const auto& [name, sched] : schedulers()) {
    const RunResult r = enforced(c, "ri", testing::fig9_input(), sched, "ri/" + name);
    if (r.outcome != RunOutcome::Completed) o.fail(name + ": outcome " + std::string(to_string(r.outcome)));
    if (r.global_output != kExpectedOutput) o.fail(name + ": output " + to_string(r.global_output));
    if (r.consumed.size() != 4 || !r.residual.empty()) o.fail(name + ": consumed " + to_string(r.consumed));
    if (!first) {
      first = r;
    } else if (split_by_channel(r.global_output) != split_by_channel(first->global_output) ||
               split_by_channel(r.consumed) != split_by_channel(first->consumed)) {
      o.fail(name + ": channel-wise I/O differs from lowest");
    }
  }
  if (o.ok) o.detail = "output " + to_string(kExpectedOutput) + " under " + std::to_string(schedulers().size()) + " schedulers";
  return o;
}

Outcome reproduce_ni() {
  Outcome o;
  const auto c = testing::load_corpus("fig8");
  const IoQueue residual{{"cH2", Value::integer(7)}};
  for (const auto& [name, sched] : schedulers()) {
    Audit* audit = nullptr;
    RunOptions ro;
    ro.scheduler = sched;
    ro.budget = kRunBudget;
    ro.observer = audited(c.env, "ni", "ni/" + name);
    audit = &g_audits.back();
    const RunResult r = run_enforced(c.program, Machine(c.env, ni_policy()), testing::fig9_input(), ro);
    if (!channel_eq(r.global_output, kExpectedOutput)) o.fail(name + ": output " + to_string(r.global_output));
    if (r.residual != residual) o.fail(name + ": residual " + to_string(r.residual));
    if (audit->checker.high_reads_by_low() != 0) o.fail(name + ": high global read by execution 1");
    for (const GlobalReadRecord& g : r.reads) {
      if (c.env.level_of(g.item.channel) == Level::High && g.requester != 0) o.fail(name + ": high read for exec 1");
    }
  }
  if (o.ok) o.detail = "residual (cH2,7), no high reads by execution 1";
  return o;
}

Outcome reproduce_di() {
  Outcome o;
  const auto c = testing::load_corpus("fig8");
  const RunResult ni = enforced(c, "ni", testing::fig9_input(), SchedulerSpec::lowest_index(), "di/ni-reference");
  for (const auto& [name, sched] : schedulers()) {
    const RunResult r = enforced(c, "di", testing::fig9_input(), sched, "di/" + name);
    if (r.clone_count != 1) o.fail(name + ": clone_count " + std::to_string(r.clone_count));
    if (r.executions.size() != 3) o.fail(name + ": " + std::to_string(r.executions.size()) + " executions");
    if (!channel_eq(r.global_output, ni.global_output)) o.fail(name + ": output " + to_string(r.global_output));
    for (const GlobalWriteRecord& w : r.writes) {
      if (w.source_exec == 2) o.fail(name + ": global output from execution 2");
    }
  }
  if (o.ok) o.detail = "one clone, three executions, outputs equal to NI";
  return o;
}

// Standalone verdicts for the corpus, shared by the matrix and precision criteria.
std::map<std::pair<std::string, Property>, CheckResult> g_matrix;

const std::vector<Property> kProperties{Property::Tini, Property::Tsni, Property::Ri, Property::Di};

Outcome matrix() {
  Outcome o;
  OracleOptions opt;
  opt.budget = kOracleBudget;
  for (const std::string& name : testing::corpus_names()) {
    const auto c = testing::load_corpus(name);
    const InputDomain dom = InputDomain::standard(c.env, 3);
    const System sys = standalone_system(c.program, kOracleBudget);
    for (Property p : kProperties) {
      CheckResult r = check_property(p, sys, dom, opt);
      if (r.verdict == Verdict::Inconclusive) o.fail(name + " " + std::string(to_string(p)) + " inconclusive");
      if (r.verdict == Verdict::Violated && !(r.witness && confirm_witness(sys, dom, *r.witness, opt))) {
        o.fail(name + " " + std::string(to_string(p)) + ": witness not confirmed");
      }
      g_matrix[{name, p}] = std::move(r);
    }
  }
  auto expect = [&](const std::string& name, Property p, Verdict v) {
    const Verdict got = g_matrix.at({name, p}).verdict;
    if (got != v) {
      o.fail(name + " " + std::string(to_string(p)) + " is " + std::string(to_string(got)) + ", expected " +
             std::string(to_string(v)));
    }
  };
  expect("fig12a", Property::Tini, Verdict::Holds);
  expect("fig12a", Property::Ri, Verdict::Violated);
  expect("fig12b", Property::Ri, Verdict::Holds);
  expect("fig12b", Property::Di, Verdict::Violated);
  if (o.ok) {
    std::string table;
    for (const std::string& name : testing::corpus_names()) {
      table += name + "[";
      for (Property p : kProperties) {
        table += std::string(to_string(p)) + "=" + std::string(to_string(g_matrix.at({name, p}).verdict)) +
                 (p == Property::Di ? "" : ",");
      }
      table += "] ";
    }
    o.detail = table;
  }
  return o;
}

System audited_system(const testing::CorpusProgram& c, const std::string& policy, const SchedulerSpec& sched) {
  TransitionObserver obs = audited(c.env, policy, "soundness/" + c.name + "/" + policy);
  // Audits are per channel environment; the oracle swaps defaults, so a
  // second checker follows each set of defaults it sees.
  auto per_env = std::make_shared<std::map<std::string, TransitionObserver>>();
  return [c, policy, sched, obs, per_env](const IoQueue& input, const ChannelEnv& env) {
    std::string key;
    for (const Channel& ch : env.channels()) key += to_string(ch.default_value) + ",";
    auto it = per_env->find(key);
    if (it == per_env->end()) {
      it = per_env->emplace(key, env == c.env ? obs : audited(env, policy, "soundness/" + c.name + "/" + policy + "/" + key))
               .first;
    }
    RunOptions ro;
    ro.scheduler = sched;
    ro.budget = kRunBudget;
    ro.observer = it->second;
    const RunResult res = run_enforced(c.program, Machine(env, *shipped_policy(policy)), input, ro);
    SystemRun r;
    r.output = res.global_output;
    const bool in_order = res.consumed == input;
    r.status = res.outcome == RunOutcome::Completed        ? (in_order ? SystemRun::Status::Terminated
                                                                       : SystemRun::Status::NotTerminated)
               : res.outcome == RunOutcome::BudgetExceeded ? SystemRun::Status::Diverged
                                                           : SystemRun::Status::NotTerminated;
    return r;
  };
}

Outcome soundness() {
  Outcome o;
  std::size_t pairs = 0;
  std::size_t checks = 0;
  for (const std::string& name : testing::corpus_names()) {
    const auto c = testing::load_corpus(name);
    const InputDomain dom = InputDomain::standard(c.env, 3);
    for (const SchedulerSpec& sched : {SchedulerSpec::round_robin(), SchedulerSpec::seeded(7)}) {
      // NI: terminating runs on low-equivalent inputs agree on low output.
      // A run that blocks may stop short, as termination is not covered.
      const System ni = audited_system(c, "ni", sched);
      std::map<IoQueue, std::pair<IoQueue, IoQueue>> by_low;  // low input -> (input, low output)
      dom.for_each_input([&](const IoQueue& in) {
        const SystemRun r = ni(in, c.env);
        if (!r.terminated()) return true;
        const IoQueue low_in = restrict_to_level(in, Level::Low, c.env);
        const IoQueue low_out = restrict_to_level(r.output, Level::Low, c.env);
        auto [it, fresh] = by_low.try_emplace(low_in, in, low_out);
        if (!fresh) {
          ++pairs;
          if (it->second.second != low_out) {
            o.fail(name + " NI: " + to_string(it->second.first) + " and " + to_string(in) + " differ on low output");
          }
        }
        return true;
      });
      for (const auto& [prop, policy] : std::vector<std::pair<Property, std::string>>{
               {Property::Tini, "ni"}, {Property::Ri, "ri"}, {Property::Di, "di"}}) {
        ++checks;
        const System sys = audited_system(c, policy, sched);
        const CheckResult r = check_property(prop, sys, dom, OracleOptions{kOracleBudget});
        if (r.verdict != Verdict::Holds) {
          o.fail(name + " under " + policy + ": " + std::string(to_string(prop)) + " " +
                 std::string(to_string(r.verdict)) +
                 (r.witness ? " on " + to_string(r.witness->input) : std::string()));
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " NI pairs, " + std::to_string(checks) + " definitional checks";
  return o;
}

Outcome precision() {
  Outcome o;
  std::size_t cases = 0;
  std::size_t states = 0;
  const std::map<Property, std::string> enforcer{
      {Property::Tini, "ni"}, {Property::Tsni, "ni"}, {Property::Ri, "ri"}, {Property::Di, "di"}};
  for (const std::string& name : testing::corpus_names()) {
    const auto c = testing::load_corpus(name);
    for (Property p : kProperties) {
      if (g_matrix.at({name, p}).verdict != Verdict::Holds) continue;
      const std::string policy = enforcer.at(p);
      ExploreOptions eo;
      eo.depth = kExploreDepth;
      eo.observer = audited(c.env, policy, "precision/" + name + "/" + policy);
      const PrecisionReport rep = check_precision(c.program, Machine(c.env, *shipped_policy(policy)),
                                                  InputDomain::standard(c.env, 3), eo, kOracleBudget);
      for (const PrecisionCase& pc : rep.cases) {
        ++cases;
        states += pc.states;
        if (!pc.ok) o.fail(name + " " + std::string(to_string(p)) + "/" + policy + " on " + to_string(pc.input) + ": " + pc.detail);
      }
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " terminating inputs, " + std::to_string(states) + " states explored";
  return o;
}

Outcome subdi_deadlock() {
  Outcome o;
  const auto c = testing::load_corpus("fig14c");
  ExploreOptions eo;
  eo.depth = kExploreDepth;
  eo.observer = audited(c.env, "subdi", "fig14c/subdi/explore");
  const ExploreResult ex = explore(c.program, Machine(c.env, subdi_policy()), testing::fig14c_input(), eo);
  bool deadlocked = false;
  for (const RunClass& k : ex.classes) deadlocked = deadlocked || k.outcome == RunOutcome::Deadlocked;
  if (!deadlocked) o.fail("no Deadlocked class under SubDI");
  if (ex.partial || ex.depth_limited) o.fail("exploration incomplete");
  const RunResult subdi = enforced(c, "subdi", testing::fig14c_input(), SchedulerSpec::lowest_index(), "fig14c/subdi/run");
  if (subdi.outcome != RunOutcome::Deadlocked) o.fail("SubDI run " + std::string(to_string(subdi.outcome)));
  for (const auto& [name, sched] : schedulers()) {
    const RunResult ri = enforced(c, "ri", testing::fig14c_input(), sched, "fig14c/ri/" + name);
    if (ri.outcome != RunOutcome::Completed) o.fail("RI " + name + ": " + std::string(to_string(ri.outcome)));
  }
  if (o.ok) o.detail = "SubDI: " + std::to_string(ex.classes.size()) + " class(es), Deadlocked; RI completes";
  return o;
}

Outcome invariants() {
  Outcome o;
  // Frame and signal hygiene on random transitions.
  std::size_t transitions = 0;
  std::mt19937_64 rng(20261018);
  std::uint64_t seed = 0;
  while (transitions < 5000) {
    for (const std::string& name : testing::corpus_names()) {
      const auto c = testing::load_corpus(name);
      for (const std::string& policy : shipped_policy_names()) {
        RunOptions ro;
        ro.scheduler = SchedulerSpec::seeded(seed++);
        ro.budget = 2000;
        TransitionObserver attribution = audited(c.env, policy, "fuzz/" + name + "/" + policy);
        ro.observer = [&, attribution](const EmConfig& before, const Transition& t) {
          ++transitions;
          attribution(before, t);
          if (auto v = testing::frame_violation(before, t)) o.fail("frame: " + name + "/" + policy + " " + to_string(t.label) + ": " + *v);
          if (auto v = testing::hygiene_violation(before, t)) o.fail("hygiene: " + name + "/" + policy + " " + to_string(t.label) + ": " + *v);
        };
        (void)run_enforced(c.program, Machine(c.env, *shipped_policy(policy)), testing::random_input(rng, c.env, 4), ro);
      }
    }
  }

  std::string first;
  const std::size_t bad = audit_violations(&first);
  if (bad != 0) o.fail("attribution: " + std::to_string(bad) + " violation(s), first " + first);

  // Printer and parser agree.
  std::size_t round_trips = 0;
  for (const std::string& name : testing::corpus_names()) {
    const auto c = testing::load_corpus(name);
    if (!equal(parse_program(to_source(*c.program)), c.program)) o.fail("round trip: " + name);
    ++round_trips;
  }
  testing::ProgramGenerator gen(99, ChannelEnv::running_example());
  for (int i = 0; i < 500; ++i) {
    const Program p = gen.program(4);
    if (!equal(parse_program(to_source(*p)), p)) o.fail("round trip: " + to_source_inline(*p));
    ++round_trips;
  }

  // Seeded runs replay identically, both by seed and by schedule.
  const auto c = testing::load_corpus("fig8");
  std::mt19937_64 inputs(5);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::string policy = shipped_policy_names()[s % shipped_policy_names().size()];
    const Machine m(c.env, *shipped_policy(policy));
    const IoQueue in = s % 2 == 0 ? testing::fig9_input() : testing::random_input(inputs, c.env, 5);
    RunOptions ro;
    ro.scheduler = SchedulerSpec::seeded(1000 + s);
    ro.budget = kRunBudget;
    const RunResult a = run_enforced(c.program, m, in, ro);
    const RunResult b = run_enforced(c.program, m, in, ro);
    RunOptions scripted = ro;
    scripted.scheduler = SchedulerSpec::scripted(a.schedule);
    const RunResult r = run_enforced(c.program, m, in, scripted);
    for (const RunResult* x : {&b, &r}) {
      if (x->schedule != a.schedule || x->global_output != a.global_output || x->consumed != a.consumed ||
          x->outcome != a.outcome || !(x->final_config == a.final_config)) {
        o.fail("replay: seed " + std::to_string(1000 + s) + " under " + policy);
      }
    }
  }

  if (o.ok) {
    o.detail = std::to_string(transitions) + " fuzzed transitions, " + std::to_string(audit_transitions()) +
               " audited transitions, " + std::to_string(round_trips) + " round trips, 100 replays";
  }
  return o;
}

}  // namespace
}  // namespace ifcmr

int main() {
  using namespace ifcmr;
  criterion(1, "RI run of the worked example", kLimitReproduction, reproduce_ri);
  criterion(2, "NI run of the worked example", kLimitReproduction, reproduce_ni);
  criterion(3, "DI run of the worked example", kLimitReproduction, reproduce_di);
  criterion(4, "property matrix at K=3", kLimitMatrix, matrix);
  criterion(5, "bounded soundness of NI, RI and DI", kLimitSoundness, soundness);
  criterion(6, "bounded precision", kLimitPrecision, precision);
  criterion(7, "SubDI deadlock on fig14c", kLimitReproduction, subdi_deadlock);
  criterion(8, "invariants", 0, invariants);
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
