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

#include <gtest/gtest.h>

#include <set>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "ifcmr/lang/parser.hpp"
#include "ifcmr/oracle/oracle.hpp"

namespace ifcmr {
namespace {

const Value T = Value::boolean(true);
const Value F = Value::boolean(false);

CheckResult check(Property p, const std::string& source, std::size_t k = 3,
                  const ChannelEnv& env = ChannelEnv::running_example()) {
  return check_property(p, parse_program(source), InputDomain::standard(env, k));
}

struct Corpus {
  testing::CorpusProgram c;
  InputDomain dom;
  System sys;
};

Corpus corpus(const std::string& name, std::size_t k = 3) {
  Corpus out{testing::load_corpus(name), {}, {}};
  out.dom = InputDomain::standard(out.c.env, k);
  out.sys = standalone_system(out.c.program, OracleOptions{}.budget);
  return out;
}

TEST(Domain, EnumeratesByLengthThenItems) {
  const ChannelEnv env({{"a", Direction::In, Level::Low, Value::boolean(false)},
                        {"b", Direction::In, Level::High, Value::integer(0)}});
  const InputDomain dom = InputDomain::standard(env, 2);
  EXPECT_EQ(dom.items().size(), 4U);
  EXPECT_EQ(dom.size(), 1U + 4U + 16U);
  std::vector<IoQueue> seen;
  dom.for_each_input([&](const IoQueue& q) {
    seen.push_back(q);
    return true;
  });
  ASSERT_EQ(seen.size(), dom.size());
  EXPECT_TRUE(seen[0].empty());
  EXPECT_EQ(seen[1], (IoQueue{{"a", F}}));
  EXPECT_EQ(seen[2], (IoQueue{{"a", T}}));
  EXPECT_EQ(seen[5], (IoQueue{{"a", F}, {"a", F}}));
}

TEST(Domain, AlphabetSpec) {
  InputDomain dom = InputDomain::standard(ChannelEnv::running_example(), 2);
  apply_alphabet_spec(dom, "cH2=0,1,2;cL2=5");
  EXPECT_EQ(dom.alphabet.at("cH2").size(), 3U);
  EXPECT_EQ(dom.alphabet.at("cL2"), (std::vector<Value>{Value::integer(5)}));
  EXPECT_THROW(apply_alphabet_spec(dom, "cH1=3"), std::invalid_argument);
  EXPECT_THROW(apply_alphabet_spec(dom, "cH3=1"), std::invalid_argument);
  EXPECT_THROW(apply_alphabet_spec(dom, "cH1"), std::invalid_argument);
}

TEST(Domain, DefaultAssignmentsAreUniformPerKind) {
  const InputDomain dom = InputDomain::standard(ChannelEnv::running_example(), 2);
  const auto all = default_assignments(dom);
  // Two booleans for cH1 times two integers for cH2.
  ASSERT_EQ(all.size(), 4U);
  const ChannelEnv three_bools = testing::load_corpus("fig12a").env;
  for (const auto& d : default_assignments(InputDomain::standard(three_bools, 1))) {
    EXPECT_EQ(d.at("cH1"), d.at("cH2"));
    EXPECT_EQ(d.at("cH2"), d.at("cH3"));
  }
}

TEST(Tini, DirectLeak) {
  const CheckResult r = check(Property::Tini, "input h from cH1; output h to cL3");
  ASSERT_EQ(r.verdict, Verdict::Violated);
  ASSERT_TRUE(r.witness && r.witness->other_input);
  const std::set<IoQueue> pair{r.witness->input, *r.witness->other_input};
  EXPECT_EQ(pair, (std::set<IoQueue>{{{"cH1", T}}, {{"cH1", F}}}));
}

TEST(Tini, SkipHoldsVacuously) {
  for (Property p : {Property::Tini, Property::Tsni, Property::Ri, Property::Di}) {
    const CheckResult r = check(p, "skip");
    EXPECT_EQ(r.verdict, Verdict::Holds) << to_string(p);
    EXPECT_NE(r.bounds.find("K=3"), std::string::npos);
  }
}

TEST(Tini, Fig12aHolds) {
  const Corpus f = corpus("fig12a");
  EXPECT_EQ(check_tini(f.sys, f.dom).verdict, Verdict::Holds);
}

TEST(Tsni, TerminationChannel) {
  const CheckResult r = check(Property::Tsni, "input h from cH1; if h then {while T do skip} else skip");
  ASSERT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(check(Property::Tini, "input h from cH1; if h then {while T do skip} else skip").verdict, Verdict::Holds);
}

TEST(Tsni, Fig12aHolds) {
  const Corpus f = corpus("fig12a");
  EXPECT_EQ(check_tsni(f.sys, f.dom).verdict, Verdict::Holds);
}

TEST(Ri, Fig12aViolated) {
  const Corpus f = corpus("fig12a");
  const CheckResult r = check_ri(f.sys, f.dom);
  ASSERT_EQ(r.verdict, Verdict::Violated);
  const IoQueue& w = r.witness->input;
  ASSERT_EQ(w.size(), 3U);
  EXPECT_EQ(w[0], (IoItem{"cH1", T}));
  EXPECT_EQ(w[1].channel, "cL1");
  EXPECT_EQ(w[2].channel, "cH2");
  EXPECT_TRUE(confirm_witness(f.sys, f.dom, *r.witness));
}

TEST(Ri, Fig12bHolds) {
  const Corpus f = corpus("fig12b");
  EXPECT_EQ(check_ri(f.sys, f.dom).verdict, Verdict::Holds);
}

TEST(Ri, NoHighInputsHolds) {
  EXPECT_EQ(check(Property::Ri, "input l from cL2; output l + 1 to cL3").verdict, Verdict::Holds);
}

TEST(Di, Fig12bViolated) {
  const Corpus f = corpus("fig12b");
  const CheckResult r = check_di(f.sys, f.dom);
  ASSERT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.witness->input, (IoQueue{{"cH1", T}, {"cH2", T}, {"cL1", Value::integer(0)}}));
  EXPECT_EQ(r.witness->deleted_index, 1U);
  EXPECT_TRUE(confirm_witness(f.sys, f.dom, *r.witness));
}

TEST(Di, NoHighInputsHolds) {
  EXPECT_EQ(check(Property::Di, "input l from cL2; output l to cL3").verdict, Verdict::Holds);
}

TEST(Di, RunningExampleAtFourIsViolated) {
  const auto c = testing::load_corpus("fig8");
  InputDomain dom = InputDomain::standard(c.env, 4);
  apply_alphabet_spec(dom, "cH2=0,1,2;cL2=0,1,2");
  const System sys = standalone_system(c.program, 10000);
  const CheckResult r = check_di(sys, dom);
  ASSERT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.witness->input, (IoQueue{{"cH1", F}, {"cL1", F}, {"cL2", Value::integer(0)}, {"cH2", Value::integer(1)}}));
  EXPECT_EQ(r.witness->deleted_index, 3U);
  EXPECT_TRUE(confirm_witness(sys, dom, *r.witness));
}

TEST(Tini, RunningExampleLeaksAtFour) {
  const auto c = testing::load_corpus("fig8");
  const InputDomain dom = InputDomain::standard(c.env, 4);
  const System sys = standalone_system(c.program, 10000);
  EXPECT_EQ(check_tini(sys, InputDomain::standard(c.env, 3)).verdict, Verdict::Holds);
  const CheckResult r = check_tini(sys, dom);
  ASSERT_EQ(r.verdict, Verdict::Violated);
  EXPECT_TRUE(confirm_witness(sys, dom, *r.witness));
}

TEST(Oracle, InconclusiveAboveTheCap) {
  OracleOptions opt;
  opt.max_inputs = 10;
  const CheckResult r =
      check_property(Property::Tini, parse_program("skip"), InputDomain::standard(ChannelEnv::running_example(), 3), opt);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(Witness, TamperedWitnessIsNotConfirmed) {
  const Corpus a = corpus("fig12a");
  Witness w = *check_ri(a.sys, a.dom).witness;
  w.input = {{"cH1", F}, {"cL1", Value::integer(0)}, {"cH3", F}};
  EXPECT_FALSE(confirm_witness(a.sys, a.dom, w));

  const Corpus b = corpus("fig12b");
  Witness d = *check_di(b.sys, b.dom).witness;
  d.deleted_index = 2;  // a low item
  EXPECT_FALSE(confirm_witness(b.sys, b.dom, d));

  Witness t = *check_tini(standalone_system(parse_program("input h from cH1; output h to cL3"), 100),
                          InputDomain::standard(ChannelEnv::running_example(), 1))
                   .witness;
  t.other_input = t.input;
  EXPECT_FALSE(confirm_witness(standalone_system(parse_program("input h from cH1; output h to cL3"), 100),
                               InputDomain::standard(ChannelEnv::running_example(), 1), t));
}

// A larger domain keeps every witness a witness.
TEST(Monotonicity, WitnessesSurviveLargerDomains) {
  for (const auto& [name, prop] : std::vector<std::pair<std::string, Property>>{
           {"fig12a", Property::Ri}, {"fig12b", Property::Di}, {"fig12b", Property::Tsni}}) {
    const Corpus small = corpus(name, 3);
    const CheckResult r = check_property(prop, small.sys, small.dom);
    ASSERT_EQ(r.verdict, Verdict::Violated) << name;
    InputDomain big = InputDomain::standard(small.c.env, 4);
    for (const Channel& ch : small.c.env.channels()) {
      if (ch.direction == Direction::In && ch.default_value.is_int()) big.alphabet[ch.name].push_back(Value::integer(2));
    }
    EXPECT_TRUE(confirm_witness(small.sys, big, *r.witness)) << name << " " << to_string(prop);
    EXPECT_EQ(check_property(prop, small.sys, big).verdict, Verdict::Violated) << name << " " << to_string(prop);
  }
}

// An independent RI test: run the program feeding a default whenever it asks
// for a high channel and the next low item of I whenever it asks for a low
// one. A successful guided run is a correction the search must also find.
bool guided_correction_exists(const Program& p, const ChannelEnv& env, const IoQueue& input, const IoQueue& output,
                              const std::map<std::string, Value>& defaults) {
  const IoQueue lows = restrict_to_level(input, Level::Low, env);
  std::size_t next_low = 0;
  std::map<std::string, std::size_t> highs_used;
  ProgConfig cfg{p, {}, {}, {}};
  for (int steps = 0; steps < 10000; ++steps) {
    if (cfg.prg->is_skip()) break;
    if (const auto* in = head_instruction(*cfg.prg).as<Stmt::Input>()) {
      const std::string& ch = in->channel.name;
      if (env.level_of(ch) == Level::High) {
        if (++highs_used[ch] > restrict_to_channel(input, ch).size()) return false;
        cfg.in = {{ch, defaults.at(ch)}};
      } else {
        if (next_low >= lows.size() || lows[next_low].channel != ch) return false;
        cfg.in = {lows[next_low++]};
      }
    }
    std::optional<ProgStep> s;
    try {
      s = step_program(cfg);
    } catch (const EvalError&) {
      return false;
    }
    if (!s) return false;
    cfg = s->next;
  }
  return cfg.prg->is_skip() && next_low == lows.size() && low_eq(cfg.out, output, env);
}

TEST(CrossCheck, GuidedCorrectionsAgreeWithTheRiSearch) {
  for (const std::string& name : testing::corpus_names()) {
    const Corpus f = corpus(name);
    const CheckResult r = check_ri(f.sys, f.dom);
    bool guided_everywhere = true;
    for (const auto& defaults : default_assignments(f.dom)) {
      const System sys = f.sys;
      const ChannelEnv env = f.c.env.with_defaults(defaults);
      f.dom.for_each_input([&](const IoQueue& in) {
        const SystemRun run = sys(in, env);
        if (run.terminated() && !guided_correction_exists(f.c.program, env, in, run.output, defaults)) {
          guided_everywhere = false;
        }
        return true;
      });
    }
    if (guided_everywhere) {
      EXPECT_EQ(r.verdict, Verdict::Holds) << name;
    }
    if (r.verdict == Verdict::Violated) {
      const ChannelEnv env = f.c.env.with_defaults(r.witness->defaults);
      EXPECT_FALSE(guided_correction_exists(f.c.program, env, r.witness->input, r.witness->output, r.witness->defaults))
          << name;
    }
  }
}

TEST(Enforced, NiEnforcementMakesTheRunningExampleNonInterfering) {
  const auto c = testing::load_corpus("fig8");
  const InputDomain dom = InputDomain::standard(c.env, 4);
  EXPECT_EQ(check_tini(standalone_system(c.program, 10000), dom).verdict, Verdict::Violated);
  EXPECT_EQ(check_tini(enforced_system(c.program, ni_policy(), SchedulerSpec::lowest_index(), 20000), dom).verdict,
            Verdict::Holds);
}

TEST(Enforced, RiEnforcementRepairsFig12a) {
  const auto c = testing::load_corpus("fig12a");
  const InputDomain dom = InputDomain::standard(c.env, 3);
  EXPECT_EQ(check_ri(enforced_system(c.program, ri_policy(), SchedulerSpec::lowest_index(), 20000), dom).verdict,
            Verdict::Holds);
}

TEST(Enforced, OutOfOrderCompletionIsNotTermination) {
  const auto c = testing::load_corpus("fig12a");
  const System sys = enforced_system(c.program, di_policy(), SchedulerSpec::round_robin(), 20000);
  const Value zero = Value::integer(0);
  EXPECT_EQ(sys({{"cH1", T}, {"cL1", zero}, {"cH2", F}}, c.env).status, SystemRun::Status::Terminated);
  // The machine reads cH1 before cH2 here, so the run completes out of order.
  const RunResult r =
      run_enforced(c.program, Machine(c.env, di_policy()), {{"cH2", F}, {"cH1", T}, {"cL1", zero}},
                   RunOptions{SchedulerSpec::round_robin(), 20000, {}});
  EXPECT_EQ(r.outcome, RunOutcome::Completed);
  EXPECT_EQ(sys({{"cH2", F}, {"cH1", T}, {"cL1", zero}}, c.env).status, SystemRun::Status::NotTerminated);
}

TEST(Precision, Fig14cUnderRi) {
  const auto c = testing::load_corpus("fig14c");
  const PrecisionReport rep =
      check_precision(c.program, Machine(c.env, ri_policy()), InputDomain::standard(c.env, 3), ExploreOptions{}, 10000);
  EXPECT_TRUE(rep.ok);
  EXPECT_FALSE(rep.cases.empty());
  for (const PrecisionCase& pc : rep.cases) EXPECT_TRUE(pc.ok) << to_string(pc.input) << ": " << pc.detail;
}

TEST(Precision, Fig14cUnderSubDiIsNotPrecise) {
  const auto c = testing::load_corpus("fig14c");
  const PrecisionReport rep = check_precision(c.program, Machine(c.env, subdi_policy()),
                                              InputDomain::standard(c.env, 3), ExploreOptions{}, 10000);
  EXPECT_FALSE(rep.ok);
}

}  // namespace
}  // namespace ifcmr
