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

#include "corpus.hpp"
#include "generators.hpp"
#include "ifcmr/lang/interpreter.hpp"
#include "ifcmr/lang/parser.hpp"

namespace ifcmr {
namespace {

const Value T = Value::boolean(true);
const Value F = Value::boolean(false);
Value I(std::uint64_t n) { return Value::integer(n); }

Memory mem(std::initializer_list<std::pair<std::string, Value>> bindings) {
  Memory m;
  for (const auto& [k, v] : bindings) m.set(k, v);
  return m;
}

TEST(Eval, Negation) { EXPECT_EQ(eval_expr(mem({{"h1", T}}), *parse_expr("!h1")), F); }

TEST(Eval, SumFromRunningExample) { EXPECT_EQ(eval_expr(mem({{"l2", I(2)}, {"h2", I(0)}}), *parse_expr("l2 + h2")), I(2)); }

TEST(Eval, UnboundVariableReadsInitial) {
  EXPECT_EQ(eval_expr(Memory{}, *parse_expr("x + 1")), I(1));
  EXPECT_FALSE(eval_condition(Memory{}, *parse_expr("x")));
  EXPECT_EQ(eval_expr(Memory{}, *parse_expr("!x")), T);
}

TEST(Eval, MonusStopsAtZero) { EXPECT_EQ(eval_expr(Memory{}, *parse_expr("2 - 5")), I(0)); }

TEST(Eval, KindErrors) {
  EXPECT_THROW(eval_expr(mem({{"n", I(3)}}), *parse_expr("!n")), EvalError);
  EXPECT_THROW(eval_expr(Memory{}, *parse_expr("T + 1")), EvalError);
  EXPECT_THROW(eval_condition(mem({{"n", I(3)}}), *parse_expr("n")), EvalError);
}

TEST(Memory, BindingInitialUnbinds) {
  Memory a;
  a.set("x", I(1));
  a.set("x", Value::initial());
  EXPECT_EQ(a, Memory{});
  EXPECT_TRUE(a.empty());
}

TEST(Step, SkipRule) {
  const ProgConfig cfg{parse_program("skip; x := 1"), {}, {}, {}};
  const auto s = step_program(cfg);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->rule, Rule::Skip);
  EXPECT_TRUE(equal(s->next.prg, parse_program("x := 1")));
}

TEST(Step, InputFromHead) {
  const ProgConfig cfg{parse_program("input x from cH1"), {}, {{"cH1", T}}, {}};
  const auto s = step_program(cfg);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->rule, Rule::Inp);
  EXPECT_TRUE(s->next.prg->is_skip());
  EXPECT_EQ(s->next.mem.get("x"), T);
  EXPECT_TRUE(s->next.in.empty());
}

TEST(Step, InputBlockedWhenHeadIsOnAnotherChannel) {
  const ProgConfig cfg{parse_program("input x from cH1"), {}, {{"cL1", F}, {"cH1", T}}, {}};
  EXPECT_FALSE(step_program(cfg).has_value());
}

TEST(Step, TerminatedProgramHasNoStep) { EXPECT_FALSE(step_program({ast::skip(), {}, {}, {}}).has_value()); }

TEST(Run, RunningExampleThreeItems) {
  const auto c = testing::load_corpus("fig8");
  const Outcome o = run_program(c.program, {{"cH1", T}, {"cL1", F}, {"cL2", I(2)}}, 1000);
  EXPECT_EQ(o.kind, Outcome::Kind::Terminated);
  EXPECT_EQ(o.output, (IoQueue{{"cH3", I(2)}, {"cL3", I(2)}}));
}

TEST(Run, RunningExampleLeavesHighItem) {
  const auto c = testing::load_corpus("fig8");
  const Outcome o = run_program(c.program, testing::fig9_input(), 1000);
  EXPECT_EQ(o.kind, Outcome::Kind::FinishedWithResidual);
  EXPECT_EQ(o.output, (IoQueue{{"cH3", I(2)}, {"cL3", I(2)}}));
  EXPECT_EQ(o.residual, (IoQueue{{"cH2", I(7)}}));
}

TEST(Run, LoopRunsOutOfBudget) {
  const Outcome o = run_program(parse_program("while T do skip"), {{"cH1", T}}, 100);
  EXPECT_EQ(o.kind, Outcome::Kind::BudgetExceeded);
  EXPECT_EQ(o.steps, 100U);
}

TEST(Run, KindErrorIsAFault) {
  const Outcome o = run_program(parse_program("input x from cL2; if x then skip"), {{"cL2", I(1)}}, 100);
  EXPECT_EQ(o.kind, Outcome::Kind::Stuck);
  EXPECT_TRUE(o.fault);
}

TEST(Run, BlockedInputIsStuckWithoutFault) {
  const Outcome o = run_program(parse_program("input x from cL1"), {}, 100);
  EXPECT_EQ(o.kind, Outcome::Kind::Stuck);
  EXPECT_FALSE(o.fault);
}

TEST(Run, InitialValueIsSentAsZero) {
  const Outcome o = run_program(parse_program("output y to cL3"), {}, 100);
  EXPECT_EQ(o.output, (IoQueue{{"cL3", I(0)}}));
}

TEST(Run, DeterministicOnGeneratedPrograms) {
  const ChannelEnv env = ChannelEnv::running_example();
  testing::ProgramGenerator gen(99, env);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Program p = gen.program(3);
    const IoQueue in = testing::random_input(rng, env, 4);
    const Outcome a = run_program(p, in, 5000);
    const Outcome b = run_program(p, in, 5000);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(a.residual, b.residual);
    EXPECT_EQ(a.steps, b.steps);
  }
}

// Every INP step consumes exactly the head item.
TEST(Run, InputOnlyConsumesTheHead) {
  const ChannelEnv env = ChannelEnv::running_example();
  testing::ProgramGenerator gen(3, env);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    ProgConfig cfg{gen.program(3), {}, testing::random_input(rng, env, 5), {}};
    for (int steps = 0; steps < 2000; ++steps) {
      std::optional<ProgStep> s;
      try {
        s = step_program(cfg);
      } catch (const EvalError&) {
        break;
      }
      if (!s) break;
      if (s->rule == Rule::Inp) {
        ASSERT_FALSE(cfg.in.empty());
        EXPECT_EQ(s->next.in, IoQueue(cfg.in.begin() + 1, cfg.in.end()));
      } else {
        EXPECT_EQ(s->next.in, cfg.in);
      }
      cfg = s->next;
    }
  }
}

}  // namespace
}  // namespace ifcmr
