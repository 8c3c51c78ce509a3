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

// Random programs for round-trip and fuzz tests. Generated programs are
// well-kinded by construction: boolean and integer variables are kept
// apart, and channels are used according to their kind and direction.

#include <random>
#include <string>
#include <vector>

#include "ifcmr/lang/ast.hpp"
#include "ifcmr/lang/channel.hpp"

namespace ifcmr::testing {

class ProgramGenerator {
 public:
  ProgramGenerator(std::uint64_t seed, ChannelEnv env) : rng_(seed), env_(std::move(env)) {
    for (const Channel& ch : env_.channels()) {
      auto& list = ch.default_value.is_bool() ? (ch.direction == Direction::In ? bool_in_ : bool_out_)
                                              : (ch.direction == Direction::In ? int_in_ : int_out_);
      list.push_back(ch.name);
    }
  }

  // Loops are bounded by a countdown so that programs terminate.
  Program program(int depth = 3) { return stmt(depth); }

  ExprPtr bool_expr(int depth) {
    const int pick = depth <= 0 ? roll(2) : roll(7);
    switch (pick) {
      case 0:
        return ast::boolean(roll(2) == 0);
      case 1:
        return ast::var(pick_of(kBoolVars));
      case 2:
        return ast::not_(bool_expr(depth - 1));
      case 3:
        return ast::binary(roll(2) == 0 ? BinaryOp::And : BinaryOp::Or, bool_expr(depth - 1), bool_expr(depth - 1));
      case 4:
        return ast::binary(BinaryOp::Lt, int_expr(depth - 1), int_expr(depth - 1));
      case 5:
        return ast::binary(BinaryOp::Eq, int_expr(depth - 1), int_expr(depth - 1));
      default:
        return ast::binary(BinaryOp::Eq, bool_expr(depth - 1), bool_expr(depth - 1));
    }
  }

  ExprPtr int_expr(int depth) {
    const int pick = depth <= 0 ? roll(2) : roll(4);
    switch (pick) {
      case 0:
        return ast::integer(static_cast<std::uint64_t>(roll(4)));
      case 1:
        return ast::var(pick_of(kIntVars));
      case 2:
        return ast::binary(BinaryOp::Add, int_expr(depth - 1), int_expr(depth - 1));
      default:
        return ast::binary(BinaryOp::Monus, int_expr(depth - 1), int_expr(depth - 1));
    }
  }

 private:
  static inline const std::vector<std::string> kBoolVars{"b1", "b2"};
  static inline const std::vector<std::string> kIntVars{"n1", "n2", "n3"};

  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  const std::string& pick_of(const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(roll(static_cast<int>(v.size())))];
  }

  StmtPtr stmt(int depth) {
    const int pick = depth <= 0 ? roll(5) : roll(9);
    switch (pick) {
      case 0:
        return ast::skip();
      case 1:
        return ast::assign(pick_of(kBoolVars), bool_expr(2));
      case 2:
        return ast::assign(pick_of(kIntVars), int_expr(2));
      case 3:
        if (!bool_in_.empty() && roll(2) == 0) return ast::input(pick_of(kBoolVars), ChannelRef::named(pick_of(bool_in_)));
        if (!int_in_.empty()) return ast::input(pick_of(kIntVars), ChannelRef::named(pick_of(int_in_)));
        return ast::skip();
      case 4:
        if (!int_out_.empty() && roll(2) == 0) return ast::output(int_expr(2), ChannelRef::named(pick_of(int_out_)));
        if (!bool_out_.empty()) return ast::output(bool_expr(2), ChannelRef::named(pick_of(bool_out_)));
        return ast::skip();
      case 5:
      case 6:
        return ast::seq(stmt(depth - 1), stmt(depth - 1));
      case 7:
        return ast::if_(bool_expr(2), stmt(depth - 1), stmt(depth - 1));
      default: {
        // k := m; while 0 < k do { body; k := k - 1 }
        const std::string k = "k" + std::to_string(counter_++);
        const StmtPtr body = ast::seq(stmt(depth - 1),
                                      ast::assign(k, ast::binary(BinaryOp::Monus, ast::var(k), ast::integer(1))));
        return ast::seq(ast::assign(k, ast::integer(static_cast<std::uint64_t>(roll(3)))),
                        ast::while_(ast::binary(BinaryOp::Lt, ast::integer(0), ast::var(k)), body));
      }
    }
  }

  std::mt19937_64 rng_;
  ChannelEnv env_;
  std::vector<std::string> bool_in_, int_in_, bool_out_, int_out_;
  int counter_ = 0;
};

// Random input over the input channels of `env`, values in {F,T} or {0..3}.
inline IoQueue random_input(std::mt19937_64& rng, const ChannelEnv& env, std::size_t max_len) {
  std::vector<const Channel*> ins;
  for (const Channel& ch : env.channels()) {
    if (ch.direction == Direction::In) ins.push_back(&ch);
  }
  IoQueue q;
  if (ins.empty()) return q;
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t k = 0; k < len; ++k) {
    const Channel& ch = *ins[std::uniform_int_distribution<std::size_t>(0, ins.size() - 1)(rng)];
    const auto n = std::uniform_int_distribution<std::uint64_t>(0, 3)(rng);
    q.push_back({ch.name, ch.default_value.is_bool() ? Value::boolean(n % 2 == 1) : Value::integer(n)});
  }
  return q;
}

}  // namespace ifcmr::testing
