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

// Per-transition checks shared by the property tests and the acceptance run.

#include <optional>
#include <string>

#include "ifcmr/em/machine.hpp"

namespace ifcmr::testing {

// The frame of each kind of transition: what it may change.
inline std::optional<std::string> frame_violation(const EmConfig& a, const Transition& t) {
  const EmConfig& b = t.next;
  using K = TransitionLabel::Kind;
  const TransitionLabel& l = t.label;
  const bool map_side = l.kind == K::MapStep;
  const bool red_side = l.kind == K::ReduceStep;
  if (!(l.kind == K::MapStep || l.kind == K::Mact) && !(a.map == b.map)) return "MAP changed";
  if (!(l.kind == K::ReduceStep || l.kind == K::Ract) && !(a.red == b.red)) return "REDUCE changed";
  if (!map_side && a.in != b.in) return "global input changed";
  if (!red_side && a.out != b.out) return "global output changed";
  if (!map_side && !(a.t_m == b.t_m && a.t_r == b.t_r)) return "tables changed";
  if (!map_side && a.ex.size() != b.ex.size()) return "execution stack changed size";
  if (b.ex.size() < a.ex.size()) return "execution removed";
  if (b.t_m.executions() != b.ex.size() || b.t_r.executions() != b.ex.size()) return "table width differs from stack";
  if (map_side && b.ex.size() > a.ex.size() && l.rule != Rule::Clon) return "stack grew without CLON";

  for (std::size_t i = 0; i < a.ex.size(); ++i) {
    const LocalExec& x = a.ex[i];
    const LocalExec& y = b.ex[i];
    const std::string who = "execution " + std::to_string(i);
    switch (l.kind) {
      case K::Local:
        if (i != l.exec && !(x == y)) return who + " changed by another execution's step";
        break;
      case K::Mact:
      case K::Ract: {
        LocalExec z = x;
        if (i == l.exec) z.signal.reset();
        if (!(z == y)) return who + " changed beyond its signal on activation";
        break;
      }
      case K::MapStep:
        if (!equal(x.prg, y.prg) || !(x.mem == y.mem) || x.out != y.out) return who + " program, memory or output changed by MAP";
        break;
      case K::ReduceStep:
        if (!equal(x.prg, y.prg) || !(x.mem == y.mem) || x.in != y.in) return who + " program, memory or input changed by REDUCE";
        break;
    }
  }
  return std::nullopt;
}

// S -> E only with no pending signal; a pending signal only while asleep.
inline std::optional<std::string> hygiene_violation(const EmConfig& a, const Transition& t) {
  for (std::size_t i = 0; i < t.next.ex.size(); ++i) {
    const LocalExec& y = t.next.ex[i];
    if (y.signal && y.state != ExecState::Sleeping) return "execution " + std::to_string(i) + " runs with a signal";
    if (i < a.ex.size() && a.ex[i].state == ExecState::Sleeping && y.state == ExecState::Executing && y.signal) {
      return "execution " + std::to_string(i) + " woke with a signal";
    }
  }
  return std::nullopt;
}

}  // namespace ifcmr::testing
