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

#include "ifcmr/em/invariants.hpp"

namespace ifcmr {

std::optional<std::string> AttributionChecker::check(const EmConfig& before, const Transition& t) {
  ++checked_;
  std::optional<std::string> problem;
  auto flag = [&](std::string msg) {
    if (!problem) problem = msg;
    violations_.push_back(std::move(msg));
  };
  const std::string where = " at " + to_string(t.label);
  for (const Event& e : t.events) {
    const Channel* ch = env_.find(e.channel);
    switch (e.kind) {
      case Event::Kind::GlobalRead:
        if (ch && ch->level == Level::High && e.exec >= 1) {
          ++high_reads_by_low_;
          if (high_reads_only_by_zero_) flag("high global read for execution " + std::to_string(e.exec) + where);
        }
        break;
      case Event::Kind::Delivered:
        if (ch && ch->level == Level::High && e.exec == 1 && e.value != ch->default_value) {
          flag("execution 1 received " + to_string(IoItem{e.channel, e.value}) + where);
        }
        break;
      case Event::Kind::GlobalWrite:
        if (ch && ch->level == Level::High && e.exec != 0) {
          flag("high output attributed to execution " + std::to_string(e.exec) + where);
        }
        if (ch && ch->level == Level::Low && e.exec != 1) {
          flag("low output attributed to execution " + std::to_string(e.exec) + where);
        }
        break;
      case Event::Kind::Woken: {
        const LocalExec& x = t.next.ex[e.exec];
        if (x.signal || x.state != ExecState::Executing) flag("execution " + std::to_string(e.exec) + " woken with a signal" + where);
        break;
      }
      default:
        break;
    }
  }
  // S -> E only through a wake, and always with the signal cleared.
  for (std::size_t i = 0; i < before.ex.size(); ++i) {
    if (before.ex[i].state == ExecState::Sleeping && t.next.ex[i].state == ExecState::Executing && t.next.ex[i].signal) {
      flag("execution " + std::to_string(i) + " resumed with a pending signal" + where);
    }
  }
  return problem;
}

bool forbids_high_reads_by_low(const std::string& policy_name) {
  return policy_name == "ni" || policy_name == "di" || policy_name == "subdi";
}

}  // namespace ifcmr
