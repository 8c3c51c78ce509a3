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

#include "ifcmr/em/scheduler.hpp"

#include <random>
#include <tuple>

namespace ifcmr {
namespace {

class LowestIndexScheduler final : public Scheduler {
 public:
  std::size_t choose(const std::vector<TransitionLabel>&) override { return 0; }
};

// Actors are ordered executions first, then MAP, then REDUCE.
std::tuple<int, std::size_t> actor_of(const TransitionLabel& l) {
  switch (l.kind) {
    case TransitionLabel::Kind::Local:
      return {0, l.exec};
    case TransitionLabel::Kind::Mact:
    case TransitionLabel::Kind::MapStep:
      return {1, 0};
    case TransitionLabel::Kind::Ract:
    case TransitionLabel::Kind::ReduceStep:
      return {2, 0};
  }
  return {3, 0};
}

class RoundRobinScheduler final : public Scheduler {
 public:
  std::size_t choose(const std::vector<TransitionLabel>& enabled) override {
    // The next actor after the last one served, wrapping around.
    std::optional<std::size_t> after;
    std::optional<std::size_t> first;
    for (std::size_t k = 0; k < enabled.size(); ++k) {
      const auto actor = actor_of(enabled[k]);
      if (!first || actor < actor_of(enabled[*first])) first = k;
      if (last_ && actor > *last_ && (!after || actor < actor_of(enabled[*after]))) after = k;
    }
    std::size_t pick = after ? *after : *first;
    last_ = actor_of(enabled[pick]);

    // Among several activations, rotate over the requesting executions.
    const auto kind = enabled[pick].kind;
    if (kind == TransitionLabel::Kind::Mact || kind == TransitionLabel::Kind::Ract) {
      std::optional<std::size_t>& cursor = kind == TransitionLabel::Kind::Mact ? last_map_ : last_reduce_;
      std::optional<std::size_t> next;
      std::optional<std::size_t> lowest;
      for (std::size_t k = 0; k < enabled.size(); ++k) {
        if (enabled[k].kind != kind) continue;
        if (!lowest || enabled[k].exec < enabled[*lowest].exec) lowest = k;
        if (cursor && enabled[k].exec > *cursor && (!next || enabled[k].exec < enabled[*next].exec)) next = k;
      }
      pick = next ? *next : *lowest;
      cursor = enabled[pick].exec;
    }
    return pick;
  }

 private:
  std::optional<std::tuple<int, std::size_t>> last_;
  std::optional<std::size_t> last_map_;
  std::optional<std::size_t> last_reduce_;
};

class RandomScheduler final : public Scheduler {
 public:
  explicit RandomScheduler(std::uint64_t seed) : rng_(seed) {}
  // Plain modulo keeps the choice sequence identical across standard libraries.
  std::size_t choose(const std::vector<TransitionLabel>& enabled) override { return rng_() % enabled.size(); }

 private:
  std::mt19937_64 rng_;
};

bool same_transition(const TransitionLabel& want, const TransitionLabel& have) {
  if (want.kind != have.kind) return false;
  switch (want.kind) {
    case TransitionLabel::Kind::Local:
      return want.exec == have.exec && (!want.rule || want.rule == have.rule);
    case TransitionLabel::Kind::Mact:
    case TransitionLabel::Kind::Ract:
      return want.exec == have.exec && (want.channel.empty() || want.channel == have.channel);
    case TransitionLabel::Kind::MapStep:
    case TransitionLabel::Kind::ReduceStep:
      return !want.rule || want.rule == have.rule;
  }
  return false;
}

class ScriptedScheduler final : public Scheduler {
 public:
  explicit ScriptedScheduler(std::vector<TransitionLabel> script) : script_(std::move(script)) {}

  std::size_t choose(const std::vector<TransitionLabel>& enabled) override {
    const TransitionLabel& want = script_.at(pos_);
    for (std::size_t k = 0; k < enabled.size(); ++k) {
      if (same_transition(want, enabled[k])) {
        ++pos_;
        return k;
      }
    }
    std::vector<std::string> names;
    for (const auto& l : enabled) names.push_back(to_string(l));
    throw ReplayDivergence(pos_, to_string(want), std::move(names));
  }

  bool exhausted() const override { return pos_ >= script_.size(); }

 private:
  std::vector<TransitionLabel> script_;
  std::size_t pos_ = 0;
};

}  // namespace

ReplayDivergence::ReplayDivergence(std::size_t step, std::string expected, std::vector<std::string> enabled)
    : std::runtime_error("schedule diverges at step " + std::to_string(step) + ": " + expected + " is not enabled"),
      step_(step),
      expected_(std::move(expected)),
      enabled_(std::move(enabled)) {}

std::string_view to_string(SchedulerSpec::Kind k) {
  switch (k) {
    case SchedulerSpec::Kind::LowestIndex:
      return "lowest";
    case SchedulerSpec::Kind::RoundRobin:
      return "round-robin";
    case SchedulerSpec::Kind::SeededRandom:
      return "random";
    case SchedulerSpec::Kind::Scripted:
      return "scripted";
  }
  return "?";
}

std::optional<SchedulerSpec::Kind> parse_scheduler_kind(std::string_view s) {
  for (auto k : {SchedulerSpec::Kind::LowestIndex, SchedulerSpec::Kind::RoundRobin, SchedulerSpec::Kind::SeededRandom,
                 SchedulerSpec::Kind::Scripted}) {
    if (to_string(k) == s) return k;
  }
  if (s == "rr") return SchedulerSpec::Kind::RoundRobin;
  if (s == "seeded") return SchedulerSpec::Kind::SeededRandom;
  return std::nullopt;
}

std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec& spec) {
  switch (spec.kind) {
    case SchedulerSpec::Kind::LowestIndex:
      return std::make_unique<LowestIndexScheduler>();
    case SchedulerSpec::Kind::RoundRobin:
      return std::make_unique<RoundRobinScheduler>();
    case SchedulerSpec::Kind::SeededRandom:
      return std::make_unique<RandomScheduler>(spec.seed);
    case SchedulerSpec::Kind::Scripted:
      return std::make_unique<ScriptedScheduler>(spec.script);
  }
  return std::make_unique<LowestIndexScheduler>();
}

}  // namespace ifcmr
