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

#include "ifcmr/em/config.hpp"

#include <array>
#include <charconv>

namespace ifcmr {
namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_queue(const IoQueue& q) {
  std::size_t h = q.size();
  for (const IoItem& item : q) {
    h = mix(h, std::hash<std::string>{}(item.channel));
    h = mix(h, item.value.hash());
  }
  return h;
}

std::size_t hash_component(const Component& c) {
  std::size_t h = mix(c.prg->hash, c.mem.hash());
  return mix(h, c.requester ? *c.requester + 1 : 0);
}

}  // namespace

std::string_view to_string(ExecState s) { return s == ExecState::Executing ? "E" : "S"; }

bool operator==(const LocalExec& a, const LocalExec& b) {
  return a.state == b.state && a.signal == b.signal && equal(a.prg, b.prg) && a.mem == b.mem && a.in == b.in &&
         a.out == b.out;
}

bool operator==(const Component& a, const Component& b) {
  return equal(a.prg, b.prg) && a.mem == b.mem && a.requester == b.requester && a.channel == b.channel;
}

bool operator==(const EmConfig& a, const EmConfig& b) {
  return a.ex == b.ex && a.map == b.map && a.red == b.red && a.in == b.in && a.out == b.out && a.t_m == b.t_m &&
         a.t_r == b.t_r;
}

std::size_t EmConfig::hash() const {
  std::size_t h = mix(t_m.hash(), t_r.hash());
  h = mix(h, hash_component(map));
  h = mix(h, hash_component(red));
  h = mix(h, hash_queue(in));
  h = mix(h, hash_queue(out));
  for (const LocalExec& e : ex) {
    h = mix(h, static_cast<std::size_t>(e.state));
    h = mix(h, e.signal ? std::hash<std::string>{}(*e.signal) : 0);
    h = mix(h, e.prg->hash);
    h = mix(h, e.mem.hash());
    h = mix(h, hash_queue(e.in));
    h = mix(h, hash_queue(e.out));
  }
  return h;
}

std::string to_string(const TransitionLabel& l) {
  const std::string rule = l.rule ? std::string(to_string(*l.rule)) : "";
  switch (l.kind) {
    case TransitionLabel::Kind::Local:
      return "L" + std::to_string(l.exec) + ":" + rule;
    case TransitionLabel::Kind::Mact:
      return "MACT" + std::to_string(l.exec) + ":" + l.channel;
    case TransitionLabel::Kind::Ract:
      return "RACT" + std::to_string(l.exec) + ":" + l.channel;
    case TransitionLabel::Kind::MapStep:
      return "MAP:" + rule;
    case TransitionLabel::Kind::ReduceStep:
      return "RED:" + rule;
  }
  return "?";
}

std::optional<TransitionLabel> parse_label(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = text.substr(colon + 1);
  TransitionLabel l;
  auto index = [&](std::string_view digits) -> bool {
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), l.exec);
    return !digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size();
  };
  auto rule = [&]() -> bool {
    if (tail.empty()) return true;
    l.rule = parse_rule(tail);
    return l.rule.has_value();
  };
  if (head == "MAP") {
    l.kind = TransitionLabel::Kind::MapStep;
    return rule() ? std::optional(l) : std::nullopt;
  }
  if (head == "RED") {
    l.kind = TransitionLabel::Kind::ReduceStep;
    return rule() ? std::optional(l) : std::nullopt;
  }
  if (head.substr(0, 4) == "MACT" || head.substr(0, 4) == "RACT") {
    l.kind = head[0] == 'M' ? TransitionLabel::Kind::Mact : TransitionLabel::Kind::Ract;
    if (!index(head.substr(4)) || tail.empty()) return std::nullopt;
    l.channel = std::string(tail);
    return l;
  }
  if (head.substr(0, 1) == "L") {
    l.kind = TransitionLabel::Kind::Local;
    if (!index(head.substr(1)) || !rule()) return std::nullopt;
    return l;
  }
  return std::nullopt;
}

std::string_view to_string(Event::Kind k) {
  static constexpr std::array<std::string_view, 10> kNames = {
      "global_read", "global_write", "delivered", "woken", "slept",
      "cloned",      "cleaned",      "local_input", "local_output", "activated"};
  return kNames[static_cast<std::size_t>(k)];
}

}  // namespace ifcmr
