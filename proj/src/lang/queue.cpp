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

#include "ifcmr/lang/queue.hpp"

namespace ifcmr {

Dequeued dequeue(const IoQueue& q, std::string_view channel) {
  auto it = std::find_if(q.begin(), q.end(), [&](const IoItem& item) { return item.channel == channel; });
  if (it == q.end()) return {std::nullopt, q};
  Dequeued d{it->value, {}};
  d.rest.reserve(q.size() - 1);
  d.rest.insert(d.rest.end(), q.begin(), it);
  d.rest.insert(d.rest.end(), std::next(it), q.end());
  return d;
}

IoQueue restrict_to_level(const IoQueue& q, Level level, const ChannelEnv& env) {
  return restrict(q, [&](const IoItem& item) { return env.level_of(item.channel) == level; });
}

IoQueue restrict_to_channel(const IoQueue& q, std::string_view channel) {
  return restrict(q, [&](const IoItem& item) { return item.channel == channel; });
}

bool low_eq(const IoQueue& a, const IoQueue& b, const ChannelEnv& env) {
  return restrict_to_level(a, Level::Low, env) == restrict_to_level(b, Level::Low, env);
}

bool channel_eq(const IoQueue& a, const IoQueue& b, std::string_view channel) {
  return restrict_to_channel(a, channel) == restrict_to_channel(b, channel);
}

bool channel_eq(const IoQueue& a, const IoQueue& b) { return split_by_channel(a) == split_by_channel(b); }

std::map<std::string, std::vector<Value>> split_by_channel(const IoQueue& q) {
  std::map<std::string, std::vector<Value>> out;
  for (const IoItem& item : q) out[item.channel].push_back(item.value);
  return out;
}

std::string to_string(const IoItem& item) { return "(" + item.channel + "," + to_string(item.value) + ")"; }

std::string to_string(const IoQueue& q) {
  if (q.empty()) return "[]";
  std::string s;
  for (const IoItem& item : q) s += to_string(item);
  return s;
}

}  // namespace ifcmr
