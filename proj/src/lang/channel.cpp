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

#include "ifcmr/lang/channel.hpp"

#include <algorithm>
#include <set>

namespace ifcmr {

std::string_view to_string(Direction d) { return d == Direction::In ? "in" : "out"; }

std::string_view to_string(Level l) { return l == Level::High ? "H" : "L"; }

ChannelEnv::ChannelEnv(std::vector<Channel> channels) : channels_(std::move(channels)) {
  std::set<std::string> seen;
  for (const Channel& ch : channels_) {
    if (ch.name.empty()) throw ChannelError("channel with an empty name");
    if (!seen.insert(ch.name).second) throw ChannelError("channel '" + ch.name + "' declared twice");
    if (ch.default_value.is_initial()) throw ChannelError("channel '" + ch.name + "' has no default value");
  }
}

const Channel* ChannelEnv::find(std::string_view name) const {
  auto it = std::find_if(channels_.begin(), channels_.end(), [&](const Channel& c) { return c.name == name; });
  return it == channels_.end() ? nullptr : &*it;
}

const Channel& ChannelEnv::at(std::string_view name) const {
  if (const Channel* c = find(name)) return *c;
  throw ChannelError("undeclared channel '" + std::string(name) + "'");
}

std::vector<std::string> ChannelEnv::names(Direction d) const {
  std::vector<std::string> out;
  for (const Channel& c : channels_) {
    if (c.direction == d) out.push_back(c.name);
  }
  return out;
}

ChannelEnv ChannelEnv::with_defaults(const std::map<std::string, Value>& defaults) const {
  std::vector<Channel> chans = channels_;
  for (Channel& c : chans) {
    if (auto it = defaults.find(c.name); it != defaults.end()) c.default_value = it->second;
  }
  return ChannelEnv(std::move(chans));
}

ChannelEnv ChannelEnv::running_example() {
  const Value f = Value::boolean(false);
  const Value zero = Value::integer(0);
  return ChannelEnv({
      {"cH1", Direction::In, Level::High, f},
      {"cH2", Direction::In, Level::High, zero},
      {"cL1", Direction::In, Level::Low, f},
      {"cL2", Direction::In, Level::Low, zero},
      {"cH3", Direction::Out, Level::High, zero},
      {"cL3", Direction::Out, Level::Low, zero},
  });
}

}  // namespace ifcmr
