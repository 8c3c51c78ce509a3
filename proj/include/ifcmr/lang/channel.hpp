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

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ifcmr/lang/value.hpp"

namespace ifcmr {

enum class Direction : std::uint8_t { In, Out };
enum class Level : std::uint8_t { High, Low };

std::string_view to_string(Direction d);
std::string_view to_string(Level l);

struct Channel {
  std::string name;
  Direction direction = Direction::In;
  Level level = Level::Low;
  // Also fixes the kind of values the channel carries.
  Value default_value = Value::integer(0);

  bool operator==(const Channel&) const = default;
};

class ChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The declared channels, in declaration order.
class ChannelEnv {
 public:
  ChannelEnv() = default;
  explicit ChannelEnv(std::vector<Channel> channels);

  std::span<const Channel> channels() const { return channels_; }
  const Channel* find(std::string_view name) const;
  const Channel& at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  std::vector<std::string> names(Direction d) const;
  Level level_of(std::string_view name) const { return at(name).level; }

  // Same channels with the given defaults substituted (missing names keep theirs).
  ChannelEnv with_defaults(const std::map<std::string, Value>& defaults) const;

  bool operator==(const ChannelEnv&) const = default;

  // cH1, cH2 in/H; cL1, cL2 in/L; cH3 out/H; cL3 out/L. cH1 and cL1 carry
  // booleans, the rest integers.
  static ChannelEnv running_example();

 private:
  std::vector<Channel> channels_;
};

}  // namespace ifcmr
