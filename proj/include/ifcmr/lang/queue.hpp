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

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifcmr/lang/channel.hpp"
#include "ifcmr/lang/value.hpp"

namespace ifcmr {

struct IoItem {
  std::string channel;
  Value value;

  auto operator<=>(const IoItem&) const = default;
  bool operator==(const IoItem&) const = default;
};

// Front of the vector is the oldest item.
using IoQueue = std::vector<IoItem>;

struct Dequeued {
  std::optional<Value> value;  // empty when no item is on the channel
  IoQueue rest;                // the queue without that item
};

// Removes the first item on `channel`, wherever it sits in the queue.
Dequeued dequeue(const IoQueue& q, std::string_view channel);

template <typename Pred>
IoQueue restrict(const IoQueue& q, Pred keep) {
  IoQueue out;
  std::copy_if(q.begin(), q.end(), std::back_inserter(out), keep);
  return out;
}

IoQueue restrict_to_level(const IoQueue& q, Level level, const ChannelEnv& env);
IoQueue restrict_to_channel(const IoQueue& q, std::string_view channel);

// Equal projections on the low channels.
bool low_eq(const IoQueue& a, const IoQueue& b, const ChannelEnv& env);

// Equal projections on one channel.
bool channel_eq(const IoQueue& a, const IoQueue& b, std::string_view channel);

// Equal projections on every channel, i.e. equal up to cross-channel reordering.
bool channel_eq(const IoQueue& a, const IoQueue& b);

// Values per channel, in order.
std::map<std::string, std::vector<Value>> split_by_channel(const IoQueue& q);

std::string to_string(const IoItem& item);
std::string to_string(const IoQueue& q);

}  // namespace ifcmr
