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

#include "ifcmr/em/tables.hpp"

#include <algorithm>

#include "ifcmr/lang/channel.hpp"

namespace ifcmr {

std::string cell_to_string(PrivCell c) {
  switch (c & kAskTell) {
    case kAskTell:
      return "at";
    case kAsk:
      return "a";
    case kTell:
      return "t";
    default:
      return "-";
  }
}

std::optional<PrivCell> parse_cell(std::string_view text) {
  if (text == "-" || text == "") return kNoPrivilege;
  if (text == "a") return kAsk;
  if (text == "t") return kTell;
  if (text == "at" || text == "ta") return kAskTell;
  return std::nullopt;
}

PrivTable::PrivTable(std::vector<std::string> channels)
    : channels_(std::make_shared<const std::vector<std::string>>(std::move(channels))) {}

void PrivTable::add_execution(std::vector<PrivCell> column) {
  if (column.size() != channels_->size()) {
    throw ChannelError("privilege column has " + std::to_string(column.size()) + " cells for " +
                       std::to_string(channels_->size()) + " channels");
  }
  columns_.push_back(std::move(column));
}

PrivCell PrivTable::cell(std::size_t exec, std::string_view channel) const {
  auto it = std::find(channels_->begin(), channels_->end(), channel);
  if (it == channels_->end()) throw ChannelError("channel '" + std::string(channel) + "' is not in the table");
  if (exec >= columns_.size()) return kNoPrivilege;
  return columns_[exec][static_cast<std::size_t>(it - channels_->begin())];
}

std::size_t PrivTable::hash() const {
  std::size_t h = columns_.size();
  for (const auto& col : columns_) {
    for (PrivCell c : col) h = h * 31 + c;
  }
  return h;
}

bool PrivTable::operator==(const PrivTable& other) const {
  return columns_ == other.columns_ && (channels_ == other.channels_ || *channels_ == *other.channels_);
}

}  // namespace ifcmr
