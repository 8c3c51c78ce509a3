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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifcmr/lang/ast.hpp"

namespace ifcmr {

// A set of privileges, as a bit mask over Privilege.
using PrivCell = std::uint8_t;

inline constexpr PrivCell kNoPrivilege = 0;
inline constexpr PrivCell kAsk = static_cast<PrivCell>(Privilege::Ask);
inline constexpr PrivCell kTell = static_cast<PrivCell>(Privilege::Tell);
inline constexpr PrivCell kAskTell = kAsk | kTell;

// "at", "a", "t" or "-".
std::string cell_to_string(PrivCell c);
std::optional<PrivCell> parse_cell(std::string_view text);

// Privileges of every execution on a fixed list of channels. Executions
// are columns, added in index order.
class PrivTable {
 public:
  PrivTable() = default;
  explicit PrivTable(std::vector<std::string> channels);

  const std::vector<std::string>& channels() const { return *channels_; }
  std::size_t executions() const { return columns_.size(); }

  // `column` holds one cell per channel, in channels() order.
  void add_execution(std::vector<PrivCell> column);

  // Executions beyond the table hold no privileges.
  PrivCell cell(std::size_t exec, std::string_view channel) const;
  bool has(std::size_t exec, std::string_view channel, Privilege p) const {
    return (cell(exec, channel) & static_cast<PrivCell>(p)) != 0;
  }

  const std::vector<PrivCell>& column(std::size_t exec) const { return columns_.at(exec); }

  std::size_t hash() const;
  bool operator==(const PrivTable& other) const;

 private:
  std::shared_ptr<const std::vector<std::string>> channels_ = std::make_shared<const std::vector<std::string>>();
  std::vector<std::vector<PrivCell>> columns_;
};

}  // namespace ifcmr
