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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ifcmr {

enum class ValueKind : std::uint8_t { Initial, Bool, Int };

// A program value: a boolean, a non-negative integer, or the initial value
// held by variables that were never assigned. The initial value reads as 0
// in arithmetic and as F in boolean positions.
class Value {
 public:
  constexpr Value() = default;

  static constexpr Value boolean(bool b) { return Value(ValueKind::Bool, b ? 1 : 0); }
  static constexpr Value integer(std::uint64_t n) { return Value(ValueKind::Int, n); }
  static constexpr Value initial() { return Value(); }

  constexpr ValueKind kind() const { return kind_; }
  constexpr bool is_bool() const { return kind_ == ValueKind::Bool; }
  constexpr bool is_int() const { return kind_ == ValueKind::Int; }
  constexpr bool is_initial() const { return kind_ == ValueKind::Initial; }

  // Raw payload; callers check the kind first.
  constexpr bool bool_value() const { return bits_ != 0; }
  constexpr std::uint64_t int_value() const { return bits_; }

  // The value as it leaves a memory: the initial value is sent as 0.
  constexpr Value settled() const { return is_initial() ? integer(0) : *this; }

  constexpr auto operator<=>(const Value&) const = default;
  constexpr bool operator==(const Value&) const = default;

  std::size_t hash() const {
    return static_cast<std::size_t>(bits_) * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(kind_);
  }

 private:
  constexpr Value(ValueKind kind, std::uint64_t bits) : kind_(kind), bits_(bits) {}

  ValueKind kind_ = ValueKind::Initial;
  std::uint64_t bits_ = 0;
};

// "T", "F", decimal digits; the initial value prints as "0".
std::string to_string(Value v);

// Accepts T/F/true/false and decimal integers.
std::optional<Value> parse_value(std::string_view text);

std::string_view kind_name(ValueKind kind);

}  // namespace ifcmr
