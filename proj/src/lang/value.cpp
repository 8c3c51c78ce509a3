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

#include "ifcmr/lang/value.hpp"

#include <charconv>

namespace ifcmr {

std::string to_string(Value v) {
  switch (v.kind()) {
    case ValueKind::Bool:
      return v.bool_value() ? "T" : "F";
    case ValueKind::Int:
      return std::to_string(v.int_value());
    case ValueKind::Initial:
      break;
  }
  return "0";
}

std::optional<Value> parse_value(std::string_view text) {
  if (text == "T" || text == "true") return Value::boolean(true);
  if (text == "F" || text == "false") return Value::boolean(false);
  std::uint64_t n = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, n);
  if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return Value::integer(n);
}

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Bool:
      return "bool";
    case ValueKind::Int:
      return "int";
    case ValueKind::Initial:
      break;
  }
  return "initial";
}

}  // namespace ifcmr
