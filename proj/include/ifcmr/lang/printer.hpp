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

#include <string>

#include "ifcmr/lang/ast.hpp"

namespace ifcmr {

// Output re-parses to an equal tree. Sequences nested on the left are
// wrapped in braces and a missing else prints as `else skip`.
std::string to_source(const Stmt& s);
std::string to_source(const Expr& e);
std::string to_source(const Predicate& p);

// Single-line rendering, used for labels and error messages.
std::string to_source_inline(const Stmt& s);

}  // namespace ifcmr
