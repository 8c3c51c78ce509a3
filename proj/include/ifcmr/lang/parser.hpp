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

#include <stdexcept>
#include <string>
#include <string_view>

#include "ifcmr/lang/ast.hpp"

namespace ifcmr {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

enum class Dialect {
  Program,  // controlled programs
  Handler,  // MAP/REDUCE handler templates
};

// Concrete syntax:
//
//   stmts := stmt (';' stmt)* [';']
//   stmt  := 'skip' | x ':=' e | '{' stmts '}'
//          | 'if' e 'then' body ['else' body] | 'while' e 'do' body
//          | 'input' x 'from' ch | 'output' e 'to' ch
//   body  := '{' stmts '}' | stmt
//
// Handlers additionally accept map(e, ch, pred), wake(pred),
// clone(pred, TM, TR), retrieve x from e on ch, clean(ch, pred) and the
// expressions i, val_def, default(ch), a/t in T_M|T_R[e][ch], LVL[ch] == H|L.
// Comments run from '//' or '#' to the end of the line.
StmtPtr parse(std::string_view source, Dialect dialect = Dialect::Program);
ExprPtr parse_expr(std::string_view source, Dialect dialect = Dialect::Program);

inline Program parse_program(std::string_view source) { return parse(source, Dialect::Program); }

// Throws std::runtime_error naming the offending channel when the program
// reads from a non-input channel, writes to a non-output channel, or names
// an undeclared one.
void validate_channels(const Stmt& program, const ChannelEnv& env);

}  // namespace ifcmr
