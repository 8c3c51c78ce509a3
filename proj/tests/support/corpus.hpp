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

// Access to the fixture corpus shared by the test binaries.

#include <filesystem>
#include <string>
#include <vector>

#include "ifcmr/io/io.hpp"
#include "ifcmr/lang/parser.hpp"

namespace ifcmr::testing {

inline std::filesystem::path fixture_dir() { return IFCMR_FIXTURE_DIR; }

inline std::filesystem::path program_path(const std::string& name) {
  return fixture_dir() / "programs" / (name + ".ifc");
}

struct CorpusProgram {
  std::string name;
  std::string source;
  Program program;
  ChannelEnv env;
};

inline CorpusProgram load_corpus(const std::string& name) {
  CorpusProgram c;
  c.name = name;
  c.source = io::read_file(program_path(name));
  c.program = parse_program(c.source);
  c.env = io::load_channels(fixture_dir() / "programs" / (name + ".channels.json"));
  return c;
}

inline std::vector<std::string> corpus_names() { return {"fig8", "fig12a", "fig12b", "fig14c"}; }

// cH1=T, cL1=F, cL2=2, cH2=7.
inline IoQueue fig9_input() {
  return {{"cH1", Value::boolean(true)}, {"cL1", Value::boolean(false)}, {"cL2", Value::integer(2)},
          {"cH2", Value::integer(7)}};
}

// cH1=T, cL2=2, cH2=7.
inline IoQueue fig14c_input() {
  return {{"cH1", Value::boolean(true)}, {"cL2", Value::integer(2)}, {"cH2", Value::integer(7)}};
}

}  // namespace ifcmr::testing
