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

#include "ifcmr/policy/policy.hpp"

#include "ifcmr/lang/parser.hpp"
#include "ifcmr/lang/printer.hpp"

namespace ifcmr {
namespace {

// MAP for RI; SubDI uses it too.
constexpr std::string_view kRiMap = R"(
if a in T_M[i][c] then {
  input x from c;
  map(x, c, canTell(c));
  map(val_def, c, !canTell(c));
  wake(isReady(c))
}
)";

// A request without ask or tell is answered with the default value.
constexpr std::string_view kNiMap = R"(
if a in T_M[i][c] then {
  input x from c;
  map(x, c, canTell(c));
  map(val_def, c, !canTell(c));
  wake(isReady(c))
} else {
  if !(t in T_M[i][c]) then {
    map(val_def, c, identical(i));
    wake(identical(i))
  }
}
)";

// Execution 0 is cloned on every high request; the clone only ever sees
// default values on high channels.
constexpr std::string_view kDiMap = R"(
if LVL[c] == H && i == 0 then {
  clone(identical(i), PRIV_TM, PRIV_TR)
};
if a in T_M[i][c] then {
  if t in T_M[i][c] then {
    input x from c;
    map(x, c, canTell(c));
    map(val_def, c, !canTell(c));
    wake(isReady(c))
  } else {
    map(val_def, c, identical(i));
    wake(identical(i))
  }
}
)";

constexpr std::string_view kReduce = R"(
x := val_def;
if a in T_R[i][c] then {
  retrieve x from i on c
};
if t in T_R[i][c] then {
  output x to c
};
clean(c, identical(i));
wake(identical(i))
)";

PrivTemplate by_level(PrivCell high, PrivCell low) { return PrivTemplate{high, low, {}}; }

PolicyConfig make_policy(std::string name, std::string description, std::vector<PrivTemplate> tm,
                         std::vector<PrivTemplate> tr, std::string_view map_src) {
  PolicyConfig p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.map_columns = std::move(tm);
  p.reduce_columns = std::move(tr);
  p.map_handler = parse(map_src, Dialect::Handler);
  p.reduce_handler = parse(kReduce, Dialect::Handler);
  return p;
}

std::vector<PrivTemplate> standard_reduce() { return {by_level(kAskTell, kNoPrivilege), by_level(kNoPrivilege, kAskTell)}; }

}  // namespace

PrivCell PrivTemplate::cell_for(const Channel& ch) const {
  if (auto it = overrides.find(ch.name); it != overrides.end()) return it->second;
  const std::optional<PrivCell>& c = ch.level == Level::High ? high : low;
  if (!c) {
    throw PolicyError("privilege template has no entry for channel '" + ch.name + "' (level " +
                      std::string(to_string(ch.level)) + ")");
  }
  return *c;
}

const PolicyConfig& ri_policy() {
  static const PolicyConfig p = make_policy(
      "ri", "removal of inputs", {by_level(kAskTell, kTell), by_level(kAsk, kAskTell)}, standard_reduce(), kRiMap);
  return p;
}

const PolicyConfig& ni_policy() {
  static const PolicyConfig p = make_policy("ni", "non-interference",
                                            {by_level(kAskTell, kTell), by_level(kNoPrivilege, kAskTell)},
                                            standard_reduce(), kNiMap);
  return p;
}

const PolicyConfig& di_policy() {
  static const PolicyConfig p = [] {
    PolicyConfig d = make_policy("di", "deletion of inputs", {by_level(kAskTell, kTell), by_level(kAsk, kAskTell)},
                                 standard_reduce(), kDiMap);
    d.clone_templates["PRIV_TM"] = by_level(kAsk, kTell);
    d.clone_templates["PRIV_TR"] = by_level(kNoPrivilege, kNoPrivilege);
    return d;
  }();
  return p;
}

const PolicyConfig& subdi_policy() {
  static const PolicyConfig p =
      make_policy("subdi", "RI handler over the NI tables (stricter than DI)",
                  {by_level(kAskTell, kTell), by_level(kNoPrivilege, kAskTell)}, standard_reduce(), kRiMap);
  return p;
}

std::optional<PolicyConfig> shipped_policy(std::string_view name) {
  if (name == "ni") return ni_policy();
  if (name == "ri") return ri_policy();
  if (name == "di") return di_policy();
  if (name == "subdi") return subdi_policy();
  return std::nullopt;
}

std::vector<std::string> shipped_policy_names() { return {"ni", "ri", "di", "subdi"}; }

std::vector<PrivTemplate> variant_reduce_columns() {
  return {by_level(kAskTell, kNoPrivilege), by_level(kAskTell, kAskTell)};
}

std::vector<PrivCell> template_column(const PrivTemplate& t, const ChannelEnv& env, Direction d) {
  std::vector<PrivCell> col;
  for (const Channel& ch : env.channels()) {
    if (ch.direction == d) col.push_back(t.cell_for(ch));
  }
  return col;
}

namespace {

PrivTable build_table(const std::vector<PrivTemplate>& cols, const ChannelEnv& env, Direction d) {
  PrivTable table(env.names(d));
  for (const PrivTemplate& t : cols) table.add_execution(template_column(t, env, d));
  return table;
}

void lint_expr(const Expr& e, HandlerKind kind, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Not>) {
          lint_expr(*n.operand, kind, out);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          lint_expr(*n.lhs, kind, out);
          lint_expr(*n.rhs, kind, out);
        } else if constexpr (std::is_same_v<T, Expr::HasPrivilege>) {
          lint_expr(*n.exec, kind, out);
        }
      },
      e.node);
}

void lint_stmt(const Stmt& s, HandlerKind kind, const PolicyConfig* policy, std::vector<std::string>& out) {
  const bool is_map = kind == HandlerKind::Map;
  auto reject = [&](std::string_view what) {
    out.push_back(std::string(what) + " is not available in " + (is_map ? "MAP" : "REDUCE") + ": '" +
                  to_source_inline(s) + "'");
  };
  auto check_template = [&](const std::string& name) {
    if (policy != nullptr && policy->clone_templates.count(name) == 0) {
      out.push_back("clone refers to undefined privilege template '" + name + "'");
    }
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Assign>) {
          lint_expr(*n.value, kind, out);
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          lint_stmt(*n.first, kind, policy, out);
          lint_stmt(*n.second, kind, policy, out);
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          lint_expr(*n.cond, kind, out);
          lint_stmt(*n.then_branch, kind, policy, out);
          lint_stmt(*n.else_branch, kind, policy, out);
        } else if constexpr (std::is_same_v<T, Stmt::While>) {
          lint_expr(*n.cond, kind, out);
          lint_stmt(*n.body, kind, policy, out);
        } else if constexpr (std::is_same_v<T, Stmt::Input> || std::is_same_v<T, Stmt::Map> ||
                             std::is_same_v<T, Stmt::Clone>) {
          if (!is_map) reject(std::is_same_v<T, Stmt::Input> ? "input" : std::is_same_v<T, Stmt::Map> ? "map" : "clone");
          if constexpr (std::is_same_v<T, Stmt::Clone>) {
            check_template(n.map_template);
            check_template(n.reduce_template);
          }
        } else if constexpr (std::is_same_v<T, Stmt::Output> || std::is_same_v<T, Stmt::Retrieve> ||
                             std::is_same_v<T, Stmt::Clean>) {
          if (is_map) {
            reject(std::is_same_v<T, Stmt::Output> ? "output" : std::is_same_v<T, Stmt::Retrieve> ? "retrieve" : "clean");
          }
        }
      },
      s.node);
}

}  // namespace

PrivTable initial_map_table(const PolicyConfig& p, const ChannelEnv& env) {
  return build_table(p.map_columns, env, Direction::In);
}

PrivTable initial_reduce_table(const PolicyConfig& p, const ChannelEnv& env) {
  return build_table(p.reduce_columns, env, Direction::Out);
}

std::vector<std::string> lint_handler(const Stmt& handler, HandlerKind kind, const PolicyConfig* policy) {
  std::vector<std::string> out;
  lint_stmt(handler, kind, policy, out);
  return out;
}

std::vector<std::string> lint_policy(const PolicyConfig& p, const ChannelEnv* env) {
  std::vector<std::string> out;
  if (p.name.empty()) out.push_back("policy has no name");
  if (p.map_columns.empty()) out.push_back("policy declares no executions");
  if (p.map_columns.size() != p.reduce_columns.size()) {
    out.push_back("T_M has " + std::to_string(p.map_columns.size()) + " columns but T_R has " +
                  std::to_string(p.reduce_columns.size()));
  }
  if (!p.map_handler || !p.reduce_handler) {
    out.push_back("policy is missing a handler");
    return out;
  }
  for (auto& msg : lint_handler(*p.map_handler, HandlerKind::Map, &p)) out.push_back(std::move(msg));
  for (auto& msg : lint_handler(*p.reduce_handler, HandlerKind::Reduce, &p)) out.push_back(std::move(msg));
  if (env != nullptr) {
    auto cover = [&](const PrivTemplate& t, Direction d, const std::string& what) {
      try {
        template_column(t, *env, d);
      } catch (const PolicyError& e) {
        out.push_back(what + ": " + e.what());
      }
    };
    for (std::size_t k = 0; k < p.map_columns.size(); ++k) cover(p.map_columns[k], Direction::In, "T_M column " + std::to_string(k));
    for (std::size_t k = 0; k < p.reduce_columns.size(); ++k) {
      cover(p.reduce_columns[k], Direction::Out, "T_R column " + std::to_string(k));
    }
    for (const auto& [name, t] : p.clone_templates) {
      cover(t, Direction::In, "template " + name + " (inputs)");
      cover(t, Direction::Out, "template " + name + " (outputs)");
    }
  }
  return out;
}

}  // namespace ifcmr
