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

#include "ifcmr/io/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "ifcmr/lang/parser.hpp"
#include "ifcmr/lang/printer.hpp"

namespace ifcmr::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw LoadError(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key, const char* what) {
  const Json& f = field(j, key, what);
  if (!f.is_string()) throw LoadError(std::string(what) + ": \"" + key + "\" must be a string");
  return f.get<std::string>();
}

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw LoadError(origin + ": " + e.what());
  }
}

Value checked_item_value(const ChannelEnv& env, const std::string& channel, Value v, const std::string& where) {
  const Channel* ch = env.find(channel);
  if (ch == nullptr) throw LoadError(where + ": undeclared channel '" + channel + "'");
  if (ch->direction != Direction::In) throw LoadError(where + ": '" + channel + "' is not an input channel");
  if (v.kind() != ch->default_value.kind()) {
    throw LoadError(where + ": value " + to_string(v) + " does not fit channel '" + channel + "' (" +
                    std::string(kind_name(ch->default_value.kind())) + ")");
  }
  return v;
}

Json template_to_json(const PrivTemplate& t) {
  Json j = Json::object();
  if (t.high) j["H"] = cell_to_string(*t.high);
  if (t.low) j["L"] = cell_to_string(*t.low);
  for (const auto& [name, cell] : t.overrides) j[name] = cell_to_string(cell);
  return j;
}

PrivTemplate template_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw LoadError(where + ": a table column must be an object");
  PrivTemplate t;
  for (const auto& [key, cell_json] : j.items()) {
    if (!cell_json.is_string()) throw LoadError(where + ": cell '" + key + "' must be a string");
    const auto cell = parse_cell(cell_json.get<std::string>());
    if (!cell) throw LoadError(where + ": bad cell '" + cell_json.get<std::string>() + "' (use at, a, t or -)");
    if (key == "H") {
      t.high = *cell;
    } else if (key == "L") {
      t.low = *cell;
    } else {
      t.overrides[key] = *cell;
    }
  }
  return t;
}

Json columns_to_json(const std::vector<PrivTemplate>& cols) {
  Json j = Json::array();
  for (const PrivTemplate& t : cols) j.push_back(template_to_json(t));
  return j;
}

std::vector<PrivTemplate> columns_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw LoadError(where + " must be an array of columns");
  std::vector<PrivTemplate> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(template_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

StmtPtr handler_from_json(const Json& j, const char* key) {
  const std::string text = string_field(j, key, "policy");
  try {
    return parse(text, Dialect::Handler);
  } catch (const ParseError& e) {
    throw LoadError(std::string("policy ") + key + ": " + e.what());
  }
}

Json label_list(const std::vector<TransitionLabel>& labels) {
  Json j = Json::array();
  for (const TransitionLabel& l : labels) j.push_back(to_string(l));
  return j;
}

Json header(const TraceContext& ctx) {
  Json doc;
  doc["format"] = kTraceFormat;
  doc["version"] = 1;
  doc["program"] = ctx.program_path;
  doc["program_source"] = ctx.program_source;
  doc["channels"] = channels_to_json(ctx.env)["channels"];
  doc["policy"] = ctx.policy;
  if (ctx.custom_policy) doc["policy_config"] = policy_to_json(*ctx.custom_policy);
  doc["scheduler"] = scheduler_to_json(ctx.scheduler);
  doc["budget"] = ctx.budget;
  doc["read_mode"] = ctx.options.read_mode == GlobalReadMode::HeadOnly ? "head-only" : "per-channel";
  return doc;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write '" + path.string() + "'");
  out << text;
}

Json value_to_json(Value v) {
  const Value s = v.settled();
  if (s.is_bool()) return s.bool_value();
  return s.int_value();
}

Value value_from_json(const Json& j) {
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number_unsigned()) return Value::integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    const auto n = j.get<std::int64_t>();
    if (n < 0) throw LoadError("negative value " + std::to_string(n));
    return Value::integer(static_cast<std::uint64_t>(n));
  }
  if (j.is_string()) {
    if (auto v = parse_value(j.get<std::string>())) return *v;
  }
  throw LoadError("not a value: " + j.dump());
}

Json queue_to_json(const IoQueue& q) {
  Json j = Json::array();
  for (const IoItem& item : q) j.push_back({{"channel", item.channel}, {"value", value_to_json(item.value)}});
  return j;
}

IoQueue queue_from_json(const Json& j) {
  if (!j.is_array()) throw LoadError("an I/O queue must be an array");
  IoQueue q;
  for (const Json& item : j) {
    q.push_back({string_field(item, "channel", "queue item"), value_from_json(field(item, "value", "queue item"))});
  }
  return q;
}

Json channels_to_json(const ChannelEnv& env) {
  Json list = Json::array();
  for (const Channel& ch : env.channels()) {
    list.push_back({{"name", ch.name},
                    {"direction", ch.direction == Direction::In ? "in" : "out"},
                    {"level", ch.level == Level::High ? "H" : "L"},
                    {"type", ch.default_value.is_bool() ? "bool" : "int"},
                    {"default", value_to_json(ch.default_value)}});
  }
  return Json{{"channels", list}};
}

ChannelEnv channels_from_json(const Json& j) {
  const Json& list = j.is_array() ? j : field(j, "channels", "channel file");
  if (!list.is_array()) throw LoadError("channel file: \"channels\" must be an array");
  std::vector<Channel> channels;
  for (const Json& c : list) {
    Channel ch;
    ch.name = string_field(c, "name", "channel");
    const std::string where = "channel '" + ch.name + "'";
    const std::string dir = string_field(c, "direction", where.c_str());
    if (dir == "in") {
      ch.direction = Direction::In;
    } else if (dir == "out") {
      ch.direction = Direction::Out;
    } else {
      throw LoadError(where + ": direction must be \"in\" or \"out\"");
    }
    const std::string lvl = string_field(c, "level", where.c_str());
    if (lvl == "H") {
      ch.level = Level::High;
    } else if (lvl == "L") {
      ch.level = Level::Low;
    } else {
      throw LoadError(where + ": level must be \"H\" or \"L\"");
    }
    std::optional<Value> def;
    if (c.contains("default")) def = value_from_json(c.at("default"));
    std::optional<ValueKind> kind;
    if (c.contains("type")) {
      const std::string type = string_field(c, "type", where.c_str());
      if (type == "bool") {
        kind = ValueKind::Bool;
      } else if (type == "int") {
        kind = ValueKind::Int;
      } else {
        throw LoadError(where + ": type must be \"bool\" or \"int\"");
      }
    }
    if (!kind && !def) throw LoadError(where + ": give a \"type\" or a \"default\"");
    if (kind && def && def->kind() != *kind) throw LoadError(where + ": default does not match the type");
    ch.default_value = def ? *def : (*kind == ValueKind::Bool ? Value::boolean(false) : Value::integer(0));
    channels.push_back(std::move(ch));
  }
  try {
    return ChannelEnv(std::move(channels));
  } catch (const ChannelError& e) {
    throw LoadError(std::string("channel file: ") + e.what());
  }
}

ChannelEnv load_channels(const std::filesystem::path& path) {
  return channels_from_json(parse_json(read_file(path), path.string()));
}

IoQueue parse_input(std::string_view text, const ChannelEnv& env) {
  const std::string body = trim(text);
  IoQueue q;
  if (!body.empty() && (body.front() == '[' || body.front() == '{')) {
    const Json j = parse_json(body, "input");
    const Json& items = j.is_object() ? field(j, "input", "input document") : j;
    for (const IoItem& item : queue_from_json(items)) {
      q.push_back({item.channel, checked_item_value(env, item.channel, item.value, "input")});
    }
    return q;
  }
  std::istringstream lines(body);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = "input line " + std::to_string(lineno);
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw LoadError(where + ": expected CHANNEL=VALUE");
    const std::string name = trim(std::string_view(t).substr(0, eq));
    const auto v = parse_value(trim(std::string_view(t).substr(eq + 1)));
    if (!v) throw LoadError(where + ": bad value '" + t.substr(eq + 1) + "'");
    q.push_back({name, checked_item_value(env, name, *v, where)});
  }
  return q;
}

IoQueue load_input(const std::filesystem::path& path, const ChannelEnv& env) {
  return parse_input(read_file(path), env);
}

Json policy_to_json(const PolicyConfig& p) {
  Json j;
  j["format"] = "ifcmr-policy";
  j["name"] = p.name;
  j["description"] = p.description;
  j["map_table"] = columns_to_json(p.map_columns);
  j["reduce_table"] = columns_to_json(p.reduce_columns);
  Json clones = Json::object();
  for (const auto& [name, t] : p.clone_templates) clones[name] = template_to_json(t);
  j["clone_templates"] = clones;
  j["map_handler"] = to_source(*p.map_handler);
  j["reduce_handler"] = to_source(*p.reduce_handler);
  return j;
}

PolicyConfig policy_from_json(const Json& j) {
  PolicyConfig p;
  p.name = string_field(j, "name", "policy");
  if (j.contains("description")) p.description = string_field(j, "description", "policy");
  p.map_columns = columns_from_json(field(j, "map_table", "policy"), "map_table");
  p.reduce_columns = columns_from_json(field(j, "reduce_table", "policy"), "reduce_table");
  if (j.contains("clone_templates")) {
    const Json& clones = j.at("clone_templates");
    if (!clones.is_object()) throw LoadError("policy: \"clone_templates\" must be an object");
    for (const auto& [name, t] : clones.items()) p.clone_templates[name] = template_from_json(t, "clone template " + name);
  }
  p.map_handler = handler_from_json(j, "map_handler");
  p.reduce_handler = handler_from_json(j, "reduce_handler");
  const auto problems = lint_policy(p);
  if (!problems.empty()) throw LoadError("policy '" + p.name + "': " + problems.front());
  return p;
}

PolicyConfig load_policy(const std::filesystem::path& path) {
  return policy_from_json(parse_json(read_file(path), path.string()));
}

Json variant_reduce_table_json() {
  Json j;
  j["format"] = "ifcmr-table";
  j["description"] =
      "Alternative REDUCE table: execution 1 may also send output to high channels. Not used by any shipped policy.";
  j["reduce_table"] = columns_to_json(variant_reduce_columns());
  return j;
}

Json scheduler_to_json(const SchedulerSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  if (s.kind == SchedulerSpec::Kind::SeededRandom) j["seed"] = s.seed;
  return j;
}

SchedulerSpec scheduler_from_json(const Json& j) {
  const auto kind = parse_scheduler_kind(string_field(j, "kind", "scheduler"));
  if (!kind) throw LoadError("scheduler: unknown kind " + j.at("kind").dump());
  SchedulerSpec s;
  s.kind = *kind;
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

Json trace_to_json(const RunResult& r, const TraceContext& ctx) {
  Json doc = header(ctx);
  doc["input"] = queue_to_json(r.input);
  doc["outcome"] = to_string(r.outcome);
  doc["steps"] = r.steps;
  doc["consumed"] = queue_to_json(r.consumed);
  doc["residual"] = queue_to_json(r.residual);
  Json out = Json::array();
  for (const GlobalWriteRecord& w : r.writes) {
    out.push_back({{"step", w.step},
                   {"channel", w.item.channel},
                   {"value", value_to_json(w.item.value)},
                   {"source_exec", w.source_exec}});
  }
  doc["global_output"] = out;
  Json reads = Json::array();
  for (const GlobalReadRecord& g : r.reads) {
    reads.push_back({{"step", g.step},
                     {"channel", g.item.channel},
                     {"value", value_to_json(g.item.value)},
                     {"requester", g.requester}});
  }
  doc["global_reads"] = reads;
  Json execs = Json::array();
  for (const ExecutionSummary& e : r.executions) {
    Json x;
    x["id"] = e.id;
    x["parent"] = e.parent ? Json(*e.parent) : Json(nullptr);
    x["state"] = to_string(e.state);
    x["finished"] = e.finished;
    x["local_in"] = queue_to_json(e.delivered);
    x["local_out"] = queue_to_json(e.produced);
    x["pending_in"] = queue_to_json(e.pending_in);
    execs.push_back(std::move(x));
  }
  doc["executions"] = execs;
  doc["clone_count"] = r.clone_count;
  doc["schedule"] = label_list(r.schedule);
  doc["notes"] = r.notes;
  return doc;
}

Json standalone_trace_to_json(const Outcome& o, const IoQueue& input, const TraceContext& ctx) {
  Json doc = header(ctx);
  doc["policy"] = "none";
  doc.erase("policy_config");
  doc["input"] = queue_to_json(input);
  doc["outcome"] = to_string(o.kind);
  doc["steps"] = o.steps;
  IoQueue consumed(input.begin(), input.end() - static_cast<std::ptrdiff_t>(o.residual.size()));
  doc["consumed"] = queue_to_json(consumed);
  doc["residual"] = queue_to_json(o.residual);
  doc["global_output"] = queue_to_json(o.output);
  doc["global_reads"] = Json::array();
  doc["executions"] = Json::array();
  doc["clone_count"] = std::size_t{0};
  doc["schedule"] = Json::array();
  doc["notes"] = o.reason.empty() ? Json::array() : Json::array({o.reason});
  return doc;
}

Json witness_to_json(const Witness& w, const TraceContext& ctx) {
  TraceContext c = ctx;
  c.policy = "none";
  c.custom_policy.reset();
  Outcome o;
  o.kind = Outcome::Kind::Terminated;
  o.output = w.output;
  Json doc = standalone_trace_to_json(o, w.input, c);
  Json wj;
  wj["property"] = to_string(w.property);
  wj["clause"] = w.clause;
  if (w.other_input) wj["other_input"] = queue_to_json(*w.other_input);
  if (w.other_output) wj["other_output"] = queue_to_json(*w.other_output);
  Json defaults = Json::object();
  for (const auto& [name, v] : w.defaults) defaults[name] = value_to_json(v);
  if (!w.defaults.empty()) wj["defaults"] = defaults;
  if (w.deleted_index) wj["deleted_index"] = *w.deleted_index;
  wj["candidates_tried"] = w.candidates_tried;
  doc["witness"] = wj;
  return doc;
}

std::vector<std::string> validate_trace(const Json& doc) {
  std::vector<std::string> errors;
  if (!doc.is_object()) return {"document is not an object"};
  auto need = [&](const char* key, auto&& check, const char* what) {
    if (!doc.contains(key)) {
      errors.push_back(std::string("missing \"") + key + "\"");
    } else if (!check(doc.at(key))) {
      errors.push_back(std::string("\"") + key + "\" must be " + what);
    }
  };
  auto is_string = [](const Json& j) { return j.is_string(); };
  auto is_count = [](const Json& j) { return j.is_number_unsigned(); };
  auto is_array = [](const Json& j) { return j.is_array(); };
  auto is_queue = [](const Json& j) {
    if (!j.is_array()) return false;
    return std::all_of(j.begin(), j.end(), [](const Json& item) {
      return item.is_object() && item.contains("channel") && item.at("channel").is_string() && item.contains("value") &&
             (item.at("value").is_boolean() || item.at("value").is_number_unsigned());
    });
  };
  need("format", [](const Json& j) { return j.is_string() && j.get<std::string>() == kTraceFormat; },
       "\"ifcmr-trace\"");
  need("program", is_string, "a string");
  need("program_source", is_string, "a string");
  need("channels", is_array, "an array");
  need("policy", is_string, "a string");
  need("scheduler", [](const Json& j) { return j.is_object() && j.contains("kind"); }, "an object with \"kind\"");
  need("budget", is_count, "a count");
  need("input", is_queue, "a queue");
  need("outcome", is_string, "a string");
  need("steps", is_count, "a count");
  need("consumed", is_queue, "a queue");
  need("residual", is_queue, "a queue");
  need("global_output", is_queue, "a queue");
  need("global_reads", is_queue, "a queue");
  need("executions", is_array, "an array");
  need("clone_count", is_count, "a count");
  need("schedule", [](const Json& j) { return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& l) {
                                                 return l.is_string() && parse_label(l.get<std::string>()).has_value();
                                               }); },
       "an array of transition labels");
  need("notes", is_array, "an array");
  if (!errors.empty()) return errors;

  if (doc.at("channels").size() > 0) {
    try {
      (void)channels_from_json(doc.at("channels"));
    } catch (const LoadError& e) {
      errors.push_back(e.what());
    }
  }
  const bool enforced = doc.at("policy").get<std::string>() != "none";
  if (enforced) {
    if (!parse_run_outcome(doc.at("outcome").get<std::string>())) errors.push_back("unknown outcome");
    for (const Json& w : doc.at("global_output")) {
      if (!w.contains("step") || !w.contains("source_exec")) {
        errors.push_back("enforced global_output items need \"step\" and \"source_exec\"");
        break;
      }
    }
    if (doc.at("schedule").size() != doc.at("steps").get<std::size_t>()) {
      errors.push_back("schedule length differs from steps");
    }
    for (const Json& e : doc.at("executions")) {
      if (!e.is_object() || !e.contains("id") || !e.contains("state") || !e.contains("local_in") ||
          !e.contains("local_out")) {
        errors.push_back("executions need id, state, local_in and local_out");
        break;
      }
    }
  }
  if (doc.at("consumed").size() + doc.at("residual").size() != doc.at("input").size()) {
    errors.push_back("consumed and residual do not add up to the input");
  }
  return errors;
}

std::optional<std::string> first_difference(const Json& recorded, const Json& replayed) {
  static const char* const kFields[] = {"outcome",  "steps",         "consumed",   "residual", "global_output",
                                        "global_reads", "executions", "clone_count", "schedule"};
  for (const char* key : kFields) {
    const Json a = recorded.value(key, Json());
    const Json b = replayed.value(key, Json());
    if (a == b) continue;
    if (a.is_array() && b.is_array()) {
      const std::size_t n = std::min(a.size(), b.size());
      for (std::size_t k = 0; k < n; ++k) {
        if (a[k] != b[k]) {
          return std::string(key) + "[" + std::to_string(k) + "]: recorded " + a[k].dump() + ", replayed " +
                 b[k].dump();
        }
      }
      return std::string(key) + ": recorded " + std::to_string(a.size()) + " entries, replayed " +
             std::to_string(b.size());
    }
    return std::string(key) + ": recorded " + a.dump() + ", replayed " + b.dump();
  }
  return std::nullopt;
}

std::string render_queue_table(std::string_view title, const IoQueue& q, const std::vector<std::string>& channels) {
  std::size_t name_w = 4;
  for (const std::string& c : channels) name_w = std::max(name_w, c.size());
  std::vector<std::string> heads;
  std::vector<std::size_t> widths;
  for (std::size_t t = 0; t < q.size(); ++t) {
    heads.push_back("t=" + std::to_string(t));
    widths.push_back(std::max(heads.back().size(), to_string(q[t].value).size()));
  }
  std::ostringstream out;
  out << title << "\n";
  if (q.empty()) {
    out << "  (empty)\n";
    return out.str();
  }
  out << "  " << std::left << std::setw(static_cast<int>(name_w)) << "" << " |";
  for (std::size_t t = 0; t < q.size(); ++t) out << " " << std::setw(static_cast<int>(widths[t])) << heads[t];
  out << "\n";
  for (const std::string& c : channels) {
    out << "  " << std::setw(static_cast<int>(name_w)) << c << " |";
    for (std::size_t t = 0; t < q.size(); ++t) {
      out << " " << std::setw(static_cast<int>(widths[t])) << (q[t].channel == c ? to_string(q[t].value) : ".");
    }
    out << "\n";
  }
  return out.str();
}

std::string render_run_tables(const RunResult& r, const ChannelEnv& env) {
  const std::vector<std::string> ins = env.names(Direction::In);
  const std::vector<std::string> outs = env.names(Direction::Out);
  std::string s = render_queue_table("global input (consumed)", r.consumed, ins);
  s += render_queue_table("global output", r.global_output, outs);
  for (const ExecutionSummary& e : r.executions) {
    const std::string who = "execution " + std::to_string(e.id);
    s += render_queue_table(who + " local input", e.delivered, ins);
    s += render_queue_table(who + " local output", e.produced, outs);
  }
  return s;
}

}  // namespace ifcmr::io
