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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifcmr/em/run.hpp"
#include "ifcmr/io/io.hpp"
#include "ifcmr/lang/parser.hpp"
#include "ifcmr/oracle/oracle.hpp"
#include "ifcmr/policy/policy.hpp"

namespace fs = std::filesystem;
using namespace ifcmr;
using io::Json;

namespace {

// Exit codes shared by the subcommands.
constexpr int kExitOk = 0;
constexpr int kExitFound = 1;  // check: Violated; explore: several classes; replay: divergence
constexpr int kExitBudget = 2;
constexpr int kExitLoad = 3;
constexpr int kExitDeadlock = 4;

std::size_t default_budget(std::size_t fallback) {
  if (const char* env = std::getenv("IFCMR_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring IFCMR_BUDGET='" << env << "'\n";
    }
  }
  return fallback;
}

struct Common {
  std::string program;
  std::string channels;
  std::string input;
  std::vector<std::string> items;
  std::string policy;
  std::string scheduler = "lowest";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  bool head_only = false;
  std::string output;
};

struct Loaded {
  Program program;
  std::string source;
  ChannelEnv env;
  IoQueue input;
};

// `<stem>.channels.json` next to the program, or the running example.
ChannelEnv find_channels(const Common& c) {
  if (!c.channels.empty()) return io::load_channels(c.channels);
  fs::path guess = fs::path(c.program);
  guess.replace_extension(".channels.json");
  if (fs::exists(guess)) return io::load_channels(guess);
  return ChannelEnv::running_example();
}

Loaded load(const Common& c, bool want_input) {
  Loaded l;
  l.source = io::read_file(c.program);
  try {
    l.program = parse_program(l.source);
  } catch (const ParseError& e) {
    throw io::LoadError(c.program + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                        e.message());
  }
  l.env = find_channels(c);
  validate_channels(*l.program, l.env);
  if (want_input) {
    if (!c.input.empty()) l.input = io::load_input(c.input, l.env);
    std::string extra;
    for (const std::string& item : c.items) extra += item + "\n";
    const IoQueue more = io::parse_input(extra, l.env);
    l.input.insert(l.input.end(), more.begin(), more.end());
  }
  return l;
}

// A shipped name, or a path to a policy file.
std::optional<PolicyConfig> resolve_policy(const std::string& name, bool& custom) {
  custom = false;
  if (name.empty() || name == "none") return std::nullopt;
  if (auto p = shipped_policy(name)) return p;
  if (fs::exists(name)) {
    custom = true;
    return io::load_policy(name);
  }
  std::string known;
  for (const std::string& n : shipped_policy_names()) known += " " + n;
  throw io::LoadError("unknown policy '" + name + "' (shipped:" + known + ", or a policy file)");
}

SchedulerSpec scheduler_spec(const Common& c) {
  SchedulerSpec s;
  if (c.seed) {
    s = SchedulerSpec::seeded(*c.seed);
  } else {
    const auto kind = parse_scheduler_kind(c.scheduler);
    if (!kind || *kind == SchedulerSpec::Kind::Scripted) {
      throw io::LoadError("scheduler must be lowest, round-robin or random (scripted runs go through replay)");
    }
    s.kind = *kind;
  }
  return s;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
  } else {
    io::write_file(path, text + "\n");
  }
}

io::TraceContext context(const Common& c, const Loaded& l, const std::optional<PolicyConfig>& policy, bool custom,
                         std::size_t budget) {
  io::TraceContext ctx;
  ctx.program_path = c.program;
  ctx.program_source = l.source;
  ctx.env = l.env;
  ctx.policy = policy ? policy->name : "none";
  if (custom) ctx.custom_policy = policy;
  ctx.scheduler = scheduler_spec(c);
  ctx.budget = budget;
  ctx.options.read_mode = c.head_only ? GlobalReadMode::HeadOnly : GlobalReadMode::PerChannel;
  return ctx;
}

int exit_for(RunOutcome o) {
  switch (o) {
    case RunOutcome::Completed:
    case RunOutcome::QuiescentWithResidual:
      return kExitOk;
    case RunOutcome::Deadlocked:
      return kExitDeadlock;
    case RunOutcome::BudgetExceeded:
      return kExitBudget;
  }
  return kExitLoad;
}

int exit_for(Outcome::Kind o) {
  switch (o) {
    case Outcome::Kind::Terminated:
    case Outcome::Kind::FinishedWithResidual:
      return kExitOk;
    case Outcome::Kind::Stuck:
      return kExitDeadlock;
    case Outcome::Kind::BudgetExceeded:
      return kExitBudget;
  }
  return kExitLoad;
}

int cmd_run(const Common& c, bool pretty, bool emit_schedule) {
  const Loaded l = load(c, true);
  bool custom = false;
  const auto policy = resolve_policy(c.policy, custom);
  const std::size_t budget = c.budget.value_or(default_budget(kDefaultBudget));
  const io::TraceContext ctx = context(c, l, policy, custom, budget);

  if (!policy) {
    const Outcome o = run_program(l.program, l.input, budget);
    const Json doc = io::standalone_trace_to_json(o, l.input, ctx);
    if (pretty) {
      std::cout << "outcome: " << to_string(o.kind) << " after " << o.steps << " steps\n";
      if (!o.reason.empty()) std::cout << "reason: " << o.reason << "\n";
      std::cout << io::render_queue_table("output", o.output, l.env.names(Direction::Out));
      std::cout << io::render_queue_table("residual input", o.residual, l.env.names(Direction::In));
      if (!c.output.empty()) emit(c.output, doc.dump(2));
    } else {
      emit(c.output, doc.dump(2));
    }
    return exit_for(o.kind);
  }

  const Machine m(l.env, *policy, ctx.options);
  RunOptions ro;
  ro.scheduler = ctx.scheduler;
  ro.budget = budget;
  const RunResult r = run_enforced(l.program, m, l.input, ro);
  const Json doc = io::trace_to_json(r, ctx);
  if (pretty) {
    std::cout << "policy: " << policy->name << ", scheduler: " << to_string(ctx.scheduler.kind) << "\n";
    std::cout << "outcome: " << to_string(r.outcome) << " after " << r.steps << " steps, " << r.clone_count
              << " clone(s)\n";
    for (const std::string& n : r.notes) std::cout << "note: " << n << "\n";
    std::cout << io::render_queue_table("residual input", r.residual, l.env.names(Direction::In));
    std::cout << io::render_run_tables(r, l.env);
    if (!c.output.empty()) emit(c.output, doc.dump(2));
  } else {
    emit(c.output, doc.dump(2));
  }
  if (emit_schedule) {
    for (const TransitionLabel& label : r.schedule) std::cerr << to_string(label) << "\n";
  }
  return exit_for(r.outcome);
}

int cmd_check(const Common& c, const std::string& property_name, std::size_t max_len, const std::string& alphabet,
              bool di_strict, std::size_t max_inputs, const std::string& witness_path) {
  const auto property = parse_property(property_name);
  if (!property) throw io::LoadError("property must be tini, tsni, ri or di");
  const Loaded l = load(c, false);
  bool custom = false;
  const auto policy = resolve_policy(c.policy, custom);

  InputDomain dom = InputDomain::standard(l.env, max_len);
  if (!alphabet.empty()) apply_alphabet_spec(dom, alphabet);
  OracleOptions opt;
  opt.budget = c.budget.value_or(default_budget(opt.budget));
  opt.di_strict = di_strict;
  opt.max_inputs = max_inputs;

  const System sys = policy ? enforced_system(l.program, *policy, scheduler_spec(c), opt.budget)
                            : standalone_system(l.program, opt.budget);
  const CheckResult res = check_property(*property, sys, dom, opt);
  std::cout << to_string(*property) << ": " << to_string(res.verdict) << " (" << res.bounds << "; "
            << res.inputs_checked << " inputs, " << res.runs << " runs" << (policy ? ", enforced by " + policy->name : "")
            << ")\n";
  if (res.verdict == Verdict::Inconclusive) return kExitBudget;
  if (res.verdict == Verdict::Holds) return kExitOk;

  const Witness& w = *res.witness;
  std::cout << "witness: " << to_string(w.input) << " -> " << to_string(w.output) << "\n";
  std::cout << "clause: " << w.clause << "\n";
  if (w.other_input) std::cout << "other: " << to_string(*w.other_input) << " -> " << to_string(*w.other_output) << "\n";
  if (w.deleted_index) std::cout << "deleted item: position " << *w.deleted_index << "\n";
  if (!w.defaults.empty()) {
    std::cout << "defaults:";
    for (const auto& [name, v] : w.defaults) std::cout << " " << name << "=" << to_string(v);
    std::cout << "\n";
  }
  std::string path = witness_path;
  if (path.empty()) path = fs::path(c.program).stem().string() + "." + property_name + ".witness.json";
  Common plain = c;
  plain.seed.reset();
  plain.scheduler = "lowest";
  io::write_file(path, io::witness_to_json(w, context(plain, l, std::nullopt, false, opt.budget)).dump(2) + "\n");
  std::cout << "witness written to " << path << "\n";
  return kExitFound;
}

int cmd_explore(const Common& c, std::size_t depth, std::size_t max_states, bool no_reduce) {
  const Loaded l = load(c, true);
  bool custom = false;
  const auto policy = resolve_policy(c.policy, custom);
  if (!policy) throw io::LoadError("explore needs --policy");
  const Machine m(l.env, *policy, EmOptions{c.head_only ? GlobalReadMode::HeadOnly : GlobalReadMode::PerChannel});
  ExploreOptions eo;
  eo.depth = depth;
  eo.max_states = max_states;
  eo.reduce = !no_reduce;
  const ExploreResult e = explore(l.program, m, l.input, eo);
  std::cout << "states: " << e.states << (e.reduced ? " (reduced)" : "") << "\n";
  std::cout << "classes: " << e.classes.size() << "\n";
  bool deadlock = false;
  for (const RunClass& rc : e.classes) {
    std::cout << "  " << to_string(rc) << "\n";
    deadlock = deadlock || rc.outcome == RunOutcome::Deadlocked;
  }
  if (e.divergent) std::cout << "some schedule loops forever\n";
  if (e.partial || e.depth_limited) {
    std::cout << (e.partial ? "state cap reached" : "depth bound reached") << "; result is incomplete\n";
    return kExitBudget;
  }
  return e.classes.size() == 1 && !deadlock ? kExitOk : kExitFound;
}

int cmd_replay(const std::string& trace_path) {
  const Json doc = Json::parse(io::read_file(trace_path), nullptr, false);
  if (doc.is_discarded()) throw io::LoadError(trace_path + ": not JSON");
  const auto problems = io::validate_trace(doc);
  if (!problems.empty()) throw io::LoadError(trace_path + ": " + problems.front());

  io::TraceContext ctx;
  ctx.program_path = doc.at("program").get<std::string>();
  ctx.program_source = doc.at("program_source").get<std::string>();
  ctx.env = io::channels_from_json(doc.at("channels"));
  ctx.policy = doc.at("policy").get<std::string>();
  ctx.scheduler = io::scheduler_from_json(doc.at("scheduler"));
  ctx.budget = doc.at("budget").get<std::size_t>();
  if (doc.value("read_mode", "per-channel") == "head-only") ctx.options.read_mode = GlobalReadMode::HeadOnly;
  const Program p = parse_program(ctx.program_source);
  const IoQueue input = io::parse_input(doc.at("input").dump(), ctx.env);

  Json replayed;
  if (ctx.policy == "none") {
    replayed = io::standalone_trace_to_json(run_program(p, input, ctx.budget), input, ctx);
    // A witness records only the input and output of the stand-alone run.
    if (doc.contains("witness")) {
      const bool same = replayed.at("outcome") == doc.at("outcome") && replayed.at("global_output") == doc.at("global_output");
      std::cout << (same ? "reproduced" : "diverged") << ": output " << replayed.at("global_output").dump() << "\n";
      return same ? kExitOk : kExitFound;
    }
  } else {
    std::optional<PolicyConfig> policy = doc.contains("policy_config")
                                             ? std::optional(io::policy_from_json(doc.at("policy_config")))
                                             : shipped_policy(ctx.policy);
    if (!policy) throw io::LoadError("unknown policy '" + ctx.policy + "'");
    if (doc.contains("policy_config")) ctx.custom_policy = policy;
    std::vector<TransitionLabel> script;
    for (const Json& label : doc.at("schedule")) script.push_back(*parse_label(label.get<std::string>()));
    const Machine m(ctx.env, *policy, ctx.options);
    RunOptions ro;
    ro.scheduler = SchedulerSpec::scripted(std::move(script));
    ro.budget = ctx.budget;
    try {
      replayed = io::trace_to_json(run_enforced(p, m, input, ro), ctx);
    } catch (const ReplayDivergence& d) {
      std::cout << "diverged at schedule entry " << d.step() << " (step " << d.step() + 1 << "): recorded " << d.expected() << ", enabled:";
      for (const std::string& e : d.enabled_labels()) std::cout << " " << e;
      std::cout << "\n";
      return kExitFound;
    }
  }
  if (const auto diff = io::first_difference(doc, replayed)) {
    std::cout << "diverged: " << *diff << "\n";
    return kExitFound;
  }
  std::cout << "reproduced: " << doc.at("outcome").get<std::string>() << " in " << doc.at("steps") << " steps\n";
  return kExitOk;
}

int cmd_export_policy(const std::string& name, const std::string& output, bool variant) {
  if (variant) {
    emit(output, io::variant_reduce_table_json().dump(2));
    return kExitOk;
  }
  if (name == "all") {
    if (output.empty()) throw io::LoadError("--policy all needs --output DIR");
    fs::create_directories(output);
    for (const std::string& n : shipped_policy_names()) {
      io::write_file(fs::path(output) / (n + ".json"), io::policy_to_json(*shipped_policy(n)).dump(2) + "\n");
    }
    io::write_file(fs::path(output) / "variant_reduce_table.json", io::variant_reduce_table_json().dump(2) + "\n");
    return kExitOk;
  }
  bool custom = false;
  const auto policy = resolve_policy(name, custom);
  if (!policy) throw io::LoadError("nothing to export for policy 'none'");
  emit(output, io::policy_to_json(*policy).dump(2));
  return kExitOk;
}

void add_program_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--program,-p", c.program, "Program source file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--channels,-c", c.channels,
                  "Channel environment (JSON); defaults to <program>.channels.json, then the running example")
      ->check(CLI::ExistingFile);
  cmd->add_option("--budget,-b", c.budget, "Step budget per run (default from IFCMR_BUDGET)");
}

void add_input_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--input,-i", c.input, "Input trace: CHANNEL=VALUE lines or JSON")->check(CLI::ExistingFile);
  cmd->add_option("--item", c.items, "Extra input item CHANNEL=VALUE, appended after --input");
}

void add_scheduler_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--scheduler", c.scheduler, "lowest, round-robin or random");
  cmd->add_option("--seed", c.seed, "Seed; selects the random scheduler");
  cmd->add_flag("--head-only", c.head_only, "MAP may only read the head of the global input");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime enforcement of information-flow policies with MAP-REDUCE multi-execution"};
  app.require_subcommand(1);

  Common c;
  bool pretty = false;
  bool emit_schedule = false;
  auto* run = app.add_subcommand("run", "Run a program, stand-alone (--policy none) or enforced");
  add_program_options(run, c);
  add_input_options(run, c);
  add_scheduler_options(run, c);
  run->add_option("--policy", c.policy, "Policy name (ni, ri, di, subdi, none) or policy file")->default_val("none");
  run->add_option("--output,-o", c.output, "Trace document path (default: stdout)");
  run->add_flag("--pretty", pretty, "Print time-by-channel tables instead of the trace document");
  run->add_flag("--emit-schedule", emit_schedule, "Print the schedule, one label per line, on stderr");

  std::string property;
  std::size_t max_len = 3;
  std::string alphabet;
  bool di_strict = false;
  std::size_t max_inputs = OracleOptions{}.max_inputs;
  std::string witness;
  auto* check = app.add_subcommand("check", "Check a property on all inputs up to a length");
  add_program_options(check, c);
  add_scheduler_options(check, c);
  check->add_option("--property", property, "tini, tsni, ri or di")->required();
  check->add_option("--max-len,-k", max_len, "Longest input considered")->default_val(3);
  check->add_option("--alphabet", alphabet, "Values per channel, e.g. 'cH1=T,F;cL2=0,1,2'");
  check->add_flag("--di-strict", di_strict, "DI: corrections may not add items on any channel");
  check->add_option("--max-inputs", max_inputs, "Give up (Inconclusive) above this many inputs");
  check->add_option("--policy", c.policy, "Check the program enforced by this policy instead of the bare program");
  check->add_option("--witness,-w", witness, "Witness path (default: <program>.<property>.witness.json)");

  std::size_t depth = ExploreOptions{}.depth;
  std::size_t max_states = ExploreOptions{}.max_states;
  bool no_reduce = false;
  auto* exp = app.add_subcommand("explore", "Explore every schedule of an enforced run");
  add_program_options(exp, c);
  add_input_options(exp, c);
  exp->add_option("--policy", c.policy, "Policy name or policy file")->required();
  exp->add_option("--depth,-d", depth, "Longest schedule explored")->default_val(depth);
  exp->add_option("--max-states", max_states, "State cap")->default_val(max_states);
  exp->add_flag("--no-reduce", no_reduce, "Interleave internal local steps too");
  exp->add_flag("--head-only", c.head_only, "MAP may only read the head of the global input");

  std::string trace;
  auto* rep = app.add_subcommand("replay", "Re-run a trace document and compare");
  rep->add_option("trace", trace, "Trace document")->required()->check(CLI::ExistingFile);

  std::string export_name;
  bool variant = false;
  auto* exp_pol = app.add_subcommand("export-policy", "Write a policy in the policy file format");
  exp_pol->add_option("--policy", export_name, "Policy name, or 'all' with --output DIR")->default_val("all");
  exp_pol->add_option("--output,-o", c.output, "File (or directory for 'all'); default stdout");
  exp_pol->add_flag("--variant-reduce", variant, "Export the variant REDUCE table instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitLoad;
  }

  try {
    if (run->parsed()) return cmd_run(c, pretty, emit_schedule);
    if (check->parsed()) return cmd_check(c, property, max_len, alphabet, di_strict, max_inputs, witness);
    if (exp->parsed()) return cmd_explore(c, depth, max_states, no_reduce);
    if (rep->parsed()) return cmd_replay(trace);
    if (exp_pol->parsed()) return cmd_export_policy(export_name, c.output, variant);
  } catch (const io::LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const ChannelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const PolicyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLoad;
  }
  return kExitLoad;
}
