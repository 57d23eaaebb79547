#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnv/ctl.hpp"
#include "pnv/dsl.hpp"
#include "pnv/errors.hpp"
#include "pnv/net.hpp"
#include "pnv/scenario.hpp"
#include "pnv/statespace.hpp"
#include "pnv/structural.hpp"

namespace {

using nlohmann::ordered_json;

// Exit contract: 0 all pass, 1 some property/goal refuted, 2 usage or parse
// or analysis error, 3 state-limit truncation.
constexpr int kExitPass = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;
constexpr int kSchemaVersion = 1;

struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string& message) : std::runtime_error(message), code(code_) {}
};

std::string display_path(const std::string& path) { return path == "-" ? "<stdin>" : path; }

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kExitUsage, "cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return std::move(buf).str();
}

pnv::Net load_net(const std::string& path) {
  std::string text = read_input(path);
  try {
    return pnv::parse_net(text);
  } catch (const pnv::ParseError& e) {
    throw CliError(kExitUsage, display_path(path) + ": " + e.what());
  }
}

std::vector<pnv::NamedProperty> load_properties(const std::string& path) {
  std::string text = read_input(path);
  try {
    return pnv::parse_properties(text);
  } catch (const pnv::ParseError& e) {
    throw CliError(kExitUsage, display_path(path) + ": " + e.what());
  }
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t resolve_limit(bool flag_given, std::size_t flag_value) {
  if (flag_given) return flag_value;
  const char* env = std::getenv("PNVERIFY_LIMIT");
  if (!env) return pnv::kDefaultStateLimit;
  std::uint64_t value = 0;
  if (!parse_u64(env, value) || value == 0)
    throw CliError(kExitUsage,
                   "PNVERIFY_LIMIT must be a positive integer, got '" + std::string(env) + "'");
  return static_cast<std::size_t>(value);
}

std::string join_transitions(const pnv::Net& net, const std::vector<pnv::TransitionId>& trace) {
  if (trace.empty()) return "(empty)";
  std::string out;
  for (pnv::TransitionId t : trace) {
    if (!out.empty()) out += ' ';
    out += net.transition_name(t);
  }
  return out;
}

pnv::Marking replay(const pnv::Net& net, const std::vector<pnv::TransitionId>& trace) {
  pnv::Marking m = net.initial_marking();
  for (pnv::TransitionId t : trace) m = net.fire(m, t);
  return m;
}

ordered_json trace_json(const pnv::Net& net, const std::vector<pnv::TransitionId>& trace) {
  ordered_json out = ordered_json::array();
  for (pnv::TransitionId t : trace) out.push_back(net.transition_name(t));
  return out;
}

void emit_json(const ordered_json& j) { std::cout << j.dump() << '\n'; }

int cmd_check(const std::string& net_path, const std::string& props_path, std::size_t limit,
              bool as_json, bool quiet) {
  if (net_path == "-" && props_path == "-")
    throw CliError(kExitUsage, "only one input can come from standard input");
  pnv::Net net = load_net(net_path);
  std::vector<pnv::NamedProperty> props = load_properties(props_path);
  pnv::ReachabilityGraph g = pnv::explore(net, limit);

  struct Row {
    const pnv::NamedProperty* prop;
    std::string verdict;
    std::optional<std::vector<pnv::TransitionId>> trace;
  };
  std::vector<Row> rows;
  std::size_t held = 0;
  std::size_t refuted = 0;
  std::size_t undecided = 0;
  for (const pnv::NamedProperty& p : props) {
    try {
      pnv::Verdict v = pnv::check(net, g, *p.formula);
      (v.holds ? held : refuted) += 1;
      rows.push_back({&p, v.holds ? "holds" : "refuted", std::move(v.trace)});
    } catch (const pnv::StateLimitError&) {
      undecided += 1;
      rows.push_back({&p, "limit", std::nullopt});
    }
  }

  if (as_json) {
    ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = "check";
    out["net"] = net.name();
    out["status"] = g.complete() ? "complete" : "truncated";
    out["states"] = g.states.size();
    out["edges"] = g.edges.size();
    ordered_json list = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json row;
      row["name"] = r.prop->name;
      row["formula"] = r.prop->source;
      row["verdict"] = r.verdict;
      if (r.trace) {
        row["trace"] = trace_json(net, *r.trace);
        row["final_marking"] = pnv::format_marking(net, replay(net, *r.trace));
      } else {
        row["trace"] = nullptr;
      }
      list.push_back(std::move(row));
    }
    out["properties"] = std::move(list);
    out["holds"] = held;
    out["refuted"] = refuted;
    out["undecided"] = undecided;
    emit_json(out);
  } else if (!quiet) {
    std::cout << "net: " << net.name() << "\n";
    std::cout << "states: " << g.states.size();
    if (!g.complete()) std::cout << " (truncated at limit " << g.limit << ")";
    std::cout << "\n";
    for (const Row& r : rows) {
      const char* tag = r.verdict == "holds"     ? "PASS"
                        : r.verdict == "refuted" ? "FAIL"
                                                 : "LIMIT";
      std::cout << tag << ' ' << r.prop->name << ": " << r.prop->source << "\n";
      if (r.trace) {
        std::cout << "  " << (r.verdict == "holds" ? "witness" : "counterexample") << ": "
                  << join_transitions(net, *r.trace) << "\n";
        std::cout << "  final marking: " << pnv::format_marking(net, replay(net, *r.trace))
                  << "\n";
      }
    }
    std::cout << held << "/" << rows.size() << " properties hold\n";
  }
  if (refuted > 0) return kExitRefuted;
  if (undecided > 0) return kExitLimit;
  return kExitPass;
}

std::string liveness_label(pnv::LivenessClass c, bool human) {
  switch (c) {
    case pnv::LivenessClass::dead:
      return "dead";
    case pnv::LivenessClass::quasi_live:
      return human ? "quasi-live" : "quasi_live";
    case pnv::LivenessClass::live:
      return "live";
  }
  return "";
}

std::string invariant_terms(const pnv::Net& net, const pnv::InvariantVector& v) {
  std::string out;
  for (std::size_t p = 0; p < v.weights.size(); ++p) {
    if (v.weights[p] == 0) continue;
    if (!out.empty()) out += " + ";
    if (v.weights[p] != 1) out += std::to_string(v.weights[p]) + ' ';
    out += net.place_name(pnv::PlaceId{static_cast<std::uint32_t>(p)});
  }
  return out;
}

pnv::TokenCount invariant_constant(const pnv::Net& net, const pnv::InvariantVector& v) {
  pnv::TokenCount sum = 0;
  for (std::size_t p = 0; p < v.weights.size(); ++p)
    sum += v.weights[p] * net.initial_marking().at(pnv::PlaceId{static_cast<std::uint32_t>(p)});
  return sum;
}

int cmd_analyze(const std::string& net_path, std::size_t limit, bool as_json, bool quiet) {
  pnv::Net net = load_net(net_path);
  pnv::ReachabilityGraph g = pnv::explore(net, limit);
  if (!g.complete())
    throw CliError(kExitLimit, "state limit (" + std::to_string(limit) +
                                   ") reached; analysis needs the complete reachability graph");
  std::vector<pnv::Marking> dead_markings = pnv::deadlocks(g);
  std::vector<pnv::TransitionId> dead = pnv::dead_transitions(g);
  pnv::LivenessReport live = pnv::liveness(g);
  std::vector<pnv::TokenCount> bounds = pnv::place_bounds(g);
  std::vector<pnv::InvariantVector> invariants = pnv::p_invariants(net);

  if (as_json) {
    ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = "analyze";
    out["net"] = net.name();
    out["states"] = g.states.size();
    out["edges"] = g.edges.size();
    out["deadlock_free"] = dead_markings.empty();
    ordered_json dm = ordered_json::array();
    for (const pnv::Marking& m : dead_markings) dm.push_back(pnv::format_marking(net, m));
    out["deadlocks"] = std::move(dm);
    ordered_json dt = ordered_json::array();
    for (pnv::TransitionId t : dead) dt.push_back(net.transition_name(t));
    out["dead_transitions"] = std::move(dt);
    ordered_json lv;
    for (std::size_t t = 0; t < net.transition_count(); ++t)
      lv[net.transition_name(pnv::TransitionId{static_cast<std::uint32_t>(t)})] =
          liveness_label(live.transitions[t], false);
    out["liveness"] = std::move(lv);
    ordered_json bd;
    for (std::size_t p = 0; p < net.place_count(); ++p)
      bd[net.place_name(pnv::PlaceId{static_cast<std::uint32_t>(p)})] = bounds[p];
    out["bounds"] = std::move(bd);
    ordered_json inv = ordered_json::array();
    for (const pnv::InvariantVector& v : invariants) {
      ordered_json row;
      ordered_json terms;
      for (std::size_t p = 0; p < v.weights.size(); ++p)
        if (v.weights[p] != 0)
          terms[net.place_name(pnv::PlaceId{static_cast<std::uint32_t>(p)})] = v.weights[p];
      row["terms"] = std::move(terms);
      row["constant"] = invariant_constant(net, v);
      inv.push_back(std::move(row));
    }
    out["p_invariants"] = std::move(inv);
    emit_json(out);
  } else if (!quiet) {
    std::cout << "net: " << net.name() << "\n";
    std::cout << "states: " << g.states.size() << "\n";
    std::cout << "edges: " << g.edges.size() << "\n";
    if (dead_markings.empty()) {
      std::cout << "deadlocks: none\n";
    } else {
      std::cout << "deadlocks:";
      for (const pnv::Marking& m : dead_markings) std::cout << ' ' << pnv::format_marking(net, m);
      std::cout << "\n";
    }
    if (dead.empty()) {
      std::cout << "dead transitions: none\n";
    } else {
      std::cout << "dead transitions:";
      for (pnv::TransitionId t : dead) std::cout << ' ' << net.transition_name(t);
      std::cout << "\n";
    }
    std::cout << "liveness:\n";
    for (std::size_t t = 0; t < net.transition_count(); ++t)
      std::cout << "  " << net.transition_name(pnv::TransitionId{static_cast<std::uint32_t>(t)})
                << ": " << liveness_label(live.transitions[t], true) << "\n";
    std::cout << "bounds:\n";
    for (std::size_t p = 0; p < net.place_count(); ++p)
      std::cout << "  " << net.place_name(pnv::PlaceId{static_cast<std::uint32_t>(p)}) << ": "
                << bounds[p] << "\n";
    if (invariants.empty()) {
      std::cout << "p-invariants: none\n";
    } else {
      std::cout << "p-invariants:\n";
      for (const pnv::InvariantVector& v : invariants)
        std::cout << "  " << invariant_terms(net, v) << " = " << invariant_constant(net, v)
                  << "\n";
    }
  }
  return kExitPass;
}

int cmd_reach(const std::string& net_path, const std::string& goal_text, std::size_t limit,
              bool as_json, bool quiet) {
  pnv::Net net = load_net(net_path);
  std::size_t first = goal_text.find_first_not_of(" \t\n\r");
  if (first == std::string::npos) throw CliError(kExitUsage, "empty goal");

  pnv::ReachResult result;
  if (goal_text[first] == '{') {
    pnv::Marking goal;
    try {
      goal = pnv::parse_marking(net, goal_text);
    } catch (const pnv::ParseError& e) {
      throw CliError(kExitUsage, std::string("goal marking: ") + e.what());
    }
    result = pnv::reachable(net, goal, limit);
  } else {
    pnv::FormulaPtr f;
    try {
      f = pnv::parse_formula(goal_text);
    } catch (const pnv::ParseError& e) {
      throw CliError(kExitUsage, std::string("goal formula: ") + e.what());
    }
    if (!pnv::is_state_predicate(*f))
      throw CliError(kExitUsage, "goal must be a marking literal or a temporal-free predicate");
    result = pnv::reachable(
        net, [&](const pnv::Marking& m) { return pnv::eval_state_predicate(net, m, *f); }, limit);
  }

  std::string outcome = result.outcome == pnv::ReachResult::Outcome::found ? "found"
                        : result.outcome == pnv::ReachResult::Outcome::unreachable
                            ? "unreachable"
                            : "limit";
  if (as_json) {
    ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = "reach";
    out["net"] = net.name();
    out["goal"] = goal_text;
    out["outcome"] = outcome;
    if (result.outcome == pnv::ReachResult::Outcome::found) {
      out["steps"] = result.witness.size();
      out["witness"] = trace_json(net, result.witness);
      out["final_marking"] = pnv::format_marking(net, replay(net, result.witness));
    }
    emit_json(out);
  } else if (!quiet) {
    switch (result.outcome) {
      case pnv::ReachResult::Outcome::found:
        std::cout << "reachable in " << result.witness.size() << " steps\n";
        std::cout << "witness: " << join_transitions(net, result.witness) << "\n";
        std::cout << "final marking: " << pnv::format_marking(net, replay(net, result.witness))
                  << "\n";
        break;
      case pnv::ReachResult::Outcome::unreachable:
        std::cout << "unreachable\n";
        break;
      case pnv::ReachResult::Outcome::limit:
        std::cout << "state limit (" << limit << ") reached; goal not found\n";
        break;
    }
  }
  switch (result.outcome) {
    case pnv::ReachResult::Outcome::found:
      return kExitPass;
    case pnv::ReachResult::Outcome::unreachable:
      return kExitRefuted;
    default:
      return kExitLimit;
  }
}

int cmd_dot(const std::string& net_path, const std::optional<std::string>& marking_text) {
  pnv::Net net = load_net(net_path);
  pnv::Marking m = net.initial_marking();
  if (marking_text) {
    try {
      m = pnv::parse_marking(net, *marking_text);
    } catch (const pnv::ParseError& e) {
      throw CliError(kExitUsage, std::string("marking: ") + e.what());
    }
  }
  std::cout << pnv::to_dot(net, m);
  return kExitPass;
}

std::size_t pick_uniform(std::mt19937_64& rng, std::size_t n) {
  std::uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    std::uint64_t draw = rng() & mask;
    if (draw < n) return static_cast<std::size_t>(draw);
  }
}

int cmd_simulate(const std::string& net_path, bool random_mode,
                 std::optional<std::uint64_t> seed_opt, std::uint64_t steps) {
  if (net_path == "-")
    throw CliError(kExitUsage, "simulate reads commands from standard input; pass the net as a file");
  pnv::Net net = load_net(net_path);
  std::uint64_t seed = seed_opt ? *seed_opt : std::random_device{}();
  std::mt19937_64 rng(seed);
  std::cout << "net: " << net.name() << "\n";
  std::cout << "seed: " << seed << "\n";
  pnv::Marking m = net.initial_marking();

  auto fire_random = [&]() -> bool {
    std::vector<pnv::TransitionId> en = net.enabled_set(m);
    if (en.empty()) {
      std::cout << "deadlock: no enabled transitions\n";
      return false;
    }
    pnv::TransitionId t = en[pick_uniform(rng, en.size())];
    m = net.fire(m, t);
    std::cout << "fired " << net.transition_name(t) << " -> " << pnv::format_marking(net, m)
              << "\n";
    return true;
  };

  if (random_mode) {
    std::cout << pnv::format_marking(net, m) << "\n";
    for (std::uint64_t i = 0; i < steps; ++i)
      if (!fire_random()) break;
    return kExitPass;
  }

  std::vector<pnv::Marking> undo;
  auto show = [&]() {
    std::cout << pnv::format_marking(net, m) << "\n";
    std::vector<pnv::TransitionId> en = net.enabled_set(m);
    if (en.empty()) {
      std::cout << "deadlock: no enabled transitions\n";
      return;
    }
    std::cout << "enabled:";
    for (pnv::TransitionId t : en) std::cout << " [" << t.value << "] " << net.transition_name(t);
    std::cout << "\n";
  };

  std::string line;
  for (;;) {
    show();
    std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::istringstream words(line);
    std::string cmd;
    std::string arg;
    words >> cmd >> arg;
    if (cmd.empty()) continue;
    if (cmd == "quit" || cmd == "exit") break;
    if (cmd == "help") {
      std::cout << "commands: <transition name or number>, auto K, undo, reset, help, quit\n";
      continue;
    }
    if (cmd == "reset") {
      undo.clear();
      m = net.initial_marking();
      continue;
    }
    if (cmd == "undo") {
      if (undo.empty()) {
        std::cout << "nothing to undo\n";
      } else {
        m = undo.back();
        undo.pop_back();
      }
      continue;
    }
    if (cmd == "auto") {
      std::uint64_t k = 0;
      if (arg.empty() || !parse_u64(arg, k)) {
        std::cout << "usage: auto K\n";
        continue;
      }
      for (std::uint64_t i = 0; i < k; ++i) {
        pnv::Marking before = m;
        if (!fire_random()) break;
        undo.push_back(std::move(before));
      }
      continue;
    }
    std::optional<pnv::TransitionId> t;
    if (std::all_of(cmd.begin(), cmd.end(), [](unsigned char c) { return std::isdigit(c); })) {
      std::uint64_t id = 0;
      if (parse_u64(cmd, id) && id < net.transition_count())
        t = pnv::TransitionId{static_cast<std::uint32_t>(id)};
    } else {
      t = net.find_transition(cmd);
    }
    if (!t) {
      std::cout << "unknown transition '" << cmd << "'\n";
      continue;
    }
    if (!net.is_enabled(m, *t)) {
      std::cout << "transition '" << net.transition_name(*t) << "' is not enabled\n";
      continue;
    }
    undo.push_back(m);
    m = net.fire(m, *t);
    std::cout << "fired " << net.transition_name(*t) << " -> " << pnv::format_marking(net, m)
              << "\n";
  }
  return kExitPass;
}

int cmd_scenario(const std::string& context_str, std::uint64_t budget, const std::string& emit) {
  std::optional<pnv::Context> ctx = pnv::parse_context(context_str);
  if (!ctx)
    throw CliError(kExitUsage, "unknown context '" + context_str +
                                   "' (expected attention, no_attention or not_present)");
  if (budget == 0) throw CliError(kExitUsage, "explanation budget must be at least 1");
  pnv::ScenarioConfig cfg{*ctx, budget};
  if (emit == "net")
    std::cout << pnv::serialize_net(pnv::build_scenario(cfg));
  else
    std::cout << pnv::property_file_text(cfg);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petri net modeling and verification toolkit"};
  app.require_subcommand(1);

  std::string check_net;
  std::string check_props;
  std::size_t check_limit = pnv::kDefaultStateLimit;
  bool check_json = false;
  bool check_quiet = false;
  CLI::App* check = app.add_subcommand("check", "Verify named properties against a net");
  check->add_option("net", check_net, "net file, '-' for standard input")->required();
  check->add_option("props", check_props, "property file, '-' for standard input")->required();
  CLI::Option* check_limit_opt =
      check->add_option("--limit", check_limit, "state exploration cap")
          ->check(CLI::PositiveNumber);
  check->add_flag("--json", check_json, "machine-readable report on standard output");
  check->add_flag("--quiet", check_quiet, "no report, exit code only");

  std::string analyze_net;
  std::size_t analyze_limit = pnv::kDefaultStateLimit;
  bool analyze_json = false;
  bool analyze_quiet = false;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Deadlocks, liveness, bounds and invariants in one pass");
  analyze->add_option("net", analyze_net, "net file, '-' for standard input")->required();
  CLI::Option* analyze_limit_opt =
      analyze->add_option("--limit", analyze_limit, "state exploration cap")
          ->check(CLI::PositiveNumber);
  analyze->add_flag("--json", analyze_json, "machine-readable report on standard output");
  analyze->add_flag("--quiet", analyze_quiet, "no report, exit code only");

  std::string reach_net;
  std::string reach_goal;
  std::size_t reach_limit = pnv::kDefaultStateLimit;
  bool reach_json = false;
  bool reach_quiet = false;
  CLI::App* reach = app.add_subcommand("reach", "Shortest firing sequence to a goal");
  reach->add_option("net", reach_net, "net file, '-' for standard input")->required();
  reach
      ->add_option("goal", reach_goal,
                   "marking literal like '{2 p0, p1}' or a temporal-free predicate")
      ->required();
  CLI::Option* reach_limit_opt =
      reach->add_option("--limit", reach_limit, "state exploration cap")
          ->check(CLI::PositiveNumber);
  reach->add_flag("--json", reach_json, "machine-readable report on standard output");
  reach->add_flag("--quiet", reach_quiet, "no report, exit code only");

  std::string sim_net;
  bool sim_random = false;
  std::optional<std::uint64_t> sim_seed;
  std::uint64_t sim_steps = 0;
  CLI::App* simulate = app.add_subcommand("simulate", "Interactive token game");
  simulate->add_option("net", sim_net, "net file")->required();
  CLI::Option* sim_random_opt =
      simulate->add_flag("--random", sim_random, "fire uniformly at random instead of prompting");
  simulate->add_option("--seed", sim_seed, "random seed, echoed in the output");
  CLI::Option* sim_steps_opt =
      simulate->add_option("--steps", sim_steps, "number of random firings")
          ->check(CLI::PositiveNumber);
  sim_random_opt->needs(sim_steps_opt);
  sim_steps_opt->needs(sim_random_opt);

  std::string dot_net;
  std::optional<std::string> dot_marking;
  CLI::App* dot = app.add_subcommand("dot", "Graphviz rendering on standard output");
  dot->add_option("net", dot_net, "net file, '-' for standard input")->required();
  dot->add_option("--marking", dot_marking, "marking literal to display instead of the initial");

  std::string scen_context = "attention";
  std::uint64_t scen_budget = 3;
  std::string scen_emit;
  CLI::App* scenario =
      app.add_subcommand("scenario", "Emit the robot error-explanation model or its properties");
  scenario->add_option("--context", scen_context,
                       "initial user context: attention, no_attention or not_present");
  scenario->add_option("--budget", scen_budget, "explanation budget (tokens on the counter)");
  scenario->add_option("--emit", scen_emit, "what to print: net or props")
      ->required()
      ->check(CLI::IsMember({"net", "props"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (check->parsed())
      return cmd_check(check_net, check_props,
                       resolve_limit(check_limit_opt->count() > 0, check_limit), check_json,
                       check_quiet);
    if (analyze->parsed())
      return cmd_analyze(analyze_net, resolve_limit(analyze_limit_opt->count() > 0, analyze_limit),
                         analyze_json, analyze_quiet);
    if (reach->parsed())
      return cmd_reach(reach_net, reach_goal,
                       resolve_limit(reach_limit_opt->count() > 0, reach_limit), reach_json,
                       reach_quiet);
    if (simulate->parsed()) return cmd_simulate(sim_net, sim_random, sim_seed, sim_steps);
    if (dot->parsed()) return cmd_dot(dot_net, dot_marking);
    if (scenario->parsed()) return cmd_scenario(scen_context, scen_budget, scen_emit);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const pnv::StateLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const pnv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
