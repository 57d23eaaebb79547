#include "pnv/scenario.hpp"

#include <algorithm>

#include "pnv/structural.hpp"

namespace pnv {

std::string context_name(Context c) {
  switch (c) {
    case Context::attention: return "attention";
    case Context::no_attention: return "no_attention";
    case Context::not_present: return "not_present";
  }
  return "attention";
}

std::optional<Context> parse_context(std::string_view name) {
  if (name == "attention") return Context::attention;
  if (name == "no_attention") return Context::no_attention;
  if (name == "not_present") return Context::not_present;
  return std::nullopt;
}

Net build_scenario(const ScenarioConfig& cfg) {
  if (cfg.explanation_budget == 0) throw NetError("the explanation budget must be at least 1");
  const TokenCount budget = cfg.explanation_budget;
  NetBuilder b("scenario");

  PlaceId normal = b.add_place("normal", 1);
  PlaceId error_occurred = b.add_place("error_occurred");
  PlaceId user_informed = b.add_place("user_informed");
  PlaceId idle = b.add_place("p2");
  PlaceId attention = b.add_place("attention", cfg.initial_context == Context::attention ? 1 : 0);
  PlaceId no_attention =
      b.add_place("no_attention", cfg.initial_context == Context::no_attention ? 1 : 0);
  PlaceId not_present =
      b.add_place("not_present", cfg.initial_context == Context::not_present ? 1 : 0);
  PlaceId counter = b.add_place("counter", budget);
  PlaceId spent = b.add_place("counter'");

  // An error only surfaces while the budget is untouched: explaining or a
  // pending reset blocks new errors until the robot is back in balance.
  TransitionId error_action = b.add_transition("error_action");
  b.add_input(normal, error_action);
  b.add_read(counter, error_action, budget);
  b.add_output(error_action, error_occurred);

  // One explanation per budget token, through the modality matching the
  // user's current context. The spent token is banked on counter'.
  auto explain = [&](const std::string& name, PlaceId context_place) {
    TransitionId t = b.add_transition(name);
    b.add_input(error_occurred, t);
    b.add_input(counter, t);
    b.add_read(context_place, t);
    b.add_output(t, user_informed);
    b.add_output(t, spent);
    return t;
  };
  explain("explain_speech", not_present);
  explain("explain_speech_light", attention);
  explain("explain_speech_sound", no_attention);

  TransitionId act = b.add_transition("act");
  b.add_input(user_informed, act);
  b.add_output(act, normal);

  TransitionId ignore = b.add_transition("ignore");
  b.add_input(user_informed, ignore);
  b.add_output(ignore, error_occurred);

  // A fully spent budget forces the shutdown path and refills the counter.
  TransitionId switch_off = b.add_transition("switch_off");
  b.add_input(error_occurred, switch_off);
  b.add_input(spent, switch_off, budget);
  b.add_output(switch_off, idle);
  b.add_output(switch_off, counter, budget);

  TransitionId restart = b.add_transition("restart");
  b.add_input(idle, restart);
  b.add_output(restart, normal);

  // While running normally the budget trickles back one token at a time.
  TransitionId reset = b.add_transition("reset");
  b.add_input(spent, reset);
  b.add_read(normal, reset);
  b.add_output(reset, counter);

  TransitionId lose_attention = b.add_transition("lose_attention");
  b.add_input(attention, lose_attention);
  b.add_output(lose_attention, no_attention);

  TransitionId gain_attention = b.add_transition("gain_attention");
  b.add_input(no_attention, gain_attention);
  b.add_output(gain_attention, attention);

  TransitionId leave_attentive = b.add_transition("leave_attentive");
  b.add_input(attention, leave_attentive);
  b.add_output(leave_attentive, not_present);

  TransitionId leave_inattentive = b.add_transition("leave_inattentive");
  b.add_input(no_attention, leave_inattentive);
  b.add_output(leave_inattentive, not_present);

  TransitionId arrive = b.add_transition("arrive");
  b.add_input(not_present, arrive);
  b.add_output(arrive, no_attention);

  return b.build();
}

namespace {

// tokens(counter) = B & tokens(counter') = 0 | ... for every split of the budget
std::string counter_split_formula(std::uint64_t budget) {
  std::string out;
  for (std::uint64_t spent = 0; spent <= budget; ++spent) {
    if (!out.empty()) out += " | ";
    out += "(tokens(counter) = " + std::to_string(budget - spent) + " & tokens(counter') = " +
           std::to_string(spent) + ")";
  }
  return out;
}

std::string context_split_formula() {
  const char* names[] = {"attention", "no_attention", "not_present"};
  std::string out;
  for (int marked = 0; marked < 3; ++marked) {
    if (!out.empty()) out += " | ";
    out += "(";
    for (int p = 0; p < 3; ++p) {
      if (p) out += " & ";
      out += std::string("tokens(") + names[p] + ") = " + (p == marked ? "1" : "0");
    }
    out += ")";
  }
  return out;
}

}  // namespace

PropertySuite property_suite(const ScenarioConfig& cfg) {
  const std::string budget = std::to_string(cfg.explanation_budget);
  PropertySuite suite;
  auto ctl = [&suite](std::string name, std::string description, std::string formula) {
    PropertyCheck c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.kind = PropertyCheck::Kind::ctl;
    c.formula = std::move(formula);
    suite.checks.push_back(std::move(c));
  };

  ctl("deadlock_free", "the robot can always do something", "AG !deadlock");
  ctl("idle_reachable", "the forced-shutdown state is reachable", "EF tokens(p2) = 1");
  ctl("restartable", "a switched-off robot can always come back",
      "AG (tokens(p2) = 1 -> EF tokens(normal) = 1)");

  PropertyCheck bound;
  bound.name = "counter_bounded";
  bound.description = "no more than the budget is ever spent";
  bound.kind = PropertyCheck::Kind::place_bound;
  bound.place = "counter'";
  bound.bound = cfg.explanation_budget;
  suite.checks.push_back(std::move(bound));

  ctl("fairness", "an informed user can always be acted for",
      "AG (tokens(user_informed) >= 1 -> enabled(act))");
  ctl("safety_no_premature_shutdown", "switching off needs the whole budget spent",
      "AG (enabled(switch_off) -> tokens(counter') = " + budget + ")");
  ctl("modality_attention", "the light modality fires only for a watching user",
      "AG (enabled(explain_speech_light) -> (tokens(attention) = 1 & tokens(not_present) = 0))");
  ctl("modality_exclusive", "no two explanation modalities are offered at once",
      "AG !(enabled(explain_speech_light) & enabled(explain_speech_sound)) & "
      "AG !(enabled(explain_speech_light) & enabled(explain_speech)) & "
      "AG !(enabled(explain_speech_sound) & enabled(explain_speech))");
  ctl("modality_reachable", "every explanation modality is reachable",
      "EF enabled(explain_speech) & EF enabled(explain_speech_light) & "
      "EF enabled(explain_speech_sound)");

  PropertyCheck live;
  live.name = "act_ignore_live";
  live.description = "the user can always still act on or ignore an explanation";
  live.kind = PropertyCheck::Kind::transition_live;
  live.transitions = {"act", "ignore"};
  suite.checks.push_back(std::move(live));

  PropertyCheck context_inv;
  context_inv.name = "context_invariant";
  context_inv.description = "the user is in exactly one context";
  context_inv.kind = PropertyCheck::Kind::place_invariant;
  context_inv.support = {"attention", "no_attention", "not_present"};
  context_inv.constant = 1;
  suite.checks.push_back(std::move(context_inv));

  PropertyCheck counter_inv;
  counter_inv.name = "counter_invariant";
  counter_inv.description = "spent and remaining budget always add up";
  counter_inv.kind = PropertyCheck::Kind::place_invariant;
  counter_inv.support = {"counter", "counter'"};
  counter_inv.constant = cfg.explanation_budget;
  suite.checks.push_back(std::move(counter_inv));

  ctl("shutdown_forced", "a spent budget leaves only the shutdown",
      "AG ((tokens(error_occurred) = 1 & tokens(counter') = " + budget +
          ") -> (enabled(switch_off) & !enabled(explain_speech) & "
          "!enabled(explain_speech_light) & !enabled(explain_speech_sound)))");
  return suite;
}

std::vector<PropertyOutcome> run_suite(const Net& net, const PropertySuite& suite,
                                       std::size_t limit) {
  ReachabilityGraph g = explore(net, limit);
  std::vector<PropertyOutcome> out;
  std::vector<InvariantVector> invariants;
  bool invariants_ready = false;
  for (const PropertyCheck& c : suite.checks) {
    PropertyOutcome result;
    result.name = c.name;
    switch (c.kind) {
      case PropertyCheck::Kind::ctl: {
        Verdict v = check(net, g, *parse_formula(c.formula));
        result.holds = v.holds;
        result.trace = v.trace;
        break;
      }
      case PropertyCheck::Kind::place_bound: {
        std::optional<PlaceId> p = net.find_place(c.place);
        if (!p) throw NetError("suite references unknown place '" + c.place + "'");
        result.holds = place_bounds(g)[p->value] <= c.bound;
        break;
      }
      case PropertyCheck::Kind::transition_live: {
        LivenessReport report = liveness(g);
        result.holds = true;
        for (const std::string& name : c.transitions) {
          std::optional<TransitionId> t = net.find_transition(name);
          if (!t) throw NetError("suite references unknown transition '" + name + "'");
          if (report.transitions[t->value] != LivenessClass::live) result.holds = false;
        }
        break;
      }
      case PropertyCheck::Kind::place_invariant: {
        if (!invariants_ready) {
          invariants = p_invariants(net);
          invariants_ready = true;
        }
        InvariantVector wanted;
        wanted.kind = InvariantVector::Kind::place;
        wanted.weights.assign(net.place_count(), 0);
        for (const std::string& name : c.support) {
          std::optional<PlaceId> p = net.find_place(name);
          if (!p) throw NetError("suite references unknown place '" + name + "'");
          wanted.weights[p->value] = 1;
        }
        bool generated =
            std::find(invariants.begin(), invariants.end(), wanted) != invariants.end();
        InvariantCheck ic = check_p_invariant(net, wanted, g);
        result.holds = generated && ic.holds() && ic.constant == c.constant;
        break;
      }
    }
    out.push_back(std::move(result));
  }
  return out;
}

std::string property_file_text(const ScenarioConfig& cfg) {
  PropertySuite suite = property_suite(cfg);
  std::string out;
  for (const PropertyCheck& c : suite.checks) {
    out += "# " + c.description + "\n";
    out += c.name + " : ";
    switch (c.kind) {
      case PropertyCheck::Kind::ctl:
        out += c.formula;
        break;
      case PropertyCheck::Kind::place_bound:
        out += "AG tokens(" + c.place + ") <= " + std::to_string(c.bound);
        break;
      case PropertyCheck::Kind::transition_live: {
        bool first = true;
        for (const std::string& name : c.transitions) {
          if (!first) out += " & ";
          first = false;
          out += "AG EF enabled(" + name + ")";
        }
        break;
      }
      case PropertyCheck::Kind::place_invariant:
        if (c.name == "counter_invariant")
          out += "AG (" + counter_split_formula(cfg.explanation_budget) + ")";
        else
          out += "AG (" + context_split_formula() + ")";
        break;
    }
    out += "\n";
  }
  return out;
}

Census scenario_statespace_census(const ScenarioConfig& cfg, std::size_t limit) {
  ReachabilityGraph g = explore(build_scenario(cfg), limit);
  if (!g.complete())
    throw StateLimitError("scenario census needs the complete state space");
  return Census{g.states.size(), g.edges.size()};
}

}  // namespace pnv
