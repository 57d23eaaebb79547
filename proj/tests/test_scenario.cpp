#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pnv/ctl.hpp"
#include "pnv/dsl.hpp"
#include "pnv/errors.hpp"
#include "pnv/scenario.hpp"
#include "pnv/statespace.hpp"

using namespace pnv;

namespace {

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScenarioConfig with_context(Context c) {
  ScenarioConfig cfg;
  cfg.initial_context = c;
  return cfg;
}

}  // namespace

TEST_CASE("context names") {
  CHECK(context_name(Context::attention) == "attention");
  CHECK(context_name(Context::no_attention) == "no_attention");
  CHECK(context_name(Context::not_present) == "not_present");
  CHECK(parse_context("attention") == Context::attention);
  CHECK(parse_context("no_attention") == Context::no_attention);
  CHECK(parse_context("not_present") == Context::not_present);
  CHECK_FALSE(parse_context("nope").has_value());
  CHECK_FALSE(parse_context("").has_value());
}

TEST_CASE("the net lists robot state, context and budget places in order") {
  Net net = build_scenario({});
  std::vector<std::string> places;
  for (std::size_t p = 0; p < net.place_count(); ++p)
    places.emplace_back(net.place_name(PlaceId{static_cast<std::uint32_t>(p)}));
  CHECK(places == std::vector<std::string>{"normal", "error_occurred", "user_informed", "p2",
                                           "attention", "no_attention", "not_present",
                                           "counter", "counter'"});

  std::vector<std::string> transitions;
  for (std::size_t t = 0; t < net.transition_count(); ++t)
    transitions.emplace_back(net.transition_name(TransitionId{static_cast<std::uint32_t>(t)}));
  CHECK(transitions == std::vector<std::string>{
                           "error_action", "explain_speech", "explain_speech_light",
                           "explain_speech_sound", "act", "ignore", "switch_off", "restart",
                           "reset", "lose_attention", "gain_attention", "leave_attentive",
                           "leave_inattentive", "arrive"});
}

TEST_CASE("the initial marking tracks the configured context") {
  Net base = build_scenario({});
  CHECK(format_marking(base, base.initial_marking()) == "{normal, attention, 3 counter}");

  Net away = build_scenario(with_context(Context::no_attention));
  CHECK(format_marking(away, away.initial_marking()) == "{normal, no_attention, 3 counter}");

  Net gone = build_scenario(with_context(Context::not_present));
  CHECK(format_marking(gone, gone.initial_marking()) == "{normal, not_present, 3 counter}");

  std::vector<std::string> enabled;
  for (TransitionId t : base.enabled_set(base.initial_marking()))
    enabled.emplace_back(base.transition_name(t));
  CHECK(enabled == std::vector<std::string>{"error_action", "lose_attention", "leave_attentive"});
}

TEST_CASE("the explanation budget rules the statespace size") {
  CHECK(scenario_statespace_census({}).states == 36);
  CHECK(scenario_statespace_census({}).edges == 105);

  ScenarioConfig cfg;
  cfg.explanation_budget = 1;
  CHECK(scenario_statespace_census(cfg).states == 18);
  CHECK(scenario_statespace_census(cfg).edges == 51);
  cfg.explanation_budget = 2;
  CHECK(scenario_statespace_census(cfg).states == 27);
  CHECK(scenario_statespace_census(cfg).edges == 78);
  cfg.explanation_budget = 5;
  CHECK(scenario_statespace_census(cfg).states == 54);
  CHECK(scenario_statespace_census(cfg).edges == 159);

  cfg.explanation_budget = 0;
  CHECK_THROWS_WITH_AS(build_scenario(cfg), "the explanation budget must be at least 1",
                       NetError);
}

TEST_CASE("every initial context reaches the same markings") {
  std::set<std::string> sets[3];
  Context contexts[3] = {Context::attention, Context::no_attention, Context::not_present};
  for (int i = 0; i < 3; ++i) {
    Net net = build_scenario(with_context(contexts[i]));
    ReachabilityGraph g = explore(net);
    REQUIRE(g.complete());
    for (const Marking& m : g.states) sets[i].insert(format_marking(net, m));
  }
  CHECK(sets[0].size() == 36);
  CHECK(sets[0] == sets[1]);
  CHECK(sets[1] == sets[2]);
}

TEST_CASE("generated net and property file match the frozen fixtures") {
  CHECK(serialize_net(build_scenario({})) == fixture_text("scenario.pn"));
  CHECK(property_file_text({}) == fixture_text("scenario.props"));

  Net reparsed = parse_net(serialize_net(build_scenario({})));
  CHECK(reparsed == build_scenario({}));
}

TEST_CASE("the thirteen checks and their kinds") {
  PropertySuite suite = property_suite({});
  std::vector<std::string> names;
  for (const PropertyCheck& c : suite.checks) {
    names.push_back(c.name);
    CHECK(c.expected);
    CHECK_FALSE(c.description.empty());
  }
  CHECK(names == std::vector<std::string>{
                     "deadlock_free", "idle_reachable", "restartable", "counter_bounded",
                     "fairness", "safety_no_premature_shutdown", "modality_attention",
                     "modality_exclusive", "modality_reachable", "act_ignore_live",
                     "context_invariant", "counter_invariant", "shutdown_forced"});

  int ctl = 0, bound = 0, live = 0, inv = 0;
  for (const PropertyCheck& c : suite.checks) {
    switch (c.kind) {
      case PropertyCheck::Kind::ctl: ++ctl; break;
      case PropertyCheck::Kind::place_bound: ++bound; break;
      case PropertyCheck::Kind::transition_live: ++live; break;
      case PropertyCheck::Kind::place_invariant: ++inv; break;
    }
  }
  CHECK(ctl == 9);
  CHECK(bound == 1);
  CHECK(live == 1);
  CHECK(inv == 2);

  ScenarioConfig five;
  five.explanation_budget = 5;
  for (const PropertyCheck& c : property_suite(five).checks) {
    if (c.kind == PropertyCheck::Kind::place_bound) {
      CHECK(c.place == "counter'");
      CHECK(c.bound == 5);
    }
    if (c.name == "counter_invariant") CHECK(c.constant == 5);
    if (c.kind == PropertyCheck::Kind::transition_live)
      CHECK(c.transitions == std::vector<std::string>{"act", "ignore"});
  }
}

TEST_CASE("the full suite holds in every initial context") {
  for (Context c : {Context::attention, Context::no_attention, Context::not_present}) {
    Net net = build_scenario(with_context(c));
    std::vector<PropertyOutcome> outcomes = run_suite(net, property_suite(with_context(c)));
    REQUIRE(outcomes.size() == 13);
    for (const PropertyOutcome& o : outcomes) {
      CAPTURE(o.name);
      CHECK(o.holds);
      if (o.trace) {
        Marking m = net.initial_marking();
        for (TransitionId t : *o.trace) {
          REQUIRE(net.is_enabled(m, t));
          m = net.fire(m, t);
        }
      }
    }
  }
}

TEST_CASE("spending the budget forces the robot off and idles the net") {
  Net net = build_scenario({});
  std::vector<PropertyOutcome> outcomes = run_suite(net, property_suite({}));
  const PropertyOutcome* idle = nullptr;
  for (const PropertyOutcome& o : outcomes)
    if (o.name == "idle_reachable") idle = &o;
  REQUIRE(idle != nullptr);
  REQUIRE(idle->trace.has_value());
  CHECK(idle->trace->size() == 8);

  Marking m = net.initial_marking();
  int explanations = 0, ignores = 0;
  for (TransitionId t : *idle->trace) {
    std::string_view name = net.transition_name(t);
    if (name.starts_with("explain_")) ++explanations;
    if (name == "ignore") ++ignores;
    REQUIRE(net.is_enabled(m, t));
    m = net.fire(m, t);
  }
  CHECK(explanations == 3);
  CHECK(ignores == 3);
  CHECK(format_marking(net, m) == "{p2, attention, 3 counter}");

  // the robot is off; only a restart or the user moving can change anything
  std::vector<std::string> still_enabled;
  for (TransitionId t : net.enabled_set(m)) still_enabled.emplace_back(net.transition_name(t));
  CHECK(still_enabled ==
        std::vector<std::string>{"restart", "lose_attention", "leave_attentive"});
}

TEST_CASE("the suite notices a broken net") {
  // drop the refill on switch_off: the counter invariant and bound both break
  NetBuilder b("broken");
  PlaceId on = b.add_place("normal", 1);
  PlaceId off = b.add_place("p2");
  PlaceId budget = b.add_place("counter", 1);
  PlaceId spent = b.add_place("counter'");
  TransitionId burn = b.add_transition("act");
  TransitionId stop = b.add_transition("ignore");
  b.add_input(on, burn).add_input(budget, burn).add_output(burn, on).add_output(burn, spent, 2);
  b.add_input(on, stop).add_output(stop, off);
  Net net = b.build();

  PropertySuite suite;
  PropertyCheck inv;
  inv.name = "counter_invariant";
  inv.kind = PropertyCheck::Kind::place_invariant;
  inv.support = {"counter", "counter'"};
  inv.constant = 1;
  suite.checks.push_back(inv);
  PropertyCheck bound;
  bound.name = "counter_bounded";
  bound.kind = PropertyCheck::Kind::place_bound;
  bound.place = "counter'";
  bound.bound = 1;
  suite.checks.push_back(bound);
  PropertyCheck live;
  live.name = "act_ignore_live";
  live.kind = PropertyCheck::Kind::transition_live;
  live.transitions = {"act", "ignore"};
  suite.checks.push_back(live);

  std::vector<PropertyOutcome> outcomes = run_suite(net, suite);
  REQUIRE(outcomes.size() == 3);
  CHECK_FALSE(outcomes[0].holds);
  CHECK_FALSE(outcomes[1].holds);
  CHECK_FALSE(outcomes[2].holds);
}
