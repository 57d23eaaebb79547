#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnv/ctl.hpp"
#include "pnv/net.hpp"
#include "pnv/statespace.hpp"

namespace pnv {

// Where the user is when the run starts: watching the robot, present but
// looking away, or out of the room.
enum class Context { attention, no_attention, not_present };

std::string context_name(Context c);
std::optional<Context> parse_context(std::string_view name);

struct ScenarioConfig {
  Context initial_context = Context::attention;
  std::uint64_t explanation_budget = 3;
};

// Error-explanation workflow of a service robot. The robot cycles through
// normal operation, an error state, and an informed user; each explanation is
// delivered through the modality matching the user's context (speech plus
// light when watching, plus sound when looking away, speech recorded for an
// absent user). A token budget counts explanations: once it is spent the
// robot must switch itself off instead of explaining again; a restart or
// acting on the explanation returns it to normal, and the budget refills on
// switch-off or via reset while running normally.
Net build_scenario(const ScenarioConfig& cfg = {});

struct PropertyCheck {
  enum class Kind {
    ctl,              // formula over the reachability graph
    place_bound,      // max tokens of `place` <= bound
    transition_live,  // every named transition classifies as live
    place_invariant   // weight-1 invariant on `support` with the given constant
  };

  std::string name;
  std::string description;
  Kind kind = Kind::ctl;
  std::string formula;                 // ctl
  std::string place;                   // place_bound
  TokenCount bound = 0;                // place_bound
  std::vector<std::string> transitions;  // transition_live
  std::vector<std::string> support;    // place_invariant
  TokenCount constant = 0;             // place_invariant
  bool expected = true;
};

struct PropertySuite {
  std::vector<PropertyCheck> checks;
};

// The thirteen checks that pin down the intended behaviour. All of them are
// expected to hold for any initial context.
PropertySuite property_suite(const ScenarioConfig& cfg = {});

struct PropertyOutcome {
  std::string name;
  bool holds = false;
  std::optional<std::vector<TransitionId>> trace;
};

std::vector<PropertyOutcome> run_suite(const Net& net, const PropertySuite& suite,
                                       std::size_t limit = kDefaultStateLimit);

// The suite as a property file: structural checks are rendered as equivalent
// formulas so the file stands alone with `pnverify check`.
std::string property_file_text(const ScenarioConfig& cfg = {});

struct Census {
  std::size_t states = 0;
  std::size_t edges = 0;
};

Census scenario_statespace_census(const ScenarioConfig& cfg = {},
                                  std::size_t limit = kDefaultStateLimit);

}  // namespace pnv
