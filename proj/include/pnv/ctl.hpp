#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnv/net.hpp"
#include "pnv/statespace.hpp"

namespace pnv {

enum class Cmp { lt, le, eq, ge, gt };

// Immutable formula tree. Place and transition names in atoms are resolved
// against a net at check time, not at parse time.
struct Formula {
  enum class Kind {
    truth,        // true / false, selected by `value`
    deadlock,     // no transition enabled
    tokens,       // tokens(place) cmp bound
    enabled,      // enabled(transition)
    negation,     // !f
    conjunction,  // f & g
    disjunction,  // f | g
    implication,  // f -> g
    ex, ef, eg,   // exists a successor / a path eventually / a path globally
    ax, af, ag,   // over all successors / paths
    eu, au        // E[f U g], A[f U g]
  };

  Kind kind = Kind::truth;
  bool value = false;                  // truth
  std::string name;                    // tokens, enabled
  Cmp cmp = Cmp::eq;                   // tokens
  std::uint64_t bound = 0;             // tokens
  std::shared_ptr<const Formula> lhs;  // unary operand or left operand
  std::shared_ptr<const Formula> rhs;
};

using FormulaPtr = std::shared_ptr<const Formula>;

// Grammar, loosest to tightest: `->` (right-assoc), `|`, `&`, then unary
// `!` EX EF EG AX AF AG, then atoms, `E[f U g]`, `A[f U g]` and parentheses.
// Atoms: tokens(name) < | <= | = | >= | > NAT, enabled(name), deadlock,
// true, false.
FormulaPtr parse_formula(std::string_view text);

// Minimally parenthesized rendering; parse(to_string(f)) is equivalent to f.
std::string to_string(const Formula& f);

// True when f carries no temporal operator, so one marking decides it.
bool is_state_predicate(const Formula& f);

// Evaluates a temporal-free formula at one marking. Throws NetError on
// unresolved names, std::logic_error if f is temporal.
bool eval_state_predicate(const Net& net, const Marking& m, const Formula& f);

struct Verdict {
  bool holds = false;
  // Witness of a held existential top level, or counterexample of a refuted
  // universal one. Replays validly from the initial marking; the final state
  // satisfies (witness) or violates (counterexample) the operand.
  std::optional<std::vector<TransitionId>> trace;
};

// Fixpoint labeling over g. Deadlock states are terminal: EX is false there,
// AX vacuously true. A truncated g serves only the existential-positive
// fragment (atoms, &, |, EX, EF, EU) and only a "holds" answer; anything
// else raises StateLimitError.
Verdict check(const Net& net, const ReachabilityGraph& g, const Formula& f);

// States satisfying f, indexed like g.states. Requires a complete graph.
std::vector<bool> satisfying_states(const Net& net, const ReachabilityGraph& g, const Formula& f);

// AG EF enabled(t): from every reachable marking t can still fire eventually.
Verdict check_liveness_query(const Net& net, const ReachabilityGraph& g, TransitionId t);

// One `name : formula` entry per line; # starts a comment.
struct NamedProperty {
  std::string name;
  std::string source;  // formula text as written
  FormulaPtr formula;
};

std::vector<NamedProperty> parse_properties(std::string_view text);

}  // namespace pnv
