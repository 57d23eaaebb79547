#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pnv/net.hpp"

namespace pnv {

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;

// Explicit reachability graph. State 0 is the initial marking; states are
// numbered in BFS discovery order with transitions tried in id order, so the
// numbering is deterministic. Edges are grouped by source state.
struct ReachabilityGraph {
  enum class Status { complete, truncated };

  struct Edge {
    std::uint32_t source;
    TransitionId transition;
    std::uint32_t target;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<Marking> states;
  std::vector<Edge> edges;
  std::vector<std::size_t> first_edge;  // CSR offsets, size states.size() + 1
  Status status = Status::complete;
  std::size_t limit = kDefaultStateLimit;
  std::size_t place_count = 0;
  std::size_t transition_count = 0;

  bool complete() const { return status == Status::complete; }
  std::span<const Edge> out_edges(std::uint32_t state) const {
    return std::span<const Edge>(edges).subspan(first_edge[state],
                                                first_edge[state + 1] - first_edge[state]);
  }
};

// Breadth-first exploration from the initial marking. Stops and reports
// Status::truncated the moment one more state would exceed the limit; all
// recorded edges point at recorded states.
ReachabilityGraph explore(const Net& net, std::size_t limit = kDefaultStateLimit);

// Markings with no enabled transition. Requires a complete graph.
std::vector<Marking> deadlocks(const ReachabilityGraph& g);

// Transitions that label no edge. Requires a complete graph.
std::vector<TransitionId> dead_transitions(const ReachabilityGraph& g);

enum class LivenessClass { dead, quasi_live, live };

struct LivenessReport {
  std::vector<LivenessClass> transitions;  // indexed by transition id
  bool deadlock_free = true;
  std::vector<std::uint32_t> dead_states;  // states with no enabled transition
};

// dead: never fires; live: from every reachable marking some marking enabling
// the transition stays reachable; quasi_live: fires somewhere but not live.
// Requires a complete graph.
LivenessReport liveness(const ReachabilityGraph& g);

// Per-place maximum token count over all reachable markings. Requires a
// complete graph.
std::vector<TokenCount> place_bounds(const ReachabilityGraph& g);

// Rewrites every read arc into an input/output self-loop pair of the same
// weight (merging with an existing output arc if present). Firing behaviour
// is identical transition by transition.
Net reads_as_self_loops(const Net& net);

// Coverability tree with omega acceleration, built on the self-loop encoding
// of read arcs. A node whose marking already appears elsewhere in the tree
// stays a leaf; acceleration compares against the node's own ancestors.
struct CoverabilityTree {
  static constexpr TokenCount omega = std::numeric_limits<TokenCount>::max();

  struct Node {
    std::vector<TokenCount> marking;  // omega marks a pumpable place
    std::uint32_t parent;             // root points at itself
    TransitionId via;                 // edge label from parent; root: {0}
    std::vector<std::uint32_t> children;
  };

  std::vector<Node> nodes;  // nodes[0] is the root
  bool bounded = true;
};

CoverabilityTree karp_miller(const Net& net);

// Shortest-witness reachability search.
struct ReachResult {
  enum class Outcome { found, unreachable, limit };

  Outcome outcome = Outcome::unreachable;
  std::vector<TransitionId> witness;  // meaningful when outcome == found
};

ReachResult reachable(const Net& net, const std::function<bool(const Marking&)>& goal,
                      std::size_t limit = kDefaultStateLimit);
ReachResult reachable(const Net& net, const Marking& goal,
                      std::size_t limit = kDefaultStateLimit);

enum class CausalVerdict {
  dependent,          // every firing sequence firing t2 fired t1 strictly earlier
  independent,        // some sequence fires t2 without ever firing t1
  target_never_fires  // t2 fires nowhere in the reachability graph
};

// Behavioural causal dependency of t2 on t1, decided by re-exploring the net
// with t1 removed. Requires the full graph to fit in the limit.
CausalVerdict causally_dependent(const Net& net, TransitionId t1, TransitionId t2,
                                 std::size_t limit = kDefaultStateLimit);

}  // namespace pnv
