#include "pnv/statespace.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

namespace pnv {

namespace {

void finish_csr(ReachabilityGraph& g) {
  g.first_edge.assign(g.states.size() + 1, 0);
  for (const ReachabilityGraph::Edge& e : g.edges) g.first_edge[e.source + 1]++;
  for (std::size_t i = 1; i < g.first_edge.size(); ++i) g.first_edge[i] += g.first_edge[i - 1];
}

void require_complete(const ReachabilityGraph& g, const char* what) {
  if (!g.complete())
    throw StateLimitError(std::string(what) + " needs the complete state space; exploration "
                          "was cut off at " + std::to_string(g.limit) +
                          " states, rerun with a larger limit");
}

std::vector<std::vector<std::uint32_t>> predecessors(const ReachabilityGraph& g) {
  std::vector<std::vector<std::uint32_t>> pred(g.states.size());
  for (const ReachabilityGraph::Edge& e : g.edges) pred[e.target].push_back(e.source);
  return pred;
}

}  // namespace

ReachabilityGraph explore(const Net& net, std::size_t limit) {
  if (limit == 0) throw NetError("state limit must be positive");
  ReachabilityGraph g;
  g.limit = limit;
  g.place_count = net.place_count();
  g.transition_count = net.transition_count();
  std::unordered_map<Marking, std::uint32_t> index;
  g.states.push_back(net.initial_marking());
  index.emplace(g.states[0], 0);
  for (std::uint32_t s = 0; s < g.states.size() && g.complete(); ++s) {
    Marking m = g.states[s];  // copy; the state vector may grow
    for (std::uint32_t ti = 0; ti < net.transition_count(); ++ti) {
      TransitionId t{ti};
      if (!net.is_enabled(m, t)) continue;
      Marking next = net.fire(m, t);
      auto it = index.find(next);
      if (it == index.end()) {
        if (g.states.size() >= limit) {
          g.status = ReachabilityGraph::Status::truncated;
          break;
        }
        it = index.emplace(std::move(next), static_cast<std::uint32_t>(g.states.size())).first;
        g.states.push_back(it->first);
      }
      g.edges.push_back({s, t, it->second});
    }
  }
  finish_csr(g);
  return g;
}

std::vector<Marking> deadlocks(const ReachabilityGraph& g) {
  require_complete(g, "deadlock search");
  std::vector<Marking> out;
  for (std::uint32_t s = 0; s < g.states.size(); ++s)
    if (g.out_edges(s).empty()) out.push_back(g.states[s]);
  return out;
}

std::vector<TransitionId> dead_transitions(const ReachabilityGraph& g) {
  require_complete(g, "dead-transition search");
  std::vector<char> fires(g.transition_count, 0);
  for (const ReachabilityGraph::Edge& e : g.edges) fires[e.transition.value] = 1;
  std::vector<TransitionId> out;
  for (std::uint32_t t = 0; t < g.transition_count; ++t)
    if (!fires[t]) out.push_back(TransitionId{t});
  return out;
}

LivenessReport liveness(const ReachabilityGraph& g) {
  require_complete(g, "liveness analysis");
  LivenessReport report;
  for (std::uint32_t s = 0; s < g.states.size(); ++s)
    if (g.out_edges(s).empty()) report.dead_states.push_back(s);
  report.deadlock_free = report.dead_states.empty();

  std::vector<std::vector<std::uint32_t>> pred = predecessors(g);
  std::vector<std::vector<std::uint32_t>> enablers(g.transition_count);
  for (const ReachabilityGraph::Edge& e : g.edges) enablers[e.transition.value].push_back(e.source);

  report.transitions.assign(g.transition_count, LivenessClass::dead);
  std::vector<char> seen(g.states.size());
  std::vector<std::uint32_t> stack;
  for (std::uint32_t t = 0; t < g.transition_count; ++t) {
    if (enablers[t].empty()) continue;  // stays dead
    // Live iff every state reaches some state that fires t: backward closure.
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(enablers[t].begin(), enablers[t].end());
    std::size_t reached = 0;
    for (std::uint32_t s : stack) seen[s] = 1;
    while (!stack.empty()) {
      std::uint32_t s = stack.back();
      stack.pop_back();
      ++reached;
      for (std::uint32_t p : pred[s]) {
        if (!seen[p]) {
          seen[p] = 1;
          stack.push_back(p);
        }
      }
    }
    report.transitions[t] =
        reached == g.states.size() ? LivenessClass::live : LivenessClass::quasi_live;
  }
  return report;
}

std::vector<TokenCount> place_bounds(const ReachabilityGraph& g) {
  require_complete(g, "place-bound analysis");
  std::vector<TokenCount> bounds(g.place_count, 0);
  for (const Marking& m : g.states)
    for (std::size_t p = 0; p < g.place_count; ++p)
      bounds[p] = std::max(bounds[p], m.counts()[p]);
  return bounds;
}

Net reads_as_self_loops(const Net& net) {
  NetBuilder b(net.name());
  for (std::uint32_t p = 0; p < net.place_count(); ++p)
    b.add_place(net.place_name(PlaceId{p}), net.initial_marking().at(PlaceId{p}));
  for (std::uint32_t t = 0; t < net.transition_count(); ++t)
    b.add_transition(net.transition_name(TransitionId{t}));
  for (std::uint32_t ti = 0; ti < net.transition_count(); ++ti) {
    TransitionId t{ti};
    for (const PlaceWeight& pw : net.inputs(t)) b.add_input(pw.place, t, pw.weight);
    // A read becomes consume+produce of the same weight; the produced tokens
    // fold into an existing output arc on the same pair.
    std::vector<PlaceWeight> outs(net.outputs(t).begin(), net.outputs(t).end());
    for (const PlaceWeight& pw : net.reads(t)) {
      b.add_input(pw.place, t, pw.weight);
      bool folded = false;
      for (PlaceWeight& out : outs) {
        if (out.place == pw.place) {
          out.weight += pw.weight;
          folded = true;
          break;
        }
      }
      if (!folded) outs.push_back({pw.place, pw.weight});
    }
    std::sort(outs.begin(), outs.end(),
              [](const PlaceWeight& a, const PlaceWeight& b) { return a.place < b.place; });
    for (const PlaceWeight& out : outs) b.add_output(t, out.place, out.weight);
  }
  return b.build();
}

namespace {

using ExtMarking = std::vector<TokenCount>;

constexpr TokenCount kOmega = CoverabilityTree::omega;

bool ext_enabled(const Net& net, const ExtMarking& m, TransitionId t) {
  for (const PlaceWeight& pw : net.inputs(t))
    if (m[pw.place.value] != kOmega && m[pw.place.value] < pw.weight) return false;
  return true;
}

ExtMarking ext_fire(const Net& net, const ExtMarking& m, TransitionId t) {
  ExtMarking out = m;
  for (const PlaceWeight& pw : net.inputs(t))
    if (out[pw.place.value] != kOmega) out[pw.place.value] -= pw.weight;
  for (const PlaceWeight& pw : net.outputs(t))
    if (out[pw.place.value] != kOmega) out[pw.place.value] += pw.weight;
  return out;
}

// true iff a <= b pointwise, treating omega as the top element
bool ext_le(const ExtMarking& a, const ExtMarking& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == kOmega && b[i] != kOmega) return false;
    if (a[i] != kOmega && b[i] != kOmega && a[i] > b[i]) return false;
  }
  return true;
}

}  // namespace

CoverabilityTree karp_miller(const Net& original) {
  Net net = reads_as_self_loops(original);
  CoverabilityTree tree;
  tree.nodes.push_back({net.initial_marking().counts(), 0, TransitionId{0}, {}});
  std::set<ExtMarking> expanded;
  std::vector<std::uint32_t> work{0};
  std::size_t head = 0;
  while (head < work.size()) {
    std::uint32_t n = work[head++];
    ExtMarking m = tree.nodes[n].marking;
    // A marking expanded once stays a leaf on every later appearance.
    if (!expanded.insert(m).second) continue;
    for (std::uint32_t ti = 0; ti < net.transition_count(); ++ti) {
      TransitionId t{ti};
      if (!ext_enabled(net, m, t)) continue;
      ExtMarking next = ext_fire(net, m, t);
      // Accelerate: a strictly covered ancestor pumps every grown place to omega.
      bool changed = true;
      while (changed) {
        changed = false;
        std::uint32_t a = n;
        while (true) {
          const ExtMarking& am = tree.nodes[a].marking;
          if (ext_le(am, next) && am != next) {
            for (std::size_t p = 0; p < next.size(); ++p) {
              if (next[p] != kOmega && am[p] < next[p]) {
                next[p] = kOmega;
                changed = true;
              }
            }
          }
          if (a == 0) break;
          a = tree.nodes[a].parent;
        }
      }
      std::uint32_t child = static_cast<std::uint32_t>(tree.nodes.size());
      tree.nodes.push_back({std::move(next), n, t, {}});
      tree.nodes[n].children.push_back(child);
      work.push_back(child);
    }
  }
  for (const CoverabilityTree::Node& node : tree.nodes)
    for (TokenCount c : node.marking)
      if (c == kOmega) tree.bounded = false;
  return tree;
}

ReachResult reachable(const Net& net, const std::function<bool(const Marking&)>& goal,
                      std::size_t limit) {
  if (limit == 0) throw NetError("state limit must be positive");
  std::vector<Marking> states{net.initial_marking()};
  std::unordered_map<Marking, std::uint32_t> index{{states[0], 0}};
  std::vector<std::pair<std::uint32_t, TransitionId>> parent{{0, TransitionId{0}}};
  auto witness_to = [&](std::uint32_t s) {
    std::vector<TransitionId> w;
    for (std::uint32_t cur = s; cur != 0; cur = parent[cur].first)
      w.push_back(parent[cur].second);
    std::reverse(w.begin(), w.end());
    return ReachResult{ReachResult::Outcome::found, std::move(w)};
  };
  if (goal(states[0])) return witness_to(0);
  for (std::uint32_t s = 0; s < states.size(); ++s) {
    Marking m = states[s];
    for (std::uint32_t ti = 0; ti < net.transition_count(); ++ti) {
      TransitionId t{ti};
      if (!net.is_enabled(m, t)) continue;
      Marking next = net.fire(m, t);
      if (index.contains(next)) continue;
      if (states.size() >= limit) return {ReachResult::Outcome::limit, {}};
      std::uint32_t id = static_cast<std::uint32_t>(states.size());
      index.emplace(next, id);
      states.push_back(std::move(next));
      parent.push_back({s, t});
      // BFS discovery order: the first hit is a shortest witness.
      if (goal(states[id])) return witness_to(id);
    }
  }
  return {ReachResult::Outcome::unreachable, {}};
}

ReachResult reachable(const Net& net, const Marking& goal, std::size_t limit) {
  if (goal.size() != net.place_count())
    throw NetError("goal marking has the wrong number of places");
  return reachable(
      net, [&goal](const Marking& m) { return m == goal; }, limit);
}

namespace {

// Does target ever fire when banned is never allowed to fire?
bool fires_without(const Net& net, TransitionId banned, TransitionId target, std::size_t limit) {
  std::vector<Marking> states{net.initial_marking()};
  std::unordered_map<Marking, std::uint32_t> index{{states[0], 0}};
  for (std::uint32_t s = 0; s < states.size(); ++s) {
    Marking m = states[s];
    if (net.is_enabled(m, target)) return true;
    for (std::uint32_t ti = 0; ti < net.transition_count(); ++ti) {
      TransitionId t{ti};
      if (t == banned || !net.is_enabled(m, t)) continue;
      Marking next = net.fire(m, t);
      if (index.contains(next)) continue;
      if (states.size() >= limit)
        throw StateLimitError("causal-dependency search was cut off at " +
                              std::to_string(limit) + " states, rerun with a larger limit");
      index.emplace(next, static_cast<std::uint32_t>(states.size()));
      states.push_back(std::move(next));
    }
  }
  return false;
}

}  // namespace

CausalVerdict causally_dependent(const Net& net, TransitionId t1, TransitionId t2,
                                 std::size_t limit) {
  ReachabilityGraph g = explore(net, limit);
  require_complete(g, "causal-dependency analysis");
  bool t2_fires = false;
  for (const ReachabilityGraph::Edge& e : g.edges)
    if (e.transition == t2) t2_fires = true;
  if (!t2_fires) return CausalVerdict::target_never_fires;
  // A transition cannot strictly precede itself.
  if (t1 == t2) return CausalVerdict::independent;
  return fires_without(net, t1, t2, limit) ? CausalVerdict::independent
                                           : CausalVerdict::dependent;
}

}  // namespace pnv
