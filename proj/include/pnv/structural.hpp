#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pnv/net.hpp"
#include "pnv/statespace.hpp"

namespace pnv {

// Token-flow matrix: entry(p, t) = produced minus consumed on p when t fires.
// Read arcs contribute nothing.
struct IncidenceMatrix {
  std::size_t places = 0;
  std::size_t transitions = 0;
  std::vector<std::int64_t> entries;  // row-major, places x transitions

  std::int64_t at(std::size_t p, std::size_t t) const { return entries[p * transitions + t]; }
};

IncidenceMatrix incidence(const Net& net);

// Semi-positive invariant vector, normalized by its gcd. For kind == place the
// weighted token sum is constant under firing; for kind == transition the
// vector is a firing-count vector with zero net marking effect.
struct InvariantVector {
  enum class Kind { place, transition };

  Kind kind = Kind::place;
  std::vector<std::uint64_t> weights;  // size: place or transition count

  std::vector<std::uint32_t> support() const;

  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
};

// Generating set of minimal-support nonnegative invariants via Farkas
// elimination, computed in exact arbitrary-precision arithmetic. Ordered
// lexicographically by support.
std::vector<InvariantVector> p_invariants(const Net& net);
std::vector<InvariantVector> t_invariants(const Net& net);

struct InvariantCheck {
  bool algebraic = false;        // weights * C == 0
  bool enumerative = false;      // weighted sum constant across g.states
  std::uint64_t constant = 0;    // the weighted sum at state 0

  bool holds() const { return algebraic && enumerative; }
};

// Dual-route check of a candidate place invariant: the algebraic condition
// and token-sum constancy over the explored states must agree (an algebraic
// yes with an enumerative no is a checker bug and throws std::logic_error).
InvariantCheck check_p_invariant(const Net& net, const InvariantVector& v,
                                 const ReachabilityGraph& g);

}  // namespace pnv
