#pragma once

#include <string>
#include <string_view>

#include "pnv/net.hpp"

namespace pnv {

// Line-oriented net description:
//
//   net weighted {
//     places { p0 = 2; p1 = 3; p2; }
//     transitions { t0; }
//     arcs { p0 -> t0; p1 -3-> t0; t0 -2-> p2; }
//   }
//
// `=' sets the initial count (default 0), `-N->' a weighted arc, `..>' and
// `..N..>' read arcs (place to transition only). `#' starts a comment.
// Throws ParseError with 1-based line/column on any malformed input.
Net parse_net(std::string_view text);

// Canonical rendering: declaration order, weight 1 and count 0 elided, arcs
// grouped per transition as inputs, reads, outputs. parse_net(serialize_net(n))
// is structurally identical to n.
std::string serialize_net(const Net& net);

// Marking literal, e.g. "{2 p0, 3 p1}" or "{}"; listed counts must be >= 1.
Marking parse_marking(const Net& net, std::string_view text);

// Inverse rendering: places in id order, zero counts omitted, count 1 elided.
std::string format_marking(const Net& net, const Marking& m);

// Graphviz digraph: places as circles labeled with their token count,
// transitions as boxes, read arcs dashed. Output is deterministic.
std::string to_dot(const Net& net, const Marking& m);

}  // namespace pnv
