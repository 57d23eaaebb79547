#include "pnv/net.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <utility>

namespace pnv {

namespace {

constexpr TokenCount kMaxWeight = std::numeric_limits<std::uint32_t>::max();

int kind_rank(ArcKind k) {
  switch (k) {
    case ArcKind::input:
      return 0;
    case ArcKind::read:
      return 1;
    case ArcKind::output:
      return 2;
  }
  return 3;
}

}  // namespace

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9') || c == '\''; };
  if (!head(name[0])) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!tail(name[i])) return false;
  return true;
}

bool Marking::covers(const Marking& other) const {
  if (counts_.size() != other.counts_.size())
    throw NetError("cannot compare markings of different nets");
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] < other.counts_[i]) return false;
  return true;
}

Step::Step(std::vector<TransitionId> transitions) : transitions_(std::move(transitions)) {
  if (transitions_.empty()) throw NetError("a step needs at least one transition");
  std::sort(transitions_.begin(), transitions_.end());
  if (std::adjacent_find(transitions_.begin(), transitions_.end()) != transitions_.end())
    throw NetError("a step cannot contain the same transition twice");
}

const std::string& Net::place_name(PlaceId p) const {
  check_place(p);
  return place_names_[p.value];
}

const std::string& Net::transition_name(TransitionId t) const {
  check_transition(t);
  return transition_names_[t.value];
}

std::optional<PlaceId> Net::find_place(std::string_view name) const {
  for (std::size_t i = 0; i < place_names_.size(); ++i)
    if (place_names_[i] == name) return PlaceId{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

std::optional<TransitionId> Net::find_transition(std::string_view name) const {
  for (std::size_t i = 0; i < transition_names_.size(); ++i)
    if (transition_names_[i] == name) return TransitionId{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

std::span<const PlaceWeight> Net::inputs(TransitionId t) const {
  check_transition(t);
  return io_[t.value].inputs;
}

std::span<const PlaceWeight> Net::reads(TransitionId t) const {
  check_transition(t);
  return io_[t.value].reads;
}

std::span<const PlaceWeight> Net::outputs(TransitionId t) const {
  check_transition(t);
  return io_[t.value].outputs;
}

void Net::check_place(PlaceId p) const {
  if (p.value >= place_names_.size())
    throw NetError("place id " + std::to_string(p.value) + " out of range");
}

void Net::check_transition(TransitionId t) const {
  if (t.value >= transition_names_.size())
    throw NetError("transition id " + std::to_string(t.value) + " out of range");
}

void Net::check_marking(const Marking& m) const {
  if (m.size() != place_count())
    throw NetError("marking has " + std::to_string(m.size()) + " places, net has " +
                   std::to_string(place_count()));
}

bool Net::is_enabled(const Marking& m, TransitionId t) const {
  check_transition(t);
  check_marking(m);
  const TransitionIo& io = io_[t.value];
  for (const PlaceWeight& pw : io.inputs)
    if (m.at(pw.place) < pw.weight) return false;
  for (const PlaceWeight& pw : io.reads)
    if (m.at(pw.place) < pw.weight) return false;
  return true;
}

Marking Net::fire(const Marking& m, TransitionId t) const {
  if (!is_enabled(m, t))
    throw NetError("transition '" + transition_names_[t.value] + "' is not enabled");
  Marking out = m;
  const TransitionIo& io = io_[t.value];
  for (const PlaceWeight& pw : io.inputs) out.set(pw.place, out.at(pw.place) - pw.weight);
  for (const PlaceWeight& pw : io.outputs) out.set(pw.place, out.at(pw.place) + pw.weight);
  return out;
}

std::vector<TransitionId> Net::enabled_set(const Marking& m) const {
  check_marking(m);
  std::vector<TransitionId> out;
  for (std::uint32_t i = 0; i < transition_count(); ++i) {
    TransitionId t{i};
    if (is_enabled(m, t)) out.push_back(t);
  }
  return out;
}

bool Net::step_enabled(const Marking& m, const Step& s) const {
  check_marking(m);
  for (TransitionId t : s.transitions()) check_transition(t);
  // Per place: summed consumption of all members plus the largest read weight.
  std::vector<TokenCount> consume(place_count(), 0);
  std::vector<TokenCount> read_max(place_count(), 0);
  for (TransitionId t : s.transitions()) {
    const TransitionIo& io = io_[t.value];
    for (const PlaceWeight& pw : io.inputs) consume[pw.place.value] += pw.weight;
    for (const PlaceWeight& pw : io.reads)
      read_max[pw.place.value] = std::max(read_max[pw.place.value], pw.weight);
  }
  for (std::size_t p = 0; p < place_count(); ++p)
    if (m.counts()[p] < consume[p] + read_max[p]) return false;
  return true;
}

Marking Net::fire_step(const Marking& m, const Step& s) const {
  if (!step_enabled(m, s)) throw NetError("step is not enabled");
  Marking out = m;
  for (TransitionId t : s.transitions()) {
    const TransitionIo& io = io_[t.value];
    for (const PlaceWeight& pw : io.inputs) out.set(pw.place, out.at(pw.place) - pw.weight);
  }
  for (TransitionId t : s.transitions()) {
    const TransitionIo& io = io_[t.value];
    for (const PlaceWeight& pw : io.outputs) out.set(pw.place, out.at(pw.place) + pw.weight);
  }
  return out;
}

bool Net::in_conflict(const Marking& m, TransitionId t1, TransitionId t2) const {
  if (t1 == t2) throw NetError("conflict is defined for two distinct transitions");
  if (!is_enabled(m, t1) || !is_enabled(m, t2)) return false;
  return !step_enabled(m, Step({t1, t2}));
}

bool Net::are_concurrent(const Marking& m, TransitionId t1, TransitionId t2) const {
  if (t1 == t2) throw NetError("concurrency is defined for two distinct transitions");
  return step_enabled(m, Step({t1, t2}));
}

NetBuilder::NetBuilder(std::string name) : name_(std::move(name)) {
  if (!is_valid_identifier(name_)) throw NetError("invalid net name '" + name_ + "'");
}

PlaceId NetBuilder::add_place(std::string name, TokenCount initial) {
  if (!is_valid_identifier(name)) throw NetError("invalid place name '" + name + "'");
  for (const std::string& existing : place_names_)
    if (existing == name) throw NetError("duplicate place name '" + name + "'");
  if (initial > kMaxWeight)
    throw NetError("initial count of place '" + name + "' is too large");
  place_names_.push_back(std::move(name));
  initial_.push_back(initial);
  return PlaceId{static_cast<std::uint32_t>(place_names_.size() - 1)};
}

TransitionId NetBuilder::add_transition(std::string name) {
  if (!is_valid_identifier(name)) throw NetError("invalid transition name '" + name + "'");
  for (const std::string& existing : transition_names_)
    if (existing == name) throw NetError("duplicate transition name '" + name + "'");
  transition_names_.push_back(std::move(name));
  return TransitionId{static_cast<std::uint32_t>(transition_names_.size() - 1)};
}

void NetBuilder::add_arc(PlaceId p, TransitionId t, ArcKind kind, TokenCount weight) {
  if (p.value >= place_names_.size()) throw NetError("arc references unknown place");
  if (t.value >= transition_names_.size()) throw NetError("arc references unknown transition");
  if (weight == 0)
    throw NetError("arc between '" + place_names_[p.value] + "' and '" +
                   transition_names_[t.value] + "' has zero weight");
  if (weight > kMaxWeight) throw NetError("arc weight is too large");
  for (const Arc& a : arcs_) {
    if (a.place != p || a.transition != t) continue;
    if (a.kind == kind)
      throw NetError("duplicate " + std::string(kind == ArcKind::input    ? "input"
                                                : kind == ArcKind::output ? "output"
                                                                          : "read") +
                     " arc between '" + place_names_[p.value] + "' and '" +
                     transition_names_[t.value] + "'");
    bool mixes_input_and_read = (a.kind == ArcKind::input && kind == ArcKind::read) ||
                                (a.kind == ArcKind::read && kind == ArcKind::input);
    if (mixes_input_and_read)
      throw NetError("place '" + place_names_[p.value] + "' has both an input and a read arc to '" +
                     transition_names_[t.value] + "'");
  }
  arcs_.push_back(Arc{p, t, kind, weight});
}

NetBuilder& NetBuilder::add_input(PlaceId p, TransitionId t, TokenCount weight) {
  add_arc(p, t, ArcKind::input, weight);
  return *this;
}

NetBuilder& NetBuilder::add_output(TransitionId t, PlaceId p, TokenCount weight) {
  add_arc(p, t, ArcKind::output, weight);
  return *this;
}

NetBuilder& NetBuilder::add_read(PlaceId p, TransitionId t, TokenCount weight) {
  add_arc(p, t, ArcKind::read, weight);
  return *this;
}

TokenCount NetBuilder::output_weight(TransitionId t, PlaceId p) const {
  for (const Arc& a : arcs_)
    if (a.kind == ArcKind::output && a.place == p && a.transition == t) return a.weight;
  return 0;
}

Net NetBuilder::build() const {
  Net net;
  net.name_ = name_;
  net.place_names_ = place_names_;
  net.transition_names_ = transition_names_;
  net.initial_ = Marking(initial_);
  net.arcs_ = arcs_;
  std::sort(net.arcs_.begin(), net.arcs_.end(), [](const Arc& a, const Arc& b) {
    if (a.transition != b.transition) return a.transition < b.transition;
    if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
    return a.place < b.place;
  });
  net.io_.resize(transition_names_.size());
  for (const Arc& a : net.arcs_) {
    Net::TransitionIo& io = net.io_[a.transition.value];
    switch (a.kind) {
      case ArcKind::input:
        io.inputs.push_back({a.place, a.weight});
        break;
      case ArcKind::read:
        io.reads.push_back({a.place, a.weight});
        break;
      case ArcKind::output:
        io.outputs.push_back({a.place, a.weight});
        break;
    }
  }
  return net;
}

}  // namespace pnv
