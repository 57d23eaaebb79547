#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pnv/errors.hpp"

namespace pnv {

using TokenCount = std::uint64_t;

struct PlaceId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(PlaceId, PlaceId) = default;
};

struct TransitionId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(TransitionId, TransitionId) = default;
};

// Names accepted for places, transitions and nets: [A-Za-z_][A-Za-z0-9_']*
bool is_valid_identifier(std::string_view name);

// Token multiset over the places of one net, indexed by PlaceId. Value type,
// ordered lexicographically and hashable so it can key state sets.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::size_t place_count) : counts_(place_count, 0) {}
  explicit Marking(std::vector<TokenCount> counts) : counts_(std::move(counts)) {}

  std::size_t size() const { return counts_.size(); }
  TokenCount at(PlaceId p) const { return counts_.at(p.value); }
  void set(PlaceId p, TokenCount n) { counts_.at(p.value) = n; }
  const std::vector<TokenCount>& counts() const { return counts_; }

  // Pointwise >= against another marking of the same net.
  bool covers(const Marking& other) const;

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;

 private:
  std::vector<TokenCount> counts_;
};

enum class ArcKind { input, output, read };

struct Arc {
  PlaceId place;
  TransitionId transition;
  ArcKind kind = ArcKind::input;
  TokenCount weight = 1;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct PlaceWeight {
  PlaceId place;
  TokenCount weight;

  friend bool operator==(const PlaceWeight&, const PlaceWeight&) = default;
};

// Nonempty set of distinct transitions fired simultaneously. Rejects
// duplicates: a transition cannot fire concurrently with itself.
class Step {
 public:
  explicit Step(std::vector<TransitionId> transitions);

  const std::vector<TransitionId>& transitions() const { return transitions_; }

 private:
  std::vector<TransitionId> transitions_;  // sorted by id
};

// Immutable place/transition net with weighted input, output and read arcs.
// Read arcs test for tokens without consuming them. Build via NetBuilder.
class Net {
 public:
  const std::string& name() const { return name_; }
  std::size_t place_count() const { return place_names_.size(); }
  std::size_t transition_count() const { return transition_names_.size(); }
  const std::string& place_name(PlaceId p) const;
  const std::string& transition_name(TransitionId t) const;
  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view name) const;

  // Canonical order: grouped by transition, inputs then reads then outputs,
  // each group sorted by place.
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Marking& initial_marking() const { return initial_; }

  std::span<const PlaceWeight> inputs(TransitionId t) const;
  std::span<const PlaceWeight> reads(TransitionId t) const;
  std::span<const PlaceWeight> outputs(TransitionId t) const;

  // t is enabled iff every input and read place holds at least the arc weight.
  bool is_enabled(const Marking& m, TransitionId t) const;

  // Fires t: consumes input-arc weights, produces output-arc weights, leaves
  // read places untouched. Throws NetError if t is not enabled at m.
  Marking fire(const Marking& m, TransitionId t) const;

  // All enabled transitions in id order. Empty iff m is a dead marking.
  std::vector<TransitionId> enabled_set(const Marking& m) const;

  // A step is enabled iff every place can serve the summed consumption of all
  // step members plus the largest read weight any member tests it with.
  bool step_enabled(const Marking& m, const Step& s) const;

  // Fires all step members simultaneously. Throws NetError if not enabled.
  Marking fire_step(const Marking& m, const Step& s) const;

  // Both enabled individually but not jointly as a step. Throws on t1 == t2.
  bool in_conflict(const Marking& m, TransitionId t1, TransitionId t2) const;

  // The step {t1, t2} is enabled. Throws on t1 == t2.
  bool are_concurrent(const Marking& m, TransitionId t1, TransitionId t2) const;

  friend bool operator==(const Net&, const Net&) = default;

 private:
  friend class NetBuilder;

  struct TransitionIo {
    std::vector<PlaceWeight> inputs;
    std::vector<PlaceWeight> reads;
    std::vector<PlaceWeight> outputs;

    friend bool operator==(const TransitionIo&, const TransitionIo&) = default;
  };

  void check_place(PlaceId p) const;
  void check_transition(TransitionId t) const;
  void check_marking(const Marking& m) const;

  std::string name_;
  std::vector<std::string> place_names_;
  std::vector<std::string> transition_names_;
  std::vector<Arc> arcs_;
  Marking initial_;
  std::vector<TransitionIo> io_;
};

// Accumulates places, transitions and arcs, validates, and freezes a Net.
// Weights and initial counts are capped at 2^32-1 so marking arithmetic
// stays safely inside 64 bits.
class NetBuilder {
 public:
  explicit NetBuilder(std::string name = "net");

  PlaceId add_place(std::string name, TokenCount initial = 0);
  TransitionId add_transition(std::string name);

  NetBuilder& add_input(PlaceId p, TransitionId t, TokenCount weight = 1);
  NetBuilder& add_output(TransitionId t, PlaceId p, TokenCount weight = 1);
  NetBuilder& add_read(PlaceId p, TransitionId t, TokenCount weight = 1);

  // Existing output weight on (t, p), 0 if none. Used when merging read arcs
  // into consume+produce self-loops.
  TokenCount output_weight(TransitionId t, PlaceId p) const;

  Net build() const;

 private:
  void add_arc(PlaceId p, TransitionId t, ArcKind kind, TokenCount weight);

  std::string name_;
  std::vector<std::string> place_names_;
  std::vector<TokenCount> initial_;
  std::vector<std::string> transition_names_;
  std::vector<Arc> arcs_;
};

}  // namespace pnv

template <>
struct std::hash<pnv::Marking> {
  std::size_t operator()(const pnv::Marking& m) const noexcept {
    // FNV-1a over the token counts; stable across runs.
    std::uint64_t h = 14695981039346656037ull;
    for (pnv::TokenCount c : m.counts()) {
      for (int i = 0; i < 8; ++i) {
        h ^= (c >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    }
    return static_cast<std::size_t>(h);
  }
};
