#include "pnv/structural.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace pnv {

using boost::multiprecision::cpp_int;

IncidenceMatrix incidence(const Net& net) {
  IncidenceMatrix c;
  c.places = net.place_count();
  c.transitions = net.transition_count();
  c.entries.assign(c.places * c.transitions, 0);
  for (const Arc& a : net.arcs()) {
    if (a.kind == ArcKind::read) continue;
    std::int64_t delta = static_cast<std::int64_t>(a.weight);
    if (a.kind == ArcKind::input) delta = -delta;
    c.entries[a.place.value * c.transitions + a.transition.value] += delta;
  }
  return c;
}

std::vector<std::uint32_t> InvariantVector::support() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < weights.size(); ++i)
    if (weights[i] != 0) out.push_back(i);
  return out;
}

namespace {

// One working row of the Farkas tableau: the remaining matrix part and the
// identity part accumulating the invariant candidate.
struct Row {
  std::vector<cpp_int> body;
  std::vector<cpp_int> inv;

  friend bool operator==(const Row& a, const Row& b) {
    return a.body == b.body && a.inv == b.inv;
  }
  friend bool operator<(const Row& a, const Row& b) {
    if (a.body != b.body)
      return std::lexicographical_compare(a.body.begin(), a.body.end(), b.body.begin(),
                                          b.body.end());
    return std::lexicographical_compare(a.inv.begin(), a.inv.end(), b.inv.begin(), b.inv.end());
  }
};

void normalize(Row& r) {
  cpp_int g = 0;
  for (const cpp_int& x : r.body) g = gcd(g, abs(x));
  for (const cpp_int& x : r.inv) g = gcd(g, x);
  if (g > 1) {
    for (cpp_int& x : r.body) x /= g;
    for (cpp_int& x : r.inv) x /= g;
  }
}

// Farkas elimination on an n x m matrix (rows indexed by the invariant
// dimension). Returns gcd-normalized nonnegative annullers of every column.
std::vector<std::vector<cpp_int>> farkas(std::size_t n, std::size_t m,
                                         const std::function<cpp_int(std::size_t, std::size_t)>& entry) {
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].body.resize(m);
    for (std::size_t j = 0; j < m; ++j) rows[i].body[j] = entry(i, j);
    rows[i].inv.assign(n, 0);
    rows[i].inv[i] = 1;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::vector<Row> next;
    std::set<Row> seen;
    auto keep = [&](Row r) {
      normalize(r);
      if (seen.insert(r).second) next.push_back(std::move(r));
    };
    for (const Row& r : rows)
      if (r.body[col] == 0) keep(r);
    for (const Row& pos : rows) {
      if (pos.body[col] <= 0) continue;
      for (const Row& neg : rows) {
        if (neg.body[col] >= 0) continue;
        Row combined;
        combined.body.resize(m);
        combined.inv.resize(n);
        cpp_int a = -neg.body[col];  // scale for pos
        cpp_int b = pos.body[col];   // scale for neg
        for (std::size_t j = 0; j < m; ++j)
          combined.body[j] = a * pos.body[j] + b * neg.body[j];
        for (std::size_t i = 0; i < n; ++i)
          combined.inv[i] = a * pos.inv[i] + b * neg.inv[i];
        keep(std::move(combined));
      }
    }
    rows = std::move(next);
  }
  std::vector<std::vector<cpp_int>> out;
  for (Row& r : rows) {
    bool all_zero = true;
    for (const cpp_int& x : r.inv)
      if (x != 0) all_zero = false;
    if (!all_zero) out.push_back(std::move(r.inv));
  }
  return out;
}

std::vector<InvariantVector> minimal_support_invariants(std::size_t n, std::size_t m,
                                                        const std::function<cpp_int(std::size_t, std::size_t)>& entry,
                                                        InvariantVector::Kind kind) {
  std::vector<std::vector<cpp_int>> raw = farkas(n, m, entry);
  auto support_of = [](const std::vector<cpp_int>& v) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) s.push_back(i);
    return s;
  };
  // Keep only rows whose support contains no other row's support strictly.
  std::vector<std::vector<std::uint32_t>> supports;
  supports.reserve(raw.size());
  for (const auto& v : raw) supports.push_back(support_of(v));
  std::vector<InvariantVector> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < raw.size() && minimal; ++j) {
      if (i == j) continue;
      if (supports[j].size() < supports[i].size() &&
          std::includes(supports[i].begin(), supports[i].end(), supports[j].begin(),
                        supports[j].end()))
        minimal = false;
    }
    if (!minimal) continue;
    InvariantVector v;
    v.kind = kind;
    v.weights.resize(raw[i].size());
    for (std::size_t k = 0; k < raw[i].size(); ++k) {
      if (raw[i][k] > std::numeric_limits<std::uint64_t>::max())
        throw NetError("invariant weight exceeds 64 bits");
      v.weights[k] = static_cast<std::uint64_t>(raw[i][k]);
    }
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const InvariantVector& a, const InvariantVector& b) {
    auto sa = a.support();
    auto sb = b.support();
    if (sa != sb) return sa < sb;
    return a.weights < b.weights;
  });
  return out;
}

}  // namespace

std::vector<InvariantVector> p_invariants(const Net& net) {
  IncidenceMatrix c = incidence(net);
  return minimal_support_invariants(
      c.places, c.transitions,
      [&c](std::size_t p, std::size_t t) { return cpp_int(c.at(p, t)); },
      InvariantVector::Kind::place);
}

std::vector<InvariantVector> t_invariants(const Net& net) {
  IncidenceMatrix c = incidence(net);
  return minimal_support_invariants(
      c.transitions, c.places,
      [&c](std::size_t t, std::size_t p) { return cpp_int(c.at(p, t)); },
      InvariantVector::Kind::transition);
}

InvariantCheck check_p_invariant(const Net& net, const InvariantVector& v,
                                 const ReachabilityGraph& g) {
  if (v.kind != InvariantVector::Kind::place)
    throw NetError("check_p_invariant needs a place vector");
  if (v.weights.size() != net.place_count())
    throw NetError("invariant vector has the wrong number of places");
  IncidenceMatrix c = incidence(net);
  InvariantCheck result;
  result.algebraic = true;
  for (std::size_t t = 0; t < c.transitions && result.algebraic; ++t) {
    cpp_int sum = 0;
    for (std::size_t p = 0; p < c.places; ++p) sum += cpp_int(v.weights[p]) * c.at(p, t);
    if (sum != 0) result.algebraic = false;
  }
  auto weighted_sum = [&v](const Marking& m) {
    cpp_int sum = 0;
    for (std::size_t p = 0; p < v.weights.size(); ++p)
      sum += cpp_int(v.weights[p]) * m.counts()[p];
    return sum;
  };
  if (g.states.empty()) throw NetError("reachability graph has no states");
  cpp_int expected = weighted_sum(g.states[0]);
  result.enumerative = true;
  for (const Marking& m : g.states)
    if (weighted_sum(m) != expected) result.enumerative = false;
  if (expected <= std::numeric_limits<std::uint64_t>::max())
    result.constant = static_cast<std::uint64_t>(expected);
  if (result.algebraic && !result.enumerative)
    throw std::logic_error(
        "invariant checker disagreement: algebraically invariant but the token sum varies");
  return result;
}

}  // namespace pnv
