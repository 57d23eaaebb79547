#include "pnv/ctl.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace pnv {

namespace {

struct FormulaToken {
  enum class Kind {
    ident, nat, lparen, rparen, lbracket, rbracket,
    bang, amp, pipe, arrow, lt, le, eq, ge, gt, end
  };

  Kind kind;
  std::string text;
  std::uint64_t nat = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class FormulaLexer {
 public:
  explicit FormulaLexer(std::string_view text) : text_(text) { advance(); }

  const FormulaToken& peek() const { return current_; }

  FormulaToken take() {
    FormulaToken t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
        ++col_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else {
        break;
      }
    }
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= text_.size()) {
      current_.kind = FormulaToken::Kind::end;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    auto single = [&](FormulaToken::Kind k) {
      current_.kind = k;
      current_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '(': single(FormulaToken::Kind::lparen); return;
      case ')': single(FormulaToken::Kind::rparen); return;
      case '[': single(FormulaToken::Kind::lbracket); return;
      case ']': single(FormulaToken::Kind::rbracket); return;
      case '!': single(FormulaToken::Kind::bang); return;
      case '&': single(FormulaToken::Kind::amp); return;
      case '|': single(FormulaToken::Kind::pipe); return;
      case '=': single(FormulaToken::Kind::eq); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          current_.kind = FormulaToken::Kind::arrow;
          current_.text = "->";
          pos_ += 2;
          col_ += 2;
          return;
        }
        fail("unexpected character '-'");
      case '<':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          current_.kind = FormulaToken::Kind::le;
          pos_ += 2;
          col_ += 2;
        } else {
          single(FormulaToken::Kind::lt);
        }
        return;
      case '>':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          current_.kind = FormulaToken::Kind::ge;
          pos_ += 2;
          col_ += 2;
        } else {
          single(FormulaToken::Kind::gt);
        }
        return;
      default:
        break;
    }
    if (c >= '0' && c <= '9') {
      std::uint64_t value = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
          fail("number too large");
        value = value * 10 + digit;
        ++pos_;
        ++col_;
      }
      current_.kind = FormulaToken::Kind::nat;
      current_.nat = value;
      return;
    }
    auto head = [](char x) {
      return (x >= 'A' && x <= 'Z') || (x >= 'a' && x <= 'z') || x == '_';
    };
    auto tail = [&](char x) { return head(x) || (x >= '0' && x <= '9') || x == '\''; };
    if (head(c)) {
      std::size_t start = pos_;
      ++pos_;
      ++col_;
      while (pos_ < text_.size() && tail(text_[pos_])) {
        ++pos_;
        ++col_;
      }
      current_.kind = FormulaToken::Kind::ident;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  FormulaToken current_;
};

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr unary(Formula::Kind k, FormulaPtr operand) {
  Formula f;
  f.kind = k;
  f.lhs = std::move(operand);
  return make(std::move(f));
}

FormulaPtr binary(Formula::Kind k, FormulaPtr lhs, FormulaPtr rhs) {
  Formula f;
  f.kind = k;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return make(std::move(f));
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : lex_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = implication();
    const FormulaToken& t = lex_.peek();
    if (t.kind != FormulaToken::Kind::end)
      throw ParseError(t.line, t.column, "unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const FormulaToken& t, const std::string& msg) {
    throw ParseError(t.line, t.column, msg);
  }

  FormulaToken expect(FormulaToken::Kind k, const char* what) {
    FormulaToken t = lex_.take();
    if (t.kind != k) fail(t, std::string("expected ") + what);
    return t;
  }

  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    if (lex_.peek().kind == FormulaToken::Kind::arrow) {
      lex_.take();
      return binary(Formula::Kind::implication, std::move(lhs), implication());
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr lhs = conjunction();
    while (lex_.peek().kind == FormulaToken::Kind::pipe) {
      lex_.take();
      lhs = binary(Formula::Kind::disjunction, std::move(lhs), conjunction());
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    FormulaPtr lhs = prefixed();
    while (lex_.peek().kind == FormulaToken::Kind::amp) {
      lex_.take();
      lhs = binary(Formula::Kind::conjunction, std::move(lhs), prefixed());
    }
    return lhs;
  }

  FormulaPtr prefixed() {
    const FormulaToken& t = lex_.peek();
    if (t.kind == FormulaToken::Kind::bang) {
      lex_.take();
      return unary(Formula::Kind::negation, prefixed());
    }
    if (t.kind == FormulaToken::Kind::ident) {
      Formula::Kind k;
      if (t.text == "EX") k = Formula::Kind::ex;
      else if (t.text == "EF") k = Formula::Kind::ef;
      else if (t.text == "EG") k = Formula::Kind::eg;
      else if (t.text == "AX") k = Formula::Kind::ax;
      else if (t.text == "AF") k = Formula::Kind::af;
      else if (t.text == "AG") k = Formula::Kind::ag;
      else return primary();
      lex_.take();
      return unary(k, prefixed());
    }
    return primary();
  }

  Cmp comparison() {
    FormulaToken t = lex_.take();
    switch (t.kind) {
      case FormulaToken::Kind::lt: return Cmp::lt;
      case FormulaToken::Kind::le: return Cmp::le;
      case FormulaToken::Kind::eq: return Cmp::eq;
      case FormulaToken::Kind::ge: return Cmp::ge;
      case FormulaToken::Kind::gt: return Cmp::gt;
      default: fail(t, "expected a comparison (< <= = >= >)");
    }
  }

  FormulaPtr primary() {
    FormulaToken t = lex_.take();
    if (t.kind == FormulaToken::Kind::lparen) {
      FormulaPtr f = implication();
      expect(FormulaToken::Kind::rparen, "')'");
      return f;
    }
    if (t.kind != FormulaToken::Kind::ident) fail(t, "expected a formula");
    if (t.text == "true" || t.text == "false") {
      Formula f;
      f.kind = Formula::Kind::truth;
      f.value = t.text == "true";
      return make(std::move(f));
    }
    if (t.text == "deadlock") {
      Formula f;
      f.kind = Formula::Kind::deadlock;
      return make(std::move(f));
    }
    if (t.text == "tokens") {
      expect(FormulaToken::Kind::lparen, "'('");
      FormulaToken name = expect(FormulaToken::Kind::ident, "a place name");
      expect(FormulaToken::Kind::rparen, "')'");
      Formula f;
      f.kind = Formula::Kind::tokens;
      f.name = name.text;
      f.cmp = comparison();
      f.bound = expect(FormulaToken::Kind::nat, "a number").nat;
      return make(std::move(f));
    }
    if (t.text == "enabled") {
      expect(FormulaToken::Kind::lparen, "'('");
      FormulaToken name = expect(FormulaToken::Kind::ident, "a transition name");
      expect(FormulaToken::Kind::rparen, "')'");
      Formula f;
      f.kind = Formula::Kind::enabled;
      f.name = name.text;
      return make(std::move(f));
    }
    if (t.text == "E" || t.text == "A") {
      if (lex_.peek().kind != FormulaToken::Kind::lbracket)
        fail(lex_.peek(), std::string("expected '[' after '") + t.text + "'");
      expect(FormulaToken::Kind::lbracket, "'['");
      FormulaPtr lhs = implication();
      FormulaToken u = lex_.take();
      if (u.kind != FormulaToken::Kind::ident || u.text != "U") fail(u, "expected 'U'");
      FormulaPtr rhs = implication();
      expect(FormulaToken::Kind::rbracket, "']'");
      return binary(t.text == "E" ? Formula::Kind::eu : Formula::Kind::au, std::move(lhs),
                    std::move(rhs));
    }
    fail(t, "unknown formula atom '" + t.text + "'");
  }

  FormulaLexer lex_;
};

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::implication: return 1;
    case Formula::Kind::disjunction: return 2;
    case Formula::Kind::conjunction: return 3;
    case Formula::Kind::negation:
    case Formula::Kind::ex:
    case Formula::Kind::ef:
    case Formula::Kind::eg:
    case Formula::Kind::ax:
    case Formula::Kind::af:
    case Formula::Kind::ag: return 4;
    default: return 5;
  }
}

std::string cmp_to_string(Cmp c) {
  switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "=";
    case Cmp::ge: return ">=";
    case Cmp::gt: return ">";
  }
  return "=";
}

std::string child_to_string(const Formula& child, int min_prec) {
  std::string s = to_string(child);
  if (precedence(child.kind) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::truth: return f.value ? "true" : "false";
    case Formula::Kind::deadlock: return "deadlock";
    case Formula::Kind::tokens:
      return "tokens(" + f.name + ") " + cmp_to_string(f.cmp) + " " + std::to_string(f.bound);
    case Formula::Kind::enabled: return "enabled(" + f.name + ")";
    case Formula::Kind::negation: return "!" + child_to_string(*f.lhs, 4);
    case Formula::Kind::conjunction:
      return child_to_string(*f.lhs, 3) + " & " + child_to_string(*f.rhs, 4);
    case Formula::Kind::disjunction:
      return child_to_string(*f.lhs, 2) + " | " + child_to_string(*f.rhs, 3);
    case Formula::Kind::implication:
      return child_to_string(*f.lhs, 2) + " -> " + child_to_string(*f.rhs, 1);
    case Formula::Kind::ex: return "EX " + child_to_string(*f.lhs, 4);
    case Formula::Kind::ef: return "EF " + child_to_string(*f.lhs, 4);
    case Formula::Kind::eg: return "EG " + child_to_string(*f.lhs, 4);
    case Formula::Kind::ax: return "AX " + child_to_string(*f.lhs, 4);
    case Formula::Kind::af: return "AF " + child_to_string(*f.lhs, 4);
    case Formula::Kind::ag: return "AG " + child_to_string(*f.lhs, 4);
    case Formula::Kind::eu:
      return "E[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
    case Formula::Kind::au:
      return "A[" + to_string(*f.lhs) + " U " + to_string(*f.rhs) + "]";
  }
  return "false";
}

namespace {

using StateSet = std::vector<char>;

bool compares(TokenCount have, Cmp cmp, std::uint64_t bound) {
  switch (cmp) {
    case Cmp::lt: return have < bound;
    case Cmp::le: return have <= bound;
    case Cmp::eq: return have == bound;
    case Cmp::ge: return have >= bound;
    case Cmp::gt: return have > bound;
  }
  return false;
}

// Fixpoint labeling over one reachability graph. Deadlock states (no
// successors) end maximal paths: EG holds there when the operand does, AX
// holds vacuously.
class Labeler {
 public:
  Labeler(const Net& net, const ReachabilityGraph& g) : net_(net), g_(g) {
    pred_.resize(g.states.size());
    for (const ReachabilityGraph::Edge& e : g.edges) pred_[e.target].push_back(e.source);
  }

  const ReachabilityGraph& graph() const { return g_; }

  StateSet eval(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::truth:
        return StateSet(g_.states.size(), f.value ? 1 : 0);
      case Formula::Kind::deadlock: {
        StateSet out(g_.states.size());
        for (std::size_t s = 0; s < g_.states.size(); ++s)
          out[s] = net_.enabled_set(g_.states[s]).empty() ? 1 : 0;
        return out;
      }
      case Formula::Kind::tokens: {
        std::optional<PlaceId> p = net_.find_place(f.name);
        if (!p) throw NetError("formula references unknown place '" + f.name + "'");
        StateSet out(g_.states.size());
        for (std::size_t s = 0; s < g_.states.size(); ++s)
          out[s] = compares(g_.states[s].at(*p), f.cmp, f.bound) ? 1 : 0;
        return out;
      }
      case Formula::Kind::enabled: {
        std::optional<TransitionId> t = net_.find_transition(f.name);
        if (!t) throw NetError("formula references unknown transition '" + f.name + "'");
        StateSet out(g_.states.size());
        for (std::size_t s = 0; s < g_.states.size(); ++s)
          out[s] = net_.is_enabled(g_.states[s], *t) ? 1 : 0;
        return out;
      }
      case Formula::Kind::negation: {
        StateSet out = eval(*f.lhs);
        for (char& b : out) b = b ? 0 : 1;
        return out;
      }
      case Formula::Kind::conjunction: {
        StateSet a = eval(*f.lhs);
        StateSet b = eval(*f.rhs);
        for (std::size_t s = 0; s < a.size(); ++s) a[s] = a[s] && b[s];
        return a;
      }
      case Formula::Kind::disjunction: {
        StateSet a = eval(*f.lhs);
        StateSet b = eval(*f.rhs);
        for (std::size_t s = 0; s < a.size(); ++s) a[s] = a[s] || b[s];
        return a;
      }
      case Formula::Kind::implication: {
        StateSet a = eval(*f.lhs);
        StateSet b = eval(*f.rhs);
        for (std::size_t s = 0; s < a.size(); ++s) a[s] = !a[s] || b[s];
        return a;
      }
      case Formula::Kind::ex: return set_ex(eval(*f.lhs));
      case Formula::Kind::ef: return set_ef(eval(*f.lhs));
      case Formula::Kind::eg: return set_eg(eval(*f.lhs));
      case Formula::Kind::ax: {
        // AX f == !EX !f
        StateSet inner = eval(*f.lhs);
        for (char& b : inner) b = b ? 0 : 1;
        StateSet out = set_ex(std::move(inner));
        for (char& b : out) b = b ? 0 : 1;
        return out;
      }
      case Formula::Kind::af: {
        // AF f == !EG !f
        StateSet inner = eval(*f.lhs);
        for (char& b : inner) b = b ? 0 : 1;
        StateSet out = set_eg(std::move(inner));
        for (char& b : out) b = b ? 0 : 1;
        return out;
      }
      case Formula::Kind::ag: {
        // AG f == !EF !f
        StateSet inner = eval(*f.lhs);
        for (char& b : inner) b = b ? 0 : 1;
        StateSet out = set_ef(std::move(inner));
        for (char& b : out) b = b ? 0 : 1;
        return out;
      }
      case Formula::Kind::eu: return set_eu(eval(*f.lhs), eval(*f.rhs));
      case Formula::Kind::au: return set_au(eval(*f.lhs), eval(*f.rhs));
    }
    throw NetError("malformed formula");
  }

  StateSet set_ex(StateSet target) {
    StateSet out(g_.states.size(), 0);
    for (std::uint32_t s = 0; s < g_.states.size(); ++s)
      for (const ReachabilityGraph::Edge& e : g_.out_edges(s))
        if (target[e.target]) {
          out[s] = 1;
          break;
        }
    return out;
  }

  // Least fixpoint: target | EX result. Backward propagation.
  StateSet set_ef(StateSet target) {
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < target.size(); ++s)
      if (target[s]) stack.push_back(s);
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t p : pred_[u])
        if (!target[p]) {
          target[p] = 1;
          stack.push_back(p);
        }
    }
    return target;
  }

  // Greatest fixpoint: keep operand states that are terminal or can continue
  // inside the set. Counter-based elimination.
  StateSet set_eg(StateSet sat) {
    std::vector<std::uint32_t> live_succ(g_.states.size(), 0);
    for (std::uint32_t s = 0; s < g_.states.size(); ++s)
      for (const ReachabilityGraph::Edge& e : g_.out_edges(s))
        if (sat[e.target]) ++live_succ[s];
    std::vector<std::uint32_t> removal;
    for (std::uint32_t s = 0; s < g_.states.size(); ++s)
      if (sat[s] && live_succ[s] == 0 && !g_.out_edges(s).empty()) {
        sat[s] = 0;
        removal.push_back(s);
      }
    while (!removal.empty()) {
      std::uint32_t u = removal.back();
      removal.pop_back();
      for (std::uint32_t p : pred_[u]) {
        if (!sat[p]) continue;
        if (--live_succ[p] == 0 && !g_.out_edges(p).empty()) {
          sat[p] = 0;
          removal.push_back(p);
        }
      }
    }
    return sat;
  }

  // Least fixpoint: goal | (hold & EX result).
  StateSet set_eu(const StateSet& hold, StateSet goal) {
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < goal.size(); ++s)
      if (goal[s]) stack.push_back(s);
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t p : pred_[u])
        if (!goal[p] && hold[p]) {
          goal[p] = 1;
          stack.push_back(p);
        }
    }
    return goal;
  }

  // Least fixpoint: goal | (hold & not terminal & AX result).
  StateSet set_au(const StateSet& hold, StateSet goal) {
    std::vector<std::uint32_t> waiting(g_.states.size());
    for (std::uint32_t s = 0; s < g_.states.size(); ++s)
      waiting[s] = static_cast<std::uint32_t>(g_.out_edges(s).size());
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < goal.size(); ++s)
      if (goal[s]) stack.push_back(s);
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t p : pred_[u]) {
        if (--waiting[p] != 0 || goal[p]) continue;
        if (hold[p] && !g_.out_edges(p).empty()) {
          goal[p] = 1;
          stack.push_back(p);
        }
      }
    }
    return goal;
  }

  // Shortest edge path from state 0 to any target state, expanding only
  // states allowed by `expand` (targets themselves need not be expandable).
  std::optional<std::vector<TransitionId>> shortest_path(const StateSet& target,
                                                         const StateSet* expand) {
    if (target[0]) return std::vector<TransitionId>{};
    std::vector<std::int64_t> parent_state(g_.states.size(), -1);
    std::vector<TransitionId> parent_edge(g_.states.size());
    std::vector<std::uint32_t> queue{0};
    parent_state[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t s = queue[head];
      if (expand && !(*expand)[s]) continue;
      for (const ReachabilityGraph::Edge& e : g_.out_edges(s)) {
        if (parent_state[e.target] != -1) continue;
        parent_state[e.target] = s;
        parent_edge[e.target] = e.transition;
        if (target[e.target]) {
          std::vector<TransitionId> path;
          for (std::uint32_t cur = e.target; cur != 0;
               cur = static_cast<std::uint32_t>(parent_state[cur]))
            path.push_back(parent_edge[cur]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(e.target);
      }
    }
    return std::nullopt;
  }

  // Walk inside `inside` from state 0, first fitting successor each step,
  // until a terminal state or a revisit closes a lasso.
  std::vector<TransitionId> greedy_walk(const StateSet& inside) {
    std::vector<TransitionId> path;
    StateSet visited(g_.states.size(), 0);
    std::uint32_t s = 0;
    visited[0] = 1;
    while (true) {
      const ReachabilityGraph::Edge* step = nullptr;
      for (const ReachabilityGraph::Edge& e : g_.out_edges(s)) {
        if (inside[e.target]) {
          step = &e;
          break;
        }
      }
      if (!step) return path;
      path.push_back(step->transition);
      if (visited[step->target]) return path;  // lasso closed
      visited[step->target] = 1;
      s = step->target;
    }
  }

  // Shortest path into `bad`, then extended through further bad states while
  // possible. Used for refuted AG: the tail shows the violation persisting.
  std::optional<std::vector<TransitionId>> violating_path(const StateSet& bad) {
    std::optional<std::vector<TransitionId>> path = shortest_path(bad, nullptr);
    if (!path) return std::nullopt;
    StateSet visited(g_.states.size(), 0);
    std::uint32_t s = 0;
    visited[0] = 1;
    for (TransitionId t : *path) {
      s = follow(s, t);
      visited[s] = 1;
    }
    while (true) {
      const ReachabilityGraph::Edge* step = nullptr;
      for (const ReachabilityGraph::Edge& e : g_.out_edges(s)) {
        if (bad[e.target] && !visited[e.target]) {
          step = &e;
          break;
        }
      }
      if (!step) return path;
      path->push_back(step->transition);
      visited[step->target] = 1;
      s = step->target;
    }
  }

  std::uint32_t follow(std::uint32_t s, TransitionId t) const {
    for (const ReachabilityGraph::Edge& e : g_.out_edges(s))
      if (e.transition == t) return e.target;
    throw NetError("trace does not replay on the graph");
  }

 private:
  const Net& net_;
  const ReachabilityGraph& g_;
  std::vector<std::vector<std::uint32_t>> pred_;
};

bool pure_state_predicate(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::truth:
    case Formula::Kind::deadlock:
    case Formula::Kind::tokens:
    case Formula::Kind::enabled:
      return true;
    case Formula::Kind::negation:
      return pure_state_predicate(*f.lhs);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
    case Formula::Kind::implication:
      return pure_state_predicate(*f.lhs) && pure_state_predicate(*f.rhs);
    default:
      return false;
  }
}

// The fragment whose "holds" answers stay sound on a truncated graph: state
// predicates composed with &, |, EX, EF, EU. Explored edges only ever add
// witnesses, never remove them.
bool truncation_safe(const Formula& f) {
  if (pure_state_predicate(f)) return true;
  switch (f.kind) {
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
      return truncation_safe(*f.lhs) && truncation_safe(*f.rhs);
    case Formula::Kind::ex:
    case Formula::Kind::ef:
      return truncation_safe(*f.lhs);
    case Formula::Kind::eu:
      return truncation_safe(*f.lhs) && truncation_safe(*f.rhs);
    default:
      return false;
  }
}

std::optional<std::vector<TransitionId>> make_trace(Labeler& lab, const Formula& f, bool holds) {
  auto negate = [](StateSet s) {
    for (char& b : s) b = b ? 0 : 1;
    return s;
  };
  if (holds) {
    switch (f.kind) {
      case Formula::Kind::ex: {
        StateSet target = lab.eval(*f.lhs);
        for (const ReachabilityGraph::Edge& e : lab.graph().out_edges(0))
          if (target[e.target]) return std::vector<TransitionId>{e.transition};
        return std::nullopt;
      }
      case Formula::Kind::ef:
        return lab.shortest_path(lab.eval(*f.lhs), nullptr);
      case Formula::Kind::eg:
        return lab.greedy_walk(lab.set_eg(lab.eval(*f.lhs)));
      case Formula::Kind::eu: {
        StateSet hold = lab.eval(*f.lhs);
        StateSet goal = lab.eval(*f.rhs);
        return lab.shortest_path(goal, &hold);
      }
      default:
        return std::nullopt;
    }
  }
  switch (f.kind) {
    case Formula::Kind::ax: {
      StateSet bad = negate(lab.eval(*f.lhs));
      for (const ReachabilityGraph::Edge& e : lab.graph().out_edges(0))
        if (bad[e.target]) return std::vector<TransitionId>{e.transition};
      return std::nullopt;
    }
    case Formula::Kind::ag:
      return lab.violating_path(negate(lab.eval(*f.lhs)));
    case Formula::Kind::af:
      return lab.greedy_walk(lab.set_eg(negate(lab.eval(*f.lhs))));
    case Formula::Kind::au: {
      // !A[f U g] == E[!g U (!f & !g)] | EG !g
      StateSet not_f = negate(lab.eval(*f.lhs));
      StateSet not_g = negate(lab.eval(*f.rhs));
      StateSet both(not_f.size());
      for (std::size_t s = 0; s < both.size(); ++s) both[s] = not_f[s] && not_g[s];
      StateSet via_eu = lab.set_eu(not_g, both);
      if (via_eu[0]) return lab.shortest_path(both, &not_g);
      return lab.greedy_walk(lab.set_eg(std::move(not_g)));
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

bool is_state_predicate(const Formula& f) { return pure_state_predicate(f); }

bool eval_state_predicate(const Net& net, const Marking& m, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::truth:
      return f.value;
    case Formula::Kind::deadlock:
      return net.enabled_set(m).empty();
    case Formula::Kind::tokens: {
      std::optional<PlaceId> p = net.find_place(f.name);
      if (!p) throw NetError("formula references unknown place '" + f.name + "'");
      return compares(m.at(*p), f.cmp, f.bound);
    }
    case Formula::Kind::enabled: {
      std::optional<TransitionId> t = net.find_transition(f.name);
      if (!t) throw NetError("formula references unknown transition '" + f.name + "'");
      return net.is_enabled(m, *t);
    }
    case Formula::Kind::negation:
      return !eval_state_predicate(net, m, *f.lhs);
    case Formula::Kind::conjunction: {
      bool a = eval_state_predicate(net, m, *f.lhs);
      bool b = eval_state_predicate(net, m, *f.rhs);
      return a && b;
    }
    case Formula::Kind::disjunction: {
      bool a = eval_state_predicate(net, m, *f.lhs);
      bool b = eval_state_predicate(net, m, *f.rhs);
      return a || b;
    }
    case Formula::Kind::implication: {
      bool a = eval_state_predicate(net, m, *f.lhs);
      bool b = eval_state_predicate(net, m, *f.rhs);
      return !a || b;
    }
    default:
      throw std::logic_error("eval_state_predicate called on a temporal formula");
  }
}

Verdict check(const Net& net, const ReachabilityGraph& g, const Formula& f) {
  Labeler lab(net, g);
  if (!g.complete()) {
    if (!truncation_safe(f))
      throw StateLimitError("the state space was cut off at " + std::to_string(g.limit) +
                            " states; this formula needs the complete graph, rerun with a "
                            "larger limit");
    StateSet sat = lab.eval(f);
    if (!sat[0])
      throw StateLimitError("no witness within the explored " + std::to_string(g.states.size()) +
                            " states and exploration was cut off; rerun with a larger limit");
    Verdict v{true, std::nullopt};
    v.trace = make_trace(lab, f, true);
    return v;
  }
  StateSet sat = lab.eval(f);
  Verdict v{sat[0] != 0, std::nullopt};
  v.trace = make_trace(lab, f, v.holds);
  return v;
}

std::vector<bool> satisfying_states(const Net& net, const ReachabilityGraph& g, const Formula& f) {
  if (!g.complete())
    throw StateLimitError("per-state labeling needs the complete state space");
  Labeler lab(net, g);
  std::vector<char> sat = lab.eval(f);
  return std::vector<bool>(sat.begin(), sat.end());
}

Verdict check_liveness_query(const Net& net, const ReachabilityGraph& g, TransitionId t) {
  Formula atom;
  atom.kind = Formula::Kind::enabled;
  atom.name = net.transition_name(t);
  return check(net, g, *unary(Formula::Kind::ag, unary(Formula::Kind::ef, make(std::move(atom)))));
}

std::vector<NamedProperty> parse_properties(std::string_view text) {
  std::vector<NamedProperty> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin != std::string_view::npos) {
      std::size_t colon = line.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, line.size() + 1, "expected ':' after the property name");
      std::string_view name = line.substr(begin, colon - begin);
      std::size_t name_end = name.find_last_not_of(" \t");
      name = name.substr(0, name_end == std::string_view::npos ? 0 : name_end + 1);
      if (!is_valid_identifier(name))
        throw ParseError(line_no, begin + 1, "invalid property name '" + std::string(name) + "'");
      for (const NamedProperty& p : out)
        if (p.name == name)
          throw ParseError(line_no, begin + 1, "duplicate property name '" + std::string(name) + "'");
      std::string_view body = line.substr(colon + 1);
      std::size_t body_begin = body.find_first_not_of(" \t");
      if (body_begin == std::string_view::npos)
        throw ParseError(line_no, colon + 2, "missing formula after ':'");
      std::size_t body_end = body.find_last_not_of(" \t\r");
      body = body.substr(body_begin, body_end - body_begin + 1);
      NamedProperty prop;
      prop.name = std::string(name);
      prop.source = std::string(body);
      try {
        prop.formula = parse_formula(body);
      } catch (const ParseError& e) {
        throw ParseError(line_no, colon + 1 + body_begin + e.column, e.detail);
      }
      out.push_back(std::move(prop));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

}  // namespace pnv
