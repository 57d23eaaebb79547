#include "pnv/dsl.hpp"

#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace pnv {

namespace {

struct NetToken {
  enum class Kind {
    ident, nat, lbrace, rbrace, semicolon, equals, comma,
    arrow,      // ->
    dash,       // -
    read_arrow, // ..>
    read_dash,  // ..
    end
  };

  Kind kind;
  std::string text;
  std::uint64_t nat = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

const char* token_name(NetToken::Kind k) {
  switch (k) {
    case NetToken::Kind::ident: return "a name";
    case NetToken::Kind::nat: return "a number";
    case NetToken::Kind::lbrace: return "'{'";
    case NetToken::Kind::rbrace: return "'}'";
    case NetToken::Kind::semicolon: return "';'";
    case NetToken::Kind::equals: return "'='";
    case NetToken::Kind::comma: return "','";
    case NetToken::Kind::arrow: return "'->'";
    case NetToken::Kind::dash: return "'-'";
    case NetToken::Kind::read_arrow: return "'..>'";
    case NetToken::Kind::read_dash: return "'..'";
    case NetToken::Kind::end: return "end of input";
  }
  return "?";
}

class NetLexer {
 public:
  explicit NetLexer(std::string_view text) : text_(text) { advance(); }

  const NetToken& peek() const { return current_; }

  NetToken take() {
    NetToken t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  void bump(std::size_t n = 1) {
    pos_ += n;
    col_ += n;
  }

  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        bump();
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    current_.line = line_;
    current_.column = col_;
    current_.text.clear();
    if (pos_ >= text_.size()) {
      current_.kind = NetToken::Kind::end;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '{': current_.kind = NetToken::Kind::lbrace; bump(); return;
      case '}': current_.kind = NetToken::Kind::rbrace; bump(); return;
      case ';': current_.kind = NetToken::Kind::semicolon; bump(); return;
      case '=': current_.kind = NetToken::Kind::equals; bump(); return;
      case ',': current_.kind = NetToken::Kind::comma; bump(); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          current_.kind = NetToken::Kind::arrow;
          bump(2);
        } else {
          current_.kind = NetToken::Kind::dash;
          bump();
        }
        return;
      case '.':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
          if (pos_ + 2 < text_.size() && text_[pos_ + 2] == '>') {
            current_.kind = NetToken::Kind::read_arrow;
            bump(3);
          } else {
            current_.kind = NetToken::Kind::read_dash;
            bump(2);
          }
          return;
        }
        fail("unexpected character '.'");
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
        bump();
      }
      current_.kind = NetToken::Kind::nat;
      current_.nat = value;
      return;
    }
    auto head = [](char x) {
      return (x >= 'A' && x <= 'Z') || (x >= 'a' && x <= 'z') || x == '_';
    };
    auto tail = [&](char x) { return head(x) || (x >= '0' && x <= '9') || x == '\''; };
    if (head(c)) {
      std::size_t start = pos_;
      bump();
      while (pos_ < text_.size() && tail(text_[pos_])) bump();
      current_.kind = NetToken::Kind::ident;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  NetToken current_;
};

class NetParser {
 public:
  explicit NetParser(std::string_view text) : lex_(text) {}

  Net parse() {
    keyword("net");
    NetToken name = expect(NetToken::Kind::ident, "a net name");
    builder_.emplace(name.text);
    expect(NetToken::Kind::lbrace, "'{'");
    places();
    transitions();
    arcs();
    expect(NetToken::Kind::rbrace, "'}'");
    expect(NetToken::Kind::end, "end of input");
    return builder_->build();
  }

 private:
  [[noreturn]] void fail(const NetToken& t, const std::string& msg) {
    throw ParseError(t.line, t.column, msg);
  }

  NetToken expect(NetToken::Kind k, const char* what) {
    NetToken t = lex_.take();
    if (t.kind != k)
      fail(t, std::string("expected ") + what + ", found " + token_name(t.kind) +
                  (t.kind == NetToken::Kind::ident ? " '" + t.text + "'" : ""));
    return t;
  }

  void keyword(const char* word) {
    NetToken t = lex_.take();
    if (t.kind != NetToken::Kind::ident || t.text != word)
      fail(t, std::string("expected '") + word + "'");
  }

  void places() {
    keyword("places");
    expect(NetToken::Kind::lbrace, "'{'");
    while (lex_.peek().kind == NetToken::Kind::ident) {
      NetToken name = lex_.take();
      TokenCount initial = 0;
      if (lex_.peek().kind == NetToken::Kind::equals) {
        lex_.take();
        initial = expect(NetToken::Kind::nat, "an initial count").nat;
      }
      expect(NetToken::Kind::semicolon, "';'");
      if (places_.contains(name.text) || transitions_.contains(name.text))
        fail(name, "duplicate name '" + name.text + "'");
      places_.emplace(name.text, builder_->add_place(name.text, initial));
    }
    expect(NetToken::Kind::rbrace, "'}'");
  }

  void transitions() {
    keyword("transitions");
    expect(NetToken::Kind::lbrace, "'{'");
    while (lex_.peek().kind == NetToken::Kind::ident) {
      NetToken name = lex_.take();
      expect(NetToken::Kind::semicolon, "';'");
      if (places_.contains(name.text) || transitions_.contains(name.text))
        fail(name, "duplicate name '" + name.text + "'");
      transitions_.emplace(name.text, builder_->add_transition(name.text));
    }
    expect(NetToken::Kind::rbrace, "'}'");
  }

  void arcs() {
    keyword("arcs");
    expect(NetToken::Kind::lbrace, "'{'");
    while (lex_.peek().kind == NetToken::Kind::ident) {
      NetToken from = lex_.take();
      NetToken op = lex_.take();
      TokenCount weight = 1;
      bool read = false;
      switch (op.kind) {
        case NetToken::Kind::arrow:
          break;
        case NetToken::Kind::dash: {
          NetToken w = expect(NetToken::Kind::nat, "an arc weight");
          if (w.nat == 0) fail(w, "arc weight must be positive");
          weight = w.nat;
          expect(NetToken::Kind::arrow, "'->'");
          break;
        }
        case NetToken::Kind::read_arrow:
          read = true;
          break;
        case NetToken::Kind::read_dash: {
          NetToken w = expect(NetToken::Kind::nat, "an arc weight");
          if (w.nat == 0) fail(w, "arc weight must be positive");
          weight = w.nat;
          expect(NetToken::Kind::read_arrow, "'..>'");
          read = true;
          break;
        }
        default:
          fail(op, std::string("expected an arc ('->', '-N->', '..>' or '..N..>'), found ") +
                       token_name(op.kind));
      }
      NetToken to = expect(NetToken::Kind::ident, "a name");
      expect(NetToken::Kind::semicolon, "';'");
      make_arc(from, to, read, weight);
    }
    expect(NetToken::Kind::rbrace, "'}'");
  }

  void make_arc(const NetToken& from, const NetToken& to, bool read, TokenCount weight) {
    auto place_of = [&](const NetToken& t) -> std::optional<PlaceId> {
      auto it = places_.find(t.text);
      if (it == places_.end()) return std::nullopt;
      return it->second;
    };
    auto transition_of = [&](const NetToken& t) -> std::optional<TransitionId> {
      auto it = transitions_.find(t.text);
      if (it == transitions_.end()) return std::nullopt;
      return it->second;
    };
    if (!place_of(from) && !transition_of(from)) fail(from, "unknown name '" + from.text + "'");
    if (!place_of(to) && !transition_of(to)) fail(to, "unknown name '" + to.text + "'");
    try {
      if (read) {
        std::optional<PlaceId> p = place_of(from);
        std::optional<TransitionId> t = transition_of(to);
        if (!p || !t) fail(from, "a read arc goes from a place to a transition");
        builder_->add_read(*p, *t, weight);
      } else if (place_of(from) && transition_of(to)) {
        builder_->add_input(*place_of(from), *transition_of(to), weight);
      } else if (transition_of(from) && place_of(to)) {
        builder_->add_output(*transition_of(from), *place_of(to), weight);
      } else {
        fail(from, "an arc connects a place and a transition");
      }
    } catch (const NetError& e) {
      // duplicate arcs, read/input mixes: keep the source position
      fail(from, e.what());
    }
  }

  NetLexer lex_;
  std::optional<NetBuilder> builder_;
  std::map<std::string, PlaceId> places_;
  std::map<std::string, TransitionId> transitions_;
};

void append_arc(std::string& out, const Net& net, const Arc& a) {
  const std::string& p = net.place_name(a.place);
  const std::string& t = net.transition_name(a.transition);
  out += "    ";
  switch (a.kind) {
    case ArcKind::input:
      out += p;
      out += a.weight == 1 ? " -> " : " -" + std::to_string(a.weight) + "-> ";
      out += t;
      break;
    case ArcKind::read:
      out += p;
      out += a.weight == 1 ? " ..> " : " .." + std::to_string(a.weight) + "..> ";
      out += t;
      break;
    case ArcKind::output:
      out += t;
      out += a.weight == 1 ? " -> " : " -" + std::to_string(a.weight) + "-> ";
      out += p;
      break;
  }
  out += ";\n";
}

}  // namespace

Net parse_net(std::string_view text) { return NetParser(text).parse(); }

std::string serialize_net(const Net& net) {
  std::string out = "net " + net.name() + " {\n";
  out += "  places {\n";
  for (std::uint32_t p = 0; p < net.place_count(); ++p) {
    out += "    " + net.place_name(PlaceId{p});
    TokenCount initial = net.initial_marking().at(PlaceId{p});
    if (initial != 0) out += " = " + std::to_string(initial);
    out += ";\n";
  }
  out += "  }\n  transitions {\n";
  for (std::uint32_t t = 0; t < net.transition_count(); ++t)
    out += "    " + net.transition_name(TransitionId{t}) + ";\n";
  out += "  }\n  arcs {\n";
  for (const Arc& a : net.arcs()) append_arc(out, net, a);
  out += "  }\n}\n";
  return out;
}

Marking parse_marking(const Net& net, std::string_view text) {
  NetLexer lex(text);
  auto expect = [&](NetToken::Kind k, const char* what) {
    NetToken t = lex.take();
    if (t.kind != k)
      throw ParseError(t.line, t.column,
                       std::string("expected ") + what + ", found " + token_name(t.kind));
    return t;
  };
  expect(NetToken::Kind::lbrace, "'{'");
  Marking m(net.place_count());
  std::vector<char> listed(net.place_count(), 0);
  bool first = true;
  while (lex.peek().kind != NetToken::Kind::rbrace) {
    if (!first) expect(NetToken::Kind::comma, "','");
    first = false;
    TokenCount count = 1;
    if (lex.peek().kind == NetToken::Kind::nat) {
      NetToken n = lex.take();
      if (n.nat == 0) throw ParseError(n.line, n.column, "listed counts must be at least 1");
      count = n.nat;
    }
    NetToken name = expect(NetToken::Kind::ident, "a place name");
    std::optional<PlaceId> p = net.find_place(name.text);
    if (!p) throw ParseError(name.line, name.column, "unknown place '" + name.text + "'");
    if (listed[p->value])
      throw ParseError(name.line, name.column, "place '" + name.text + "' listed twice");
    listed[p->value] = 1;
    m.set(*p, count);
  }
  expect(NetToken::Kind::rbrace, "'}'");
  expect(NetToken::Kind::end, "end of input");
  return m;
}

std::string format_marking(const Net& net, const Marking& m) {
  if (m.size() != net.place_count()) throw NetError("marking does not belong to this net");
  std::string out = "{";
  bool first = true;
  for (std::uint32_t p = 0; p < net.place_count(); ++p) {
    TokenCount count = m.at(PlaceId{p});
    if (count == 0) continue;
    if (!first) out += ", ";
    first = false;
    if (count != 1) out += std::to_string(count) + " ";
    out += net.place_name(PlaceId{p});
  }
  return out + "}";
}

std::string to_dot(const Net& net, const Marking& m) {
  if (m.size() != net.place_count()) throw NetError("marking does not belong to this net");
  std::string out = "digraph \"" + net.name() + "\" {\n  rankdir=LR;\n";
  for (std::uint32_t p = 0; p < net.place_count(); ++p) {
    const std::string& name = net.place_name(PlaceId{p});
    TokenCount count = m.at(PlaceId{p});
    out += "  \"" + name + "\" [shape=circle, label=\"" + name;
    if (count != 0) out += "\\n" + std::to_string(count);
    out += "\"];\n";
  }
  for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
    const std::string& name = net.transition_name(TransitionId{t});
    out += "  \"" + name + "\" [shape=box, label=\"" + name + "\"];\n";
  }
  for (const Arc& a : net.arcs()) {
    const std::string& p = net.place_name(a.place);
    const std::string& t = net.transition_name(a.transition);
    std::string attrs;
    if (a.weight != 1) attrs = "label=\"" + std::to_string(a.weight) + "\"";
    if (a.kind == ArcKind::read) {
      if (!attrs.empty()) attrs += ", ";
      attrs += "style=dashed, arrowhead=none, dir=both, arrowtail=dot";
    }
    out += "  \"" + (a.kind == ArcKind::output ? t : p) + "\" -> \"" +
           (a.kind == ArcKind::output ? p : t) + "\"";
    if (!attrs.empty()) out += " [" + attrs + "]";
    out += ";\n";
  }
  return out + "}\n";
}

}  // namespace pnv
