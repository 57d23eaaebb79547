#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnv {

// Domain-rule violation: bad construction, firing a disabled transition,
// unknown names, out-of-range ids.
struct NetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error in the net DSL, a marking literal, a formula, or a property
// file. Positions are 1-based.
struct ParseError : std::runtime_error {
  std::size_t line;
  std::size_t column;
  std::string detail;  // message without the position prefix

  ParseError(std::size_t line_, std::size_t column_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_),
        detail(what_) {}
};

// An analysis refused to answer because the state space was cut off at the
// exploration limit. Callers can retry with a larger limit.
struct StateLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pnv
