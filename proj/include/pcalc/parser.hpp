#pragma once

#include <string_view>

#include "pcalc/formula.hpp"
#include "pcalc/sexpr.hpp"

namespace pcalc {

enum class ParseMode {
  // `?`-prefixed symbols are free variables.
  kQuery,
  // Every variable must be bound by an enclosing forall/exists.
  kClosed,
};

// Parses one formula. Throws ParseError with a byte offset on malformed input.
Formula parse(std::string_view text, ParseMode mode = ParseMode::kQuery);

Formula formula_from_sexpr(const SExpr& e, ParseMode mode = ParseMode::kQuery);

// Parses an atom (e.g. a query goal). `(Show <atom>)` is unwrapped to <atom>.
Atom parse_goal(std::string_view text);

// Same ParseError with `line` computed against `text`.
ParseError locate(const ParseError& e, std::string_view text);

}  // namespace pcalc
