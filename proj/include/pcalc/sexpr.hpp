#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcalc {

// Syntax error carrying the byte offset into the source text. `line` is
// filled in (1-based) by readers that know the full text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset, std::size_t line = 0);

  const std::string& message() const { return message_; }
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }

  // "<message> at offset <n>"
  std::string describe() const;
  // "<message> at line <l>"
  std::string describe_line() const;

 private:
  std::string message_;
  std::size_t offset_;
  std::size_t line_;
};

struct SExpr {
  enum class Kind { kSymbol, kList };

  Kind kind = Kind::kSymbol;
  std::string symbol;
  std::vector<SExpr> items;
  std::size_t offset = 0;

  bool is_symbol() const { return kind == Kind::kSymbol; }
  bool is_list() const { return kind == Kind::kList; }
  bool head_is(std::string_view name) const {
    return is_list() && !items.empty() && items.front().is_symbol() && items.front().symbol == name;
  }
};

// Reads every top-level expression. `;` starts a comment to end of line.
// Errors: unbalanced parentheses, empty list `()`.
std::vector<SExpr> read_all(std::string_view text);

// Reads exactly one expression; anything else is an error.
SExpr read_one(std::string_view text);

std::size_t line_of(std::string_view text, std::size_t offset);

std::string render(const SExpr& e);

}  // namespace pcalc
