#include "pcalc/sexpr.hpp"

#include <cctype>
#include <utility>

namespace pcalc {

ParseError::ParseError(std::string message, std::size_t offset, std::size_t line)
    : std::runtime_error(message + " at offset " + std::to_string(offset)),
      message_(std::move(message)),
      offset_(offset),
      line_(line) {}

std::string ParseError::describe() const { return message_ + " at offset " + std::to_string(offset_); }

std::string ParseError::describe_line() const { return message_ + " at line " + std::to_string(line_); }

std::size_t line_of(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_blank();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip_blank();
    if (pos_ >= text_.size()) fail("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == ')') fail("unbalanced parentheses", pos_);
    if (c == '(') return read_list();
    return read_symbol();
  }

  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& message, std::size_t offset) const {
    throw ParseError(message, offset, line_of(text_, offset));
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read_list() {
    SExpr list;
    list.kind = SExpr::Kind::kList;
    list.offset = pos_;
    ++pos_;
    for (;;) {
      skip_blank();
      if (pos_ >= text_.size()) fail("unbalanced parentheses", list.offset);
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      list.items.push_back(read());
    }
    if (list.items.empty()) fail("empty list", list.offset);
    return list;
  }

  SExpr read_symbol() {
    SExpr sym;
    sym.offset = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    sym.symbol = std::string(text_.substr(sym.offset, pos_ - sym.offset));
    return sym;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<SExpr> read_all(std::string_view text) {
  Reader reader(text);
  std::vector<SExpr> out;
  while (!reader.at_end()) out.push_back(reader.read());
  return out;
}

SExpr read_one(std::string_view text) {
  Reader reader(text);
  if (reader.at_end()) reader.fail("empty input", reader.pos());
  SExpr e = reader.read();
  if (!reader.at_end()) {
    if (text[reader.pos()] == ')') reader.fail("unbalanced parentheses", reader.pos());
    reader.fail("expected a single expression", reader.pos());
  }
  return e;
}

std::string render(const SExpr& e) {
  if (e.is_symbol()) return e.symbol;
  std::string out = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i > 0) out += " ";
    out += render(e.items[i]);
  }
  return out + ")";
}

}  // namespace pcalc
