// Tokenizer shared by the domain-file parser and the query-step parser.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcplus/language.hpp"
#include "pcplus/surface.hpp"

namespace pcplus::detail {

enum class Tok {
  kIdent,
  kNumber,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kComma,
  kColon,
  kSemicolon,
  kDot,
  kEq,
  kNeq,
  kNot,
  kAnd,
  kOr,
  kDiamond,  // <>
  kBox,      // []
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

struct SyntaxError : std::runtime_error {
  SyntaxError(SourceLocation l, const std::string& msg) : std::runtime_error(msg), loc(l) {}
  SourceLocation loc;
};

/// Throws SyntaxError on stray characters or unbalanced name suffixes.
std::vector<Token> tokenize(std::string_view text);

std::string describe(const Token& t);

/// Recursive-descent helpers over a token vector.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::kIdent) && peek().text == w; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    take();
    return true;
  }
  Token expect(Tok k, std::string_view what);
  void expect_word(std::string_view w);
  size_t position() const { return pos_; }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

/// Surface formula grammar: | below &, ~ prefix, atoms `X = v`, `X != v`,
/// bare names, true, false, parentheses or brackets.
surface::Formula parse_surface_formula(TokenCursor& cur);

}  // namespace pcplus::detail
