#include "lexer.hpp"

#include <cctype>
#include <utility>

namespace pcplus::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

struct Unicode {
  std::string_view utf8;
  Tok kind;
  const char* text;
};

constexpr Unicode kUnicode[] = {
    {"\xC2\xAC", Tok::kNot, "~"},        // ¬
    {"\xE2\x88\xA7", Tok::kAnd, "&"},    // ∧
    {"\xE2\x88\xA8", Tok::kOr, "|"},     // ∨
    {"\xE2\x89\xA0", Tok::kNeq, "!="},   // ≠
    {"\xE2\x8A\xA4", Tok::kIdent, "true"},   // ⊤
    {"\xE2\x8A\xA5", Tok::kIdent, "false"},  // ⊥
    {"\xE2\x97\x87", Tok::kDiamond, "<>"},   // ◇
    {"\xE2\x96\xA1", Tok::kBox, "[]"},       // □
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto emit = [&](Tok k, std::string s, SourceLocation loc) { out.push_back({k, std::move(s), loc}); };

  while (i < text.size()) {
    char c = text[i];
    SourceLocation loc{line, col};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      size_t start = i;
      while (i < text.size() && ident_char(text[i])) advance(1);
      std::string name(text.substr(start, i - start));
      if (name == "context" && text.substr(i, 4) == "-law") {
        advance(4);
        name = "context-law";
      }
      // Parenthesized suffix directly attached: goto(a), c_at(o1).
      if (i < text.size() && text[i] == '(') {
        int depth = 0;
        do {
          char d = text[i];
          if (d == '(') {
            ++depth;
            name += d;
          } else if (d == ')') {
            --depth;
            name += d;
          } else if (ident_char(d) || d == ',') {
            name += d;
          } else if (!std::isspace(static_cast<unsigned char>(d))) {
            throw SyntaxError({line, col}, std::string("unexpected '") + d + "' in name '" + name + "'");
          }
          advance(1);
        } while (depth > 0 && i < text.size());
        if (depth != 0) throw SyntaxError(loc, "unbalanced parentheses in name '" + name + "'");
      }
      emit(Tok::kIdent, std::move(name), loc);
      continue;
    }
    if (digit(c)) {
      size_t start = i;
      while (i < text.size() && digit(text[i])) advance(1);
      if (i + 1 < text.size() && (text[i] == '.' || text[i] == '/') && digit(text[i + 1])) {
        advance(1);
        while (i < text.size() && digit(text[i])) advance(1);
      }
      emit(Tok::kNumber, std::string(text.substr(start, i - start)), loc);
      continue;
    }
    bool matched = false;
    for (const auto& u : kUnicode) {
      if (text.substr(i, u.utf8.size()) == u.utf8) {
        advance(u.utf8.size());
        emit(u.kind, u.text, loc);
        matched = true;
        break;
      }
    }
    if (matched) continue;

    auto two = text.substr(i, 2);
    if (two == "!=") { advance(2); emit(Tok::kNeq, "!=", loc); continue; }
    if (two == "<>") { advance(2); emit(Tok::kDiamond, "<>", loc); continue; }
    if (two == "[]") { advance(2); emit(Tok::kBox, "[]", loc); continue; }
    switch (c) {
      case '{': emit(Tok::kLBrace, "{", loc); break;
      case '}': emit(Tok::kRBrace, "}", loc); break;
      case '(': case '[': emit(Tok::kLParen, std::string(1, c), loc); break;
      case ')': case ']': emit(Tok::kRParen, std::string(1, c), loc); break;
      case ',': emit(Tok::kComma, ",", loc); break;
      case ':': emit(Tok::kColon, ":", loc); break;
      case ';': emit(Tok::kSemicolon, ";", loc); break;
      case '.': emit(Tok::kDot, ".", loc); break;
      case '=': emit(Tok::kEq, "=", loc); break;
      case '~': case '!': emit(Tok::kNot, "~", loc); break;
      case '&': emit(Tok::kAnd, "&", loc); break;
      case '|': emit(Tok::kOr, "|", loc); break;
      default:
        throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
    }
    advance(1);
  }
  out.push_back({Tok::kEnd, "", {line, col}});
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::kEnd) return "end of input";
  return "'" + t.text + "'";
}

Token TokenCursor::expect(Tok k, std::string_view what) {
  if (!at(k))
    throw SyntaxError(peek().loc, "expected " + std::string(what) + ", found " + describe(peek()));
  return take();
}

void TokenCursor::expect_word(std::string_view w) {
  if (!at_word(w))
    throw SyntaxError(peek().loc,
                      "expected '" + std::string(w) + "', found " + describe(peek()));
  take();
}

// ------------------------------------------------------------------ formulas

namespace {

using SF = surface::Formula;

SF parse_or(TokenCursor& cur);

SF parse_primary(TokenCursor& cur) {
  const Token& t = cur.peek();
  if (cur.accept(Tok::kLParen)) {
    SF f = parse_or(cur);
    cur.expect(Tok::kRParen, "')'");
    return f;
  }
  if (t.kind != Tok::kIdent)
    throw SyntaxError(t.loc, "expected a formula, found " + describe(t));
  Token name = cur.take();
  SF f;
  f.loc = name.loc;
  if (name.text == "true" || name.text == "false") {
    f.kind = name.text == "true" ? SF::Kind::kTrue : SF::Kind::kFalse;
    return f;
  }
  f.name = name.text;
  if (cur.at(Tok::kEq) || cur.at(Tok::kNeq)) {
    f.kind = cur.take().kind == Tok::kEq ? SF::Kind::kAtom : SF::Kind::kNotEqual;
    const Token& v = cur.peek();
    if (v.kind != Tok::kIdent && v.kind != Tok::kNumber)
      throw SyntaxError(v.loc, "expected a value after '" + f.name + " =', found " + describe(v));
    f.value = cur.take().text;
    return f;
  }
  f.kind = SF::Kind::kBareName;
  return f;
}

SF parse_unary(TokenCursor& cur) {
  if (cur.at(Tok::kNot)) {
    SF f;
    f.loc = cur.take().loc;
    f.kind = SF::Kind::kNot;
    f.children.push_back(parse_unary(cur));
    return f;
  }
  return parse_primary(cur);
}

SF parse_and(TokenCursor& cur) {
  SF lhs = parse_unary(cur);
  while (cur.at(Tok::kAnd)) {
    SF f;
    f.loc = cur.take().loc;
    f.kind = SF::Kind::kAnd;
    f.children.push_back(std::move(lhs));
    f.children.push_back(parse_unary(cur));
    lhs = std::move(f);
  }
  return lhs;
}

SF parse_or(TokenCursor& cur) {
  SF lhs = parse_and(cur);
  while (cur.at(Tok::kOr)) {
    SF f;
    f.loc = cur.take().loc;
    f.kind = SF::Kind::kOr;
    f.children.push_back(std::move(lhs));
    f.children.push_back(parse_and(cur));
    lhs = std::move(f);
  }
  return lhs;
}

}  // namespace

surface::Formula parse_surface_formula(TokenCursor& cur) { return parse_or(cur); }

}  // namespace pcplus::detail
