#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "mpl/ast.hpp"

namespace mpl {

enum class Tok {
  End,
  Ident,
  IntLit,
  FloatLit,
  // keywords
  KwInt, KwFloat, KwBool, KwVoid,
  KwIf, KwElse, KwWhile, KwFor, KwForeach, KwIn,
  KwReturn, KwBreak, KwContinue,
  KwTrue, KwFalse,
  // punctuation
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semi, At,
  Assign,
  Plus, Minus, Star, Slash, Percent,
  EqEq, NotEq, Lt, Le, Gt, Ge,
  AndAnd, OrOr, Not,
};

struct Token {
  Tok kind;
  std::string text;
  int64_t int_val = 0;
  double float_val = 0;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string source, std::string file)
      : src_(std::move(source)), file_(std::move(file)) {}

  // Tokenizes the whole input. On a bad character a diagnostic is appended
  // and the character skipped.
  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      Token t = next(diags);
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  std::string src_, file_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  char peek(size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') { line_++; col_ = 1; } else { col_++; }
    return c;
  }
  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (isspace((unsigned char)c)) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }
  SourceSpan here() const { return {file_, line_, col_, 1}; }

  Token next(std::vector<Diagnostic>& diags) {
    if (pos_ >= src_.size()) return {Tok::End, "", 0, 0, here()};
    SourceSpan sp = here();
    char c = peek();

    if (isalpha((unsigned char)c) || c == '_') {
      std::string s;
      while (isalnum((unsigned char)peek()) || peek() == '_') s += advance();
      sp.length = (int)s.size();
      Tok k = keyword(s);
      return {k, s, 0, 0, sp};
    }
    if (isdigit((unsigned char)c)) {
      std::string s;
      bool is_float = false;
      while (isdigit((unsigned char)peek())) s += advance();
      if (peek() == '.' && isdigit((unsigned char)peek(1))) {
        is_float = true;
        s += advance();
        while (isdigit((unsigned char)peek())) s += advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        s += advance();
        if (peek() == '+' || peek() == '-') s += advance();
        while (isdigit((unsigned char)peek())) s += advance();
      }
      sp.length = (int)s.size();
      Token t{is_float ? Tok::FloatLit : Tok::IntLit, s, 0, 0, sp};
      if (is_float) t.float_val = strtod(s.c_str(), nullptr);
      else t.int_val = strtoll(s.c_str(), nullptr, 10);
      return t;
    }

    advance();
    auto two = [&](char second, Tok a, Tok b) {
      if (peek() == second) { advance(); return Token{a, "", 0, 0, sp}; }
      return Token{b, "", 0, 0, sp};
    };
    switch (c) {
      case '(': return {Tok::LParen, "(", 0, 0, sp};
      case ')': return {Tok::RParen, ")", 0, 0, sp};
      case '{': return {Tok::LBrace, "{", 0, 0, sp};
      case '}': return {Tok::RBrace, "}", 0, 0, sp};
      case '[': return {Tok::LBracket, "[", 0, 0, sp};
      case ']': return {Tok::RBracket, "]", 0, 0, sp};
      case ',': return {Tok::Comma, ",", 0, 0, sp};
      case ';': return {Tok::Semi, ";", 0, 0, sp};
      case '@': return {Tok::At, "@", 0, 0, sp};
      case '+': return {Tok::Plus, "+", 0, 0, sp};
      case '-': return {Tok::Minus, "-", 0, 0, sp};
      case '*': return {Tok::Star, "*", 0, 0, sp};
      case '/': return {Tok::Slash, "/", 0, 0, sp};
      case '%': return {Tok::Percent, "%", 0, 0, sp};
      case '=': return two('=', Tok::EqEq, Tok::Assign);
      case '!': return two('=', Tok::NotEq, Tok::Not);
      case '<': return two('=', Tok::Le, Tok::Lt);
      case '>': return two('=', Tok::Ge, Tok::Gt);
      case '&':
        if (peek() == '&') { advance(); return {Tok::AndAnd, "&&", 0, 0, sp}; }
        break;
      case '|':
        if (peek() == '|') { advance(); return {Tok::OrOr, "||", 0, 0, sp}; }
        break;
    }
    diags.push_back({sp, std::string("unexpected character '") + c + "'"});
    return next(diags);
  }

  static Tok keyword(const std::string& s) {
    if (s == "int") return Tok::KwInt;
    if (s == "float") return Tok::KwFloat;
    if (s == "bool") return Tok::KwBool;
    if (s == "void") return Tok::KwVoid;
    if (s == "if") return Tok::KwIf;
    if (s == "else") return Tok::KwElse;
    if (s == "while") return Tok::KwWhile;
    if (s == "for") return Tok::KwFor;
    if (s == "foreach") return Tok::KwForeach;
    if (s == "in") return Tok::KwIn;
    if (s == "return") return Tok::KwReturn;
    if (s == "break") return Tok::KwBreak;
    if (s == "continue") return Tok::KwContinue;
    if (s == "true") return Tok::KwTrue;
    if (s == "false") return Tok::KwFalse;
    return Tok::Ident;
  }
};

}  // namespace mpl
