#include "superform/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace superform {

namespace {

struct Token {
  enum Kind { Number, Ident, Op, LParen, RParen, Comma, End } kind;
  std::string text;
  double num = 0.0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::End;
      tok_.text.clear();
      return;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = s_.c_str() + pos_;
      char* end = nullptr;
      tok_.num = std::strtod(start, &end);
      const std::size_t len = end - start;
      tok_.text = s_.substr(pos_, len);
      tok_.kind = Token::Number;
      pos_ += len;
      col_ += static_cast<int>(len);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 0;
      while (pos_ + len < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_ + len])) ||
              s_[pos_ + len] == '_'))
        ++len;
      tok_.text = s_.substr(pos_, len);
      tok_.kind = Token::Ident;
      pos_ += len;
      col_ += static_cast<int>(len);
      return;
    }
    switch (c) {
      case '(': tok_.kind = Token::LParen; break;
      case ')': tok_.kind = Token::RParen; break;
      case ',': tok_.kind = Token::Comma; break;
      case '+': case '-': case '*': case '/': case '^':
        tok_.kind = Token::Op;
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
    tok_.text = std::string(1, c);
    ++pos_;
    ++col_;
  }

  std::string s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, int dim) : lex_(text), dim_(dim) {}

  ScalarField parse() {
    ScalarField f = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End)
      throw ParseError("trailing input '" + t.text + "'", t.line, t.col);
    return f;
  }

 private:
  ScalarField expr() {
    ScalarField f = term();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      const Token op = lex_.take();
      const ScalarField rhs = term();
      f = (op.text == "+") ? f + rhs : f - rhs;
    }
    return f;
  }

  ScalarField term() {
    ScalarField f = factor();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      const Token op = lex_.take();
      const ScalarField rhs = factor();
      f = (op.text == "*") ? f * rhs : f / rhs;
    }
    return f;
  }

  ScalarField factor() {
    ScalarField base = unary();
    if (lex_.peek().kind == Token::Op && lex_.peek().text == "^") {
      lex_.take();
      const ScalarField e = factor();  // right associative
      // constant integer exponents keep the base sign-free power rule
      const Vec probe = Vec::Zero(dim_);
      bool is_const = true;
      double ev = 0.0;
      try {
        ev = e.value(probe);
        is_const = (e.gradient(probe).norm() == 0.0) &&
                   (e.value(Vec::Ones(dim_)) == ev);
      } catch (...) {
        is_const = false;
      }
      return is_const ? pow(base, ev) : pow(base, e);
    }
    return base;
  }

  ScalarField unary() {
    if (lex_.peek().kind == Token::Op && lex_.peek().text == "-") {
      lex_.take();
      return -unary();
    }
    return primary();
  }

  ScalarField primary() {
    Token t = lex_.take();
    if (t.kind == Token::Number) return constant_field(dim_, t.num);
    if (t.kind == Token::LParen) {
      ScalarField f = expr();
      expect_rparen();
      return f;
    }
    if (t.kind != Token::Ident)
      throw ParseError("expected a number, identifier or '('", t.line, t.col);

    if (lex_.peek().kind == Token::LParen) {
      lex_.take();
      std::vector<ScalarField> args;
      args.push_back(expr());
      while (lex_.peek().kind == Token::Comma) {
        lex_.take();
        args.push_back(expr());
      }
      expect_rparen();
      return apply_function(t, args);
    }
    return variable(t);
  }

  void expect_rparen() {
    const Token t = lex_.take();
    if (t.kind != Token::RParen)
      throw ParseError("expected ')'", t.line, t.col);
  }

  ScalarField variable(const Token& t) {
    if (t.text.size() >= 2 && t.text[0] == 'x') {
      char* end = nullptr;
      const long idx = std::strtol(t.text.c_str() + 1, &end, 10);
      if (*end == '\0' && idx >= 1) {
        if (idx > dim_)
          throw ParseError("coordinate " + t.text + " beyond dimension " +
                               std::to_string(dim_),
                           t.line, t.col);
        return coordinate(dim_, static_cast<int>(idx) - 1);
      }
    }
    if (t.text == "pi") return constant_field(dim_, M_PI);
    throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
  }

  ScalarField apply_function(const Token& t, std::vector<ScalarField>& args) {
    auto need = [&](std::size_t k) {
      if (args.size() != k)
        throw ParseError("function '" + t.text + "' expects " + std::to_string(k) +
                             " argument(s)",
                         t.line, t.col);
    };
    if (t.text == "max") {
      if (args.size() < 1)
        throw ParseError("max expects at least one argument", t.line, t.col);
      return max_field(args);
    }
    need(1);
    const ScalarField& a = args.front();
    if (t.text == "sin") return sin(a);
    if (t.text == "cos") return cos(a);
    if (t.text == "cosh") return cosh(a);
    if (t.text == "sinh") return sinh(a);
    if (t.text == "exp") return exp(a);
    if (t.text == "log") return log(a);
    if (t.text == "sqrt") return sqrt(a);
    if (t.text == "abs") return abs(a);
    throw ParseError("unknown function '" + t.text + "'", t.line, t.col);
  }

  Lexer lex_;
  int dim_;
};

}  // namespace

ScalarField parse_expression(const std::string& text, int dim) {
  check_dim(dim);
  return Parser(text, dim).parse();
}

}  // namespace superform
