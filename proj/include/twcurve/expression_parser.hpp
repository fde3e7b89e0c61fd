#pragma once

/**
 * Parser for the expressions in job files.
 *
 * Grammar (whitespace is ignored between tokens):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := ('+' | '-') unary | power
 *   power   := primary ('^' integer)?
 *   primary := integer | identifier | '(' expr ')'
 *
 * Rational literals are quotients of integers. Identifiers are the variable
 * names supplied by the caller plus `a`, the generator of the declared field;
 * using `a` when no field was declared is an error.
 * Unary minus binds looser than '^', so -x^2 is -(x^2).
 */

#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/number_field.hpp"
#include "twcurve/rational.hpp"
#include "twcurve/rational_function.hpp"

namespace twc {

/// Where an expression starts inside a job file, for error locations.
struct SourceLocation {
  int line = 1;
  int column = 1;
};

namespace detail {

struct Expr {
  enum class Kind { Number, Variable, FieldGenerator, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  Integer number;
  std::size_t var = 0;
  unsigned exponent = 0;
  std::unique_ptr<Expr> lhs, rhs;
  int column = 0;  // 1-based column of the operator or token
};

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& variables, SourceLocation where)
      : text_(text), vars_(variables), where_(where) {}

  std::unique_ptr<Expr> parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    auto e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(where_.line, where_.column + static_cast<int>(pos), message);
  }
  int column_of(std::size_t pos) const { return where_.column + static_cast<int>(pos); }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static std::unique_ptr<Expr> node(Expr::Kind k, std::unique_ptr<Expr> a, std::unique_ptr<Expr> b, int column) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    e->column = column;
    return e;
  }

  std::unique_ptr<Expr> expr() {
    auto e = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+'))
        e = node(Expr::Kind::Add, std::move(e), term(), column_of(at));
      else if (accept('-'))
        e = node(Expr::Kind::Sub, std::move(e), term(), column_of(at));
      else
        return e;
    }
  }

  std::unique_ptr<Expr> term() {
    auto e = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*'))
        e = node(Expr::Kind::Mul, std::move(e), unary(), column_of(at));
      else if (accept('/'))
        e = node(Expr::Kind::Div, std::move(e), unary(), column_of(at));
      else
        return e;
    }
  }

  std::unique_ptr<Expr> unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) return node(Expr::Kind::Neg, unary(), nullptr, column_of(at));
    if (accept('+')) return unary();
    return power();
  }

  std::unique_ptr<Expr> power() {
    auto base = primary();
    skip_space();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip_space();
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected a non-negative integer exponent after '^'");
    std::string_view d = text_.substr(digits, pos_ - digits);
    if (d.size() > 6) fail_at(digits, "exponent too large");
    auto e = node(Expr::Kind::Pow, std::move(base), nullptr, column_of(at));
    e->exponent = static_cast<unsigned>(std::stoul(std::string(d)));
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') fail("chained exponents need parentheses");
    return e;
  }

  std::unique_ptr<Expr> primary() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto e = node(Expr::Kind::Number, nullptr, nullptr, column_of(at));
      e->number = Integer(std::string(text_.substr(at, pos_ - at)));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(at, pos_ - at));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) {
          auto e = node(Expr::Kind::Variable, nullptr, nullptr, column_of(at));
          e->var = i;
          return e;
        }
      if (name == "a") return node(Expr::Kind::FieldGenerator, nullptr, nullptr, column_of(at));
      fail_at(at, "unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  SourceLocation where_;
  std::size_t pos_ = 0;
};

/// Evaluation into numerator / denominator pairs; normalization is left to the caller.
struct Fraction {
  MultiPoly num, den;
};

inline Fraction evaluate(const Expr& e, std::size_t nvars, const std::optional<NumberField>& field,
                         const SourceLocation& where, bool allow_division) {
  auto at = [&](const Expr& n) { return SourceLocation{where.line, n.column}; };
  auto one = [&] { return MultiPoly::constant(nvars, FieldElement(1)); };
  switch (e.kind) {
    case Expr::Kind::Number:
      return {MultiPoly::constant(nvars, FieldElement(Rational(e.number))), one()};
    case Expr::Kind::Variable:
      return {MultiPoly::variable(nvars, e.var), one()};
    case Expr::Kind::FieldGenerator:
      if (!field) throw ParseError(where.line, e.column, "'a' is outside the declared field (no field was declared)");
      return {MultiPoly::constant(nvars, FieldElement::generator(*field)), one()};
    case Expr::Kind::Neg: {
      Fraction v = evaluate(*e.lhs, nvars, field, where, allow_division);
      return {-v.num, std::move(v.den)};
    }
    case Expr::Kind::Pow: {
      Fraction v = evaluate(*e.lhs, nvars, field, where, allow_division);
      return {v.num.pow(e.exponent), v.den.pow(e.exponent)};
    }
    default:
      break;
  }
  Fraction a = evaluate(*e.lhs, nvars, field, where, allow_division);
  Fraction b = evaluate(*e.rhs, nvars, field, where, allow_division);
  switch (e.kind) {
    case Expr::Kind::Add:
      if (a.den == b.den) return {a.num + b.num, std::move(a.den)};
      return {a.num * b.den + b.num * a.den, a.den * b.den};
    case Expr::Kind::Sub:
      if (a.den == b.den) return {a.num - b.num, std::move(a.den)};
      return {a.num * b.den - b.num * a.den, a.den * b.den};
    case Expr::Kind::Mul:
      return {a.num * b.num, a.den * b.den};
    case Expr::Kind::Div: {
      if (b.num.is_zero()) throw ParseError(at(e).line, e.column, "division by zero");
      if (!allow_division && !b.num.is_constant())
        throw ParseError(at(e).line, e.column, "division by a non-constant in a polynomial");
      return {a.num * b.den, a.den * b.num};
    }
    default:
      break;
  }
  throw ParseError(where.line, e.column, "internal: unknown expression node");
}

}  // namespace detail

/// Polynomial in the given variables; division is only allowed by constants.
inline MultiPoly parse_polynomial(std::string_view text, const std::vector<std::string>& variables,
                                  const std::optional<NumberField>& field = std::nullopt, SourceLocation where = {}) {
  auto ast = detail::ExpressionParser(text, variables, where).parse();
  detail::Fraction f = detail::evaluate(*ast, variables.size(), field, where, false);
  auto d = f.den.constant_value();
  return f.num * MultiPoly::constant(variables.size(), d->inverse());
}

/// Rational function in x and y.
inline RationalFunction parse_rational_function(std::string_view text, const std::optional<NumberField>& field = std::nullopt,
                                                SourceLocation where = {}) {
  static const std::vector<std::string> xy{"x", "y"};
  auto ast = detail::ExpressionParser(text, xy, where).parse();
  detail::Fraction f = detail::evaluate(*ast, 2, field, where, true);
  if (f.den.is_zero()) throw ParseError(where.line, where.column, "denominator vanishes identically");
  return RationalFunction(std::move(f.num), std::move(f.den));
}

/// A constant of the field (no variables).
inline FieldElement parse_constant(std::string_view text, const std::optional<NumberField>& field = std::nullopt, SourceLocation where = {}) {
  MultiPoly p = parse_polynomial(text, {}, field, where);
  auto c = p.constant_value();
  return c ? *c : FieldElement(0);
}

}  // namespace twc
