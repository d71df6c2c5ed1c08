#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qhecke/error.hpp"
#include "qhecke/series.hpp"

namespace qhecke {

// Expression language over every builder.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ['^' exponent]
//   atom   := integer | 'q' | call | '(' expr ')'
//   exponent := ['-'] integer | '{' rational '}' | '(' rational ')'
//   call   := name '(' [group (';' group)*] ')'
//   group  := arg (',' arg)*
//   arg    := expr | '"' text '"' | 'inf'
//
// Rationals inside braces accept a sign and p/r, e.g. q^{-1/2}.

enum class NodeKind { Number, Var, Symbol, String, Call, Neg, Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind = NodeKind::Number;
  Rational value{0};     // Number; exponent of Pow
  std::string text;      // Symbol, String, Call name
  std::vector<ExprPtr> children;   // Neg, binary ops, Pow base
  std::vector<std::vector<ExprPtr>> groups;  // Call arguments

  friend bool operator==(const Expr& a, const Expr& b);
};

class ParseFailure : public Error {
 public:
  ParseFailure(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : Error(ErrorKind::ParseError, what), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Throws ParseFailure. Builder names and argument shapes are checked here.
ExprPtr parse_expression(std::string_view text);

// Canonical text; parse_expression(to_string(e)) rebuilds an equal tree.
std::string to_string(const Expr& e);

// Exact to order. Builder errors are rethrown with the failing call appended.
QSeries evaluate(const Expr& e, const Rational& order);
QSeries evaluate(std::string_view text, const Rational& order);

struct BuilderInfo {
  std::string name;
  std::string signature;
  std::string summary;
};
const std::vector<BuilderInfo>& builders();

}  // namespace qhecke
