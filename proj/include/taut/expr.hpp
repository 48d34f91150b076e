#ifndef TAUT_EXPR_HPP
#define TAUT_EXPR_HPP

#include "taut/picard.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace taut {

/// Syntax tree of the divisor expression language:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (['*'] unary)*           juxtaposition multiplies: 2Dnodal
///   unary  := '-' unary | atom
///   atom   := INT ['/' INT] | '(' expr ')' | call
///   call   := psi(i) | bd({..}) | coinc(i,j) | nodal({..})
///           | Psi | Dnodal | Ds | Dr(r) | Delta | kappa | lambda
///           | A(w) | B(w) | C(i,w) | Ctot(w) | K | Lup(w) | git(x)
///           | pull[w](expr) | push[w](expr) | chi*[[i:]b1,..,bk](expr)
struct Expr {
  enum class Kind { Number, Generator, Aggregate, Named, Sum, Difference, Product, Negate,
                    Pull, Push, Chi };

  Kind kind = Kind::Number;
  size_t offset = 0;            // byte offset in the source text
  Rational number;              // Number
  std::string name;             // Generator/Aggregate/Named spelling
  std::vector<int> indices;     // generator indices, Dr's r, C's i, chi's marking
  std::vector<Rational> weights; // weight arguments and transport brackets
  std::vector<Expr> children;
};

class ParseError : public std::runtime_error {
public:
  ParseError(size_t offset, std::vector<std::string> expected, const std::string& message);

  size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses text into a tree. With `n`, marking indices are range-checked
/// against 1..n as well.
Expr parse_expr(std::string_view text, std::optional<int> n = std::nullopt);

/// Canonical spelling; parse_expr(print_expr(e)) prints back identically.
std::string print_expr(const Expr& e);

/// Evaluates on the ambient space. Aggregates that vanish on the space
/// append a warning instead of failing.
DivisorClass evaluate(const Expr& e, const SpaceTag& ambient,
                      std::vector<std::string>* warnings = nullptr);

DivisorClass evaluate(std::string_view text, const SpaceTag& ambient,
                      std::vector<std::string>* warnings = nullptr);

} // namespace taut

#endif // TAUT_EXPR_HPP
