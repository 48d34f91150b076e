#ifndef TAUT_GITCALC_HPP
#define TAUT_GITCALC_HPP

#include "taut/rational.hpp"
#include "taut/markings.hpp"
#include "taut/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace taut {

/// Rational combination of square-free monomials in H_1..H_{n+1} on
/// (P^1)^n x P^1, H_i = pr_i^* O(1). H_i^2 = 0 is applied eagerly; the
/// last generator H_{n+1} is the fiber coordinate of the universal curve.
class SquareFreeClass {
public:
  explicit SquareFreeClass(int n) : n_(n) {}

  static SquareFreeClass constant(int n, const Rational& q);
  static SquareFreeClass h(int n, int i);
  /// Relative dualizing class -2 H_{n+1}.
  static SquareFreeClass omega(int n);
  /// Section class tau_i = H_i + H_{n+1}.
  static SquareFreeClass tau(int n, int i);

  int n() const { return n_; }
  const std::map<Mask, Rational>& terms() const { return terms_; }
  Rational coeff(Mask monomial) const;
  bool empty() const { return terms_.empty(); }

  SquareFreeClass& add(Mask monomial, const Rational& q);
  SquareFreeClass& operator+=(const SquareFreeClass& o);
  SquareFreeClass& operator-=(const SquareFreeClass& o);
  friend SquareFreeClass operator+(SquareFreeClass a, const SquareFreeClass& b) { return a += b; }
  friend SquareFreeClass operator-(SquareFreeClass a, const SquareFreeClass& b) { return a -= b; }
  friend SquareFreeClass operator*(const Rational& s, SquareFreeClass a);
  bool operator==(const SquareFreeClass&) const = default;

  /// e.g. "2*H1*H6 - H3"
  std::string to_string() const;

private:
  int n_;
  std::map<Mask, Rational> terms_;
};

SquareFreeClass multiply(const SquareFreeClass& a, const SquareFreeClass& b);
inline SquareFreeClass operator*(const SquareFreeClass& a, const SquareFreeClass& b) {
  return multiply(a, b);
}

/// pi_* along the last factor: keeps monomials containing H_{n+1} and
/// removes that factor; drops everything else.
SquareFreeClass pushforward_pi(const SquareFreeClass& a);

struct GitDescentReport {
  int n = 0;
  std::vector<Rational> x;
  std::vector<IdentityCheck> checks;
  /// Recorded computations that are not pass/fail, such as the Chow class
  /// of (tau_i - tau_j)^2.
  std::vector<std::string> notes;

  bool ok() const { return all_hold(checks); }
  nlohmann::ordered_json to_json() const;
};

/// Checks, for sum x_i = 2:
///   pi_*((omega + sum x_i tau_i)(omega + sum tau_i)) = (n-2) sum x_i H_i,
///   pi_*(-tau_i^2) = -2 H_i for every i,
///   pi_*(tau_i tau_j) = H_i + H_j, which descends to -(psi_i + psi_j)/2,
///   A(x) = -(n-2)/2 sum x_i psi_i on the quotient, both from the
///   tautological expansion and from descending (n-2) sum x_i H_i via
///   H_i -> -psi_i/2.
/// Throws UsageError if sum x != 2. Atypical x is accepted and noted.
GitDescentReport verify_git_descent(int n, const std::vector<Rational>& x);

} // namespace taut

#endif // TAUT_GITCALC_HPP
