#ifndef TAUT_PICARD_HPP
#define TAUT_PICARD_HPP

#include "taut/markings.hpp"
#include "taut/rational.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace taut {

/// Ambient space of a divisor class: Mbar_{0,n}, a Hassett space
/// Mbar_{0,A}, or a GIT quotient (P^1)^n //_x SL_2 with sum x_i = 2.
class SpaceTag {
public:
  enum class Kind { ModuliBar, Hassett, GitQuotient };

  static SpaceTag moduli_bar(int n);
  static SpaceTag hassett(const WeightVector& a);
  /// Rejects atypical x (some subset weight exactly 1) unless told otherwise;
  /// the message names the offending subset.
  static SpaceTag git_quotient(std::vector<Rational> x, bool allow_atypical = false);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  bool is_moduli_bar() const { return kind_ == Kind::ModuliBar; }
  bool is_hassett() const { return kind_ == Kind::Hassett; }
  bool is_git() const { return kind_ == Kind::GitQuotient; }

  /// Hassett or GIT weights; all ones for Mbar_{0,n}.
  WeightVector weights() const;
  const std::vector<Rational>& raw_weights() const { return weights_; }

  /// "Mbar(0,5)", "Hassett(1,1,1/10,1/10,1/10)", "Git(2/5,...)".
  std::string to_string() const;
  static SpaceTag parse(const std::string& text);

  friend bool operator==(const SpaceTag&, const SpaceTag&) = default;

private:
  SpaceTag(Kind kind, int n, std::vector<Rational> weights)
      : kind_(kind), n_(n), weights_(std::move(weights)) {}

  Kind kind_;
  int n_;
  std::vector<Rational> weights_;
};

/// First subset of {1..n} whose x-weight is exactly 1, if any.
std::optional<Mask> atypical_witness(const std::vector<Rational>& x);

/// A tautological generator. `data` is a mask: {i} for Psi, {i,j} for
/// Coincidence, the canonical boundary mask for Boundary and Nodal.
struct Generator {
  enum class Kind : std::uint8_t { Psi, Boundary, Coincidence, Nodal };

  Kind kind;
  Mask data;

  static Generator psi(int i) { return {Kind::Psi, bit(i)}; }
  static Generator boundary(const MarkedSubset& s) { return {Kind::Boundary, s.mask()}; }
  static Generator coincidence(int i, int j) { return {Kind::Coincidence, bit(i) | bit(j)}; }
  static Generator nodal(const MarkedSubset& s) { return {Kind::Nodal, s.mask()}; }

  int index() const { return __builtin_ctz(data) + 1; }
  std::pair<int, int> pair_indices() const;

  /// "psi:3", "bd:{1,2}", "coinc:3,4", "nodal:{1,2}"
  std::string key() const;
  /// Expression-language spelling: psi(3), bd({1,2}), coinc(3,4), nodal({1,2}).
  std::string expression() const;

  bool operator==(const Generator&) const = default;
  std::strong_ordering operator<=>(const Generator& o) const {
    if (auto c = kind <=> o.kind; c != 0)
      return c;
    return compare_masks(data, o.data);
  }
};

bool is_legal(const SpaceTag& space, const Generator& g);

/// Finite rational combination of generators of one space, kept in
/// normal form: no zero coefficients, only legal generators.
class DivisorClass {
public:
  explicit DivisorClass(SpaceTag space) : space_(std::move(space)) {}

  const SpaceTag& space() const { return space_; }
  int n() const { return space_.n(); }
  const std::map<Generator, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(const Generator& g) const;
  bool empty() const { return coeffs_.empty(); }

  /// Adds c*g. Throws UsageError if g is not a generator of the space.
  DivisorClass& add(const Generator& g, const Rational& c);

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass& operator*=(const Rational& s);

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }

  /// Same space and identical normal-form coefficients. Equality in the
  /// Picard group is eq_classes().
  bool operator==(const DivisorClass& o) const {
    return space_ == o.space_ && coeffs_ == o.coeffs_;
  }

  /// Parseable expression, e.g. "psi(1) - 1/2*bd({1,2})"; "0" if empty.
  std::string to_string() const;

private:
  void require_same_space(const DivisorClass& o) const;

  SpaceTag space_;
  std::map<Generator, Rational> coeffs_;
};

enum class Aggregate { PsiTotal, DeltaNodal, DeltaS, DeltaR, DeltaTotal, Kappa, Lambda };

std::string to_string(Aggregate a);

/// Expands psi, Delta_nodal, Delta_s, Delta_r, Delta, kappa, lambda into
/// generators. kappa = -Delta_nodal and lambda = 0 in genus 0. Delta_r is
/// only defined on Mbar_{0,n}. If `warnings` is given, aggregates that
/// expand to an empty sum on this space append a note there.
DivisorClass expand_aggregate(const SpaceTag& space, Aggregate name, int r = 0,
                              std::vector<std::string>* warnings = nullptr);

/// Delta_ij = -(psi_i + psi_j)/2 on a GIT quotient.
DivisorClass git_coincidence_class(const SpaceTag& space, int i, int j);

/// sum_{i,j | k,l} Delta_S - sum_{i,k | j,l} Delta_S on Mbar_{0,n}.
DivisorClass keel_relation(int n, int i, int j, int k, int l);

/// The coefficient (r(n-r) - n + 1)/(n - 1) of Delta_r in kappa + psi.
Rational positivity_coefficient(int n, int r);

/// kappa + psi - sum_r c_r Delta_r, fully expanded. Zero in Pic.
DivisorClass positivity_relation(int n);

/// Equality in the rational Picard group. Mbar_{0,n}: F-curve
/// fingerprints. Hassett: fingerprints of the pullbacks to Mbar_{0,n}
/// (pullback along the reduction map is injective). GIT: psi coefficients.
bool eq_classes(const DivisorClass& a, const DivisorClass& b);

/// Canonical JSON: {"space": "...", "coeffs": [{"gen": key, "val": "p/q"}, ...]}.
nlohmann::ordered_json to_json(const DivisorClass& c);
DivisorClass class_from_json(const nlohmann::ordered_json& j);
Generator parse_generator_key(int n, const std::string& key);

} // namespace taut

#endif // TAUT_PICARD_HPP
