#ifndef TAUT_MORPHISMS_HPP
#define TAUT_MORPHISMS_HPP

#include "taut/picard.hpp"

#include <map>
#include <optional>
#include <vector>

namespace taut {

/// The reduction morphism f: Mbar_{0,n} -> Mbar_{0,A}, or the analogous
/// map to a typical GIT quotient (lightness is then strict, sum < 1).
/// Boundary subsets split into coincidence pairs, contracted subsets and
/// nodal subsets according to their light side.
class ReductionMap {
public:
  explicit ReductionMap(const WeightVector& target);
  static ReductionMap to_git(const SpaceTag& git);

  int n() const { return n_; }
  const SpaceTag& source() const { return source_; }
  const SpaceTag& target() const { return target_; }

  SubsetClass classify(const MarkedSubset& s) const;
  std::optional<Mask> light_side(const MarkedSubset& s) const;

  const std::vector<MarkedSubset>& light_pairs() const { return light_pairs_; }
  const std::vector<MarkedSubset>& contracted() const { return contracted_; }
  const std::vector<MarkedSubset>& nodal() const { return nodal_; }

  /// psi'_i         -> psi_i - sum_{light S containing i} Delta_S
  /// Delta'_ij      -> sum_{light S containing i,j} Delta_S
  /// nodal'(S)      -> Delta_S
  DivisorClass pullback(const Generator& g) const;
  DivisorClass pullback(const DivisorClass& c) const;

  /// Delta_S -> Delta'_ij, 0 or nodal'(S) by classification;
  /// psi_i -> psi'_i + sum_{j: {i,j} light} Delta'_ij. Hassett targets only.
  DivisorClass pushforward(const DivisorClass& c) const;

private:
  ReductionMap(SpaceTag target, Lightness rule);

  int n_;
  SpaceTag source_;
  SpaceTag target_;
  Lightness rule_;
  std::vector<MarkedSubset> subsets_;
  std::vector<std::optional<Mask>> light_; // parallel to subsets_
  std::vector<SubsetClass> class_;
  std::vector<int> index_by_mask_;
  std::vector<MarkedSubset> light_pairs_, contracted_, nodal_;

  size_t slot(const MarkedSubset& s) const;
};

/// Weight bookkeeping for a replacement morphism
/// chi: Mbar_{0,A} -> Mbar_{0,B}, where marking `index` of weight a_index is
/// replaced by k coincident markings tau_1..tau_k of weights b_1..b_k
/// summing to a_index. The tau block occupies positions index..index+k-1
/// of B; later markings shift up by k-1.
class ReplacementData {
public:
  ReplacementData(WeightVector source, int index, std::vector<Rational> split);

  const WeightVector& source() const { return source_; }
  const WeightVector& target() const { return target_; }
  int index() const { return index_; }
  int k() const { return static_cast<int>(split_.size()); }
  const std::vector<Rational>& split() const { return split_; }

  bool is_tau(int target_marking) const;
  /// Marking of A that a marking of B comes from.
  int source_of(int target_marking) const;

private:
  WeightVector source_;
  int index_;
  std::vector<Rational> split_;
  WeightVector target_;
};

/// chi^*: classes on Hassett(B) to classes on Hassett(A).
///   psi_{tau}            -> psi_index
///   Delta_{tau,tau'}     -> -psi_index
///   Delta_{tau,j}        -> Delta_{index,j} (0 if that pair is heavy on A)
///   nodal(T)             -> nodal(T with the tau block collapsed), or 0 if T
///                           separates the tau markings
DivisorClass replacement_pullback(const ReplacementData& r, const DivisorClass& c);

/// Coefficients of L - f^*(A + lambda), where L is the upstairs log
/// canonical divisor. Verifies that the support is the contracted subsets,
/// that each coefficient is (|S|-1)(1 - sum_{i in S} a_i) on the light side
/// and that the difference is an identity in Pic; throws IdentityViolation
/// otherwise. Subsets of weight exactly 1 carry coefficient 0 and are
/// omitted.
struct DiscrepancyTerm {
  MarkedSubset subset;
  Mask light; // the light side of subset, e.g. {3,4,5}
  Rational coefficient;
};

std::vector<DiscrepancyTerm> discrepancy(const ReductionMap& f);

/// The hypothesized coefficient (|S|-1)(1 - w(S)) for a light side S.
Rational discrepancy_formula(const WeightVector& a, Mask light);

} // namespace taut

#endif // TAUT_MORPHISMS_HPP
