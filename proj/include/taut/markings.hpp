#ifndef TAUT_MARKINGS_HPP
#define TAUT_MARKINGS_HPP

#include "taut/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace taut {

/// Largest number of markings supported. Subsets are 32-bit masks and the
/// pairing tables index subsets by mask.
inline constexpr int kMaxMarkings = 16;

using Mask = std::uint32_t;

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }
inline Mask bit(int index) { return Mask{1} << (index - 1); } // 1-based
inline int popcount(Mask m) { return __builtin_popcount(m); }

/// Sorted 1-based members of a mask.
std::vector<int> members_of(Mask m);
std::string format_members(Mask m);

/// Weights a_1..a_n with 0 < a_i <= 1.
class WeightVector {
public:
  explicit WeightVector(std::vector<Rational> weights);

  /// "a1,a2,...,an"; each entry "p/q" or an integer.
  static WeightVector parse(std::string_view text);
  static WeightVector uniform(int n, const Rational& value);

  int n() const { return static_cast<int>(weights_.size()); }
  const Rational& operator[](int index) const { return weights_[index - 1]; } // 1-based
  const std::vector<Rational>& values() const { return weights_; }

  Rational sum() const;
  Rational weight_of(Mask subset) const;

  /// Genus-0 admissibility: sum > 2. With `strict` the inequality
  /// 2g - 2 + sum > 2 is enforced instead (sum > 4 in genus 0).
  bool admissible(bool strict = false) const;

  std::string to_string() const { return join(weights_); }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
  std::vector<Rational> weights_;
};

/// A boundary index S, stored as the canonical representative of {S, S^c}:
/// the smaller side, and on ties the side containing marking 1.
class MarkedSubset {
public:
  MarkedSubset(int n, Mask mask);
  static MarkedSubset from_members(int n, const std::vector<int>& members);
  /// "{1,2,5}"
  static MarkedSubset parse(int n, std::string_view text);

  static Mask canonical_mask(int n, Mask mask);

  int n() const { return n_; }
  Mask mask() const { return mask_; }
  Mask complement() const { return full_mask(n_) & ~mask_; }
  int size() const { return popcount(mask_); }
  std::vector<int> members() const { return members_of(mask_); }
  bool contains(int index) const { return (mask_ & bit(index)) != 0; }
  std::string to_string() const { return format_members(mask_); }

  bool operator==(const MarkedSubset& o) const { return n_ == o.n_ && mask_ == o.mask_; }
  /// Size, then lexicographic order of the member lists.
  std::strong_ordering operator<=>(const MarkedSubset& o) const;

private:
  int n_;
  Mask mask_;
};

/// Compares masks by size then lexicographically by sorted members.
std::strong_ordering compare_masks(Mask a, Mask b);

enum class SubsetClass { CoincidencePair, Contracted, Nodal };

std::string to_string(SubsetClass c);

/// Lightness threshold: Hassett weights use sum <= 1, GIT weights sum < 1.
enum class Lightness { AtMostOne, BelowOne };

/// The side of S (as a mask) whose weight is light, if any.
std::optional<Mask> light_side(const MarkedSubset& s, const WeightVector& a,
                               Lightness rule = Lightness::AtMostOne);

SubsetClass classify_subset(const MarkedSubset& s, const WeightVector& a,
                            Lightness rule = Lightness::AtMostOne);

/// All canonical boundary subsets for n >= 4, ordered by size then lex.
std::vector<MarkedSubset> boundary_subsets(int n);

void require_marking_count(int n, int minimum = 4);

} // namespace taut

#endif // TAUT_MARKINGS_HPP
