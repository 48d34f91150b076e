#ifndef TAUT_FCURVES_HPP
#define TAUT_FCURVES_HPP

#include "taut/picard.hpp"

#include <array>
#include <string>
#include <vector>

namespace taut {

/// An F-curve on Mbar_{0,n}: a partition of {1..n} into four nonempty
/// blocks, stored with blocks sorted by their minimum element.
class FCurve {
public:
  FCurve(int n, std::array<Mask, 4> blocks);

  int n() const { return n_; }
  const std::array<Mask, 4>& blocks() const { return blocks_; }

  /// "({1,2}|{3}|{4}|{5})"
  std::string to_string() const;
  static FCurve parse(int n, const std::string& text);

  /// Relabels markings: index i goes to perm[i-1].
  FCurve relabeled(const std::vector<int>& perm) const;

  bool operator==(const FCurve&) const = default;

private:
  int n_;
  std::array<Mask, 4> blocks_;
};

/// All partitions of {1..n} into exactly four blocks, in restricted-growth
/// order. S(n,4) curves: 1, 10, 65, 350, 1701 for n = 4..8.
std::vector<FCurve> enumerate_fcurves(int n);

/// Intersection number with a generator of Mbar_{0,n}.
///   psi_k . F = 1 if {k} is a block, else 0;
///   Delta_S . F = +1 if S or S^c is a union of two blocks,
///                 -1 if S or S^c is one block, else 0.
int pair_generator(const Generator& g, const FCurve& f);

/// c . F for a class on Mbar_{0,n}.
Rational pair(const DivisorClass& c, const FCurve& f);

/// Sparse intersection table for one n: generator columns are
/// psi_1..psi_n followed by boundary_subsets(n); every F-curve row has at
/// most eleven nonzero entries.
struct PairingTable {
  int n;
  std::vector<FCurve> curves;
  std::vector<MarkedSubset> subsets;
  std::vector<int> subset_column; // by canonical mask, -1 if not a boundary mask
  std::vector<std::vector<std::pair<int, int>>> rows;

  int columns() const { return n + static_cast<int>(subsets.size()); }
  int column_of(const Generator& g) const;
};

/// Built once per n, shared and immutable afterwards.
const PairingTable& pairing_table(int n);

/// Degrees of a class on every F-curve, in enumerate_fcurves order.
/// Accepts Mbar_{0,n} classes only.
std::vector<Rational> fingerprint(const DivisorClass& c);

/// Fingerprint of a class on any space: Hassett and GIT classes are
/// pulled back to Mbar_{0,n} first.
std::vector<Rational> fingerprint_anywhere(const DivisorClass& c);

bool is_zero_vector(const std::vector<Rational>& v);

} // namespace taut

#endif // TAUT_FCURVES_HPP
