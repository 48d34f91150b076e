// Independent reference computations for the tests. Nothing here calls the
// code under test for the quantity being checked; the constructions are
// written from first principles (brute force or the family calculus on
// the universal curve).
#pragma once

#include "taut/divisors.hpp"
#include "taut/fcurves.hpp"
#include "taut/picard.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace taut;

// --- seeded generators -----------------------------------------------------

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational weight(int max_den = 10) {
    const int q = uniform(1, max_den);
    return frac(uniform(1, q), q);
  }

  WeightVector admissible(int n) {
    for (;;) {
      std::vector<Rational> w;
      const bool light = uniform(0, 1) == 1;
      for (int i = 0; i < n; ++i)
        w.push_back(light && i >= 2 ? Rational(weight() / 3) : weight());
      WeightVector v(w);
      if (v.admissible())
        return v;
    }
  }

  std::vector<Rational> typical_x(int n) {
    for (;;) {
      std::vector<int> m(static_cast<size_t>(n));
      int total = 0;
      for (auto& v : m)
        total += v = uniform(1, 9);
      std::vector<Rational> x;
      bool ok = true;
      for (int v : m) {
        x.push_back(frac(2 * v, total));
        ok = ok && x.back() <= 1;
      }
      if (ok && !atypical_witness(x))
        return x;
    }
  }

  // Random class on Mbar(0,n) with small coefficients.
  DivisorClass moduli_class(int n, int terms = 5) {
    const auto subsets = boundary_subsets(n);
    DivisorClass c(SpaceTag::moduli_bar(n));
    for (int t = 0; t < terms; ++t) {
      const Rational q = frac(uniform(-4, 4), uniform(1, 3));
      if (uniform(0, 3) == 0)
        c.add(Generator::psi(uniform(1, n)), q);
      else
        c.add(Generator::boundary(subsets[static_cast<size_t>(uniform(0, static_cast<int>(subsets.size()) - 1))]), q);
    }
    return c;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// --- brute-force combinatorics ----------------------------------------------

inline int bits(Mask m) {
  int c = 0;
  for (; m; m &= m - 1)
    ++c;
  return c;
}

inline Rational weight_sum(const std::vector<Rational>& a, Mask m) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (m & (Mask{1} << i))
      s += a[i];
  return s;
}

// Canonical side: the smaller one, and on ties the one holding marking 1.
inline Mask canonical(int n, Mask m) {
  const Mask c = ((Mask{1} << n) - 1) & ~m;
  if (bits(m) != bits(c))
    return bits(m) < bits(c) ? m : c;
  return (m & 1) ? m : c;
}

// Partitions of {1..n} into four blocks, each block a mask, by labelling
// every marking with 0..3 and keeping surjective labellings.
inline std::set<std::vector<Mask>> four_block_partitions(int n) {
  std::set<std::vector<Mask>> out;
  std::vector<int> label(static_cast<size_t>(n), 0);
  for (long code = 0; code < (1L << (2 * n)); ++code) {
    std::vector<Mask> blocks(4, 0);
    for (int i = 0; i < n; ++i)
      blocks[static_cast<size_t>((code >> (2 * i)) & 3)] |= Mask{1} << i;
    if (std::count(blocks.begin(), blocks.end(), Mask{0}))
      continue;
    std::sort(blocks.begin(), blocks.end());
    out.insert(blocks);
  }
  return out;
}

// --- family calculus on the universal curve -----------------------------------
//
// A linear form w*omega + sum s_i sigma_i. Products are pushed forward with
//   pi_*(omega^2) = kappa, pi_*(omega sigma_i) = psi_i,
//   pi_*(sigma_i^2) = -psi_i, pi_*(sigma_i sigma_j) = Delta_ij,
// where Delta_ij is the coincidence divisor if it exists on the space and
// zero otherwise (sections of a heavy pair never meet).

struct Form {
  Rational omega;
  std::vector<Rational> sigma; // 1-based index i at sigma[i-1]
};

inline Form form(int n, const Rational& omega) { return {omega, std::vector<Rational>(static_cast<size_t>(n))}; }

inline DivisorClass delta_ij(const SpaceTag& space, int i, int j) {
  if (space.is_moduli_bar())
    return DivisorClass(space);
  if (space.is_git()) {
    DivisorClass c(space);
    c.add(Generator::psi(i), frac(-1, 2));
    c.add(Generator::psi(j), frac(-1, 2));
    return c;
  }
  const WeightVector a = space.weights();
  DivisorClass c(space);
  if (a[i] + a[j] <= 1)
    c.add(Generator::coincidence(std::min(i, j), std::max(i, j)), 1);
  return c;
}

inline DivisorClass push_product(const SpaceTag& space, const Form& x, const Form& y) {
  const int n = space.n();
  DivisorClass out(space);
  // kappa = -Dnodal, spelled out from the generator list.
  DivisorClass kappa(space);
  if (space.is_moduli_bar()) {
    for (const auto& s : boundary_subsets(n))
      kappa.add(Generator::boundary(s), -1);
  } else if (space.is_hassett()) {
    for (const auto& s : boundary_subsets(n))
      if (is_legal(space, Generator::nodal(s)))
        kappa.add(Generator::nodal(s), -1);
  }
  out += (x.omega * y.omega) * kappa;
  for (int i = 1; i <= n; ++i) {
    const Rational xi = x.sigma[static_cast<size_t>(i - 1)], yi = y.sigma[static_cast<size_t>(i - 1)];
    out.add(Generator::psi(i), x.omega * yi + xi * y.omega - xi * yi);
    for (int j = 1; j <= n; ++j)
      if (j != i)
        out += (xi * y.sigma[static_cast<size_t>(j - 1)]) * delta_ij(space, i, j);
  }
  return out;
}

// omega + sum w_i sigma_i
inline Form weighted(const std::vector<Rational>& w) {
  Form f = form(static_cast<int>(w.size()), 1);
  f.sigma = w;
  return f;
}

inline DivisorClass family_A(const SpaceTag& space, const std::vector<Rational>& w) {
  return push_product(space, weighted(w), weighted(std::vector<Rational>(w.size(), Rational(1))));
}

inline DivisorClass family_B(const SpaceTag& space, const std::vector<Rational>& w) {
  return push_product(space, weighted(w), weighted(w));
}

inline DivisorClass family_C(const SpaceTag& space, const std::vector<Rational>& w, int i) {
  Form s = form(static_cast<int>(w.size()), 0);
  s.sigma[static_cast<size_t>(i - 1)] = 1;
  return push_product(space, weighted(w), s);
}

// chi^* A(b) computed on the family of Hassett(a): the k sections
// tau_1..tau_k all equal sigma_index.
inline DivisorClass family_replacement_A(const WeightVector& a, int index,
                                         const std::vector<Rational>& split) {
  const SpaceTag space = SpaceTag::hassett(a);
  std::vector<Rational> w = a.values(), ones(a.values().size(), Rational(1));
  // Collecting sum_l b_l sigma_tau_l = a_index sigma_index leaves w as is;
  // the unweighted form picks up k copies of sigma_index.
  ones[static_cast<size_t>(index - 1)] = static_cast<long>(split.size());
  return push_product(space, weighted(w), weighted(ones));
}

// --- reduction pullback from the generator rules, on raw masks -----------------

struct Reduction {
  int n;
  std::vector<Rational> a;
  bool strict; // GIT lightness: weight < 1

  bool light(Mask m) const {
    const Rational w = weight_sum(a, m);
    return strict ? w < 1 : w <= 1;
  }

  // All boundary masks S (canonical) and the side of S that is light.
  std::vector<std::pair<Mask, Mask>> light_sides() const {
    std::vector<std::pair<Mask, Mask>> out;
    const Mask full = (Mask{1} << n) - 1;
    for (Mask m = 1; m < full; ++m) {
      if (bits(m) < 2 || bits(m) > n - 2 || canonical(n, m) != m)
        continue;
      if (light(m))
        out.emplace_back(m, m);
      else if (light(full & ~m))
        out.emplace_back(m, full & ~m);
    }
    return out;
  }

  DivisorClass psi(int i) const {
    DivisorClass c(SpaceTag::moduli_bar(n));
    c.add(Generator::psi(i), 1);
    for (const auto& [s, l] : light_sides())
      if (l & (Mask{1} << (i - 1)))
        c.add({Generator::Kind::Boundary, s}, -1);
    return c;
  }

  DivisorClass coinc(int i, int j) const {
    DivisorClass c(SpaceTag::moduli_bar(n));
    const Mask pair = (Mask{1} << (i - 1)) | (Mask{1} << (j - 1));
    for (const auto& [s, l] : light_sides())
      if ((l & pair) == pair)
        c.add({Generator::Kind::Boundary, s}, 1);
    return c;
  }
};

// Upstairs log canonical divisor K + sum_{light pairs} (a_i+a_j) D_ij + D_rest
// and f^*(A) by hand, then their difference coefficient per boundary mask.
inline std::map<Mask, Rational> discrepancy_by_hand(const std::vector<Rational>& a) {
  const int n = static_cast<int>(a.size());
  const Reduction f{n, a, false};
  const Mask full = (Mask{1} << n) - 1;
  std::map<Mask, Rational> L, pulled;

  // K = psi - 2 Delta; psi_i in boundary terms stays a psi generator, so
  // track psi coefficients separately and require them to cancel.
  std::vector<Rational> psi_L(static_cast<size_t>(n), 1), psi_P(static_cast<size_t>(n), 0);
  for (Mask m = 1; m < full; ++m) {
    if (bits(m) < 2 || bits(m) > n - 2 || canonical(n, m) != m)
      continue;
    L[m] = -2 + 1; // -2 Delta from K, +1 from Delta_rest or the pair term
    if (bits(m) == 2 && weight_sum(a, m) <= 1)
      L[m] += weight_sum(a, m) - 1;
    if (bits(full & ~m) == 2 && weight_sum(a, full & ~m) <= 1)
      L[m] += weight_sum(a, full & ~m) - 1;
  }

  // f^*(A) = f^*(psi') + sum_{pairs legal} (a_i+a_j) f^*(D'_ij) - f^*(Dnodal').
  for (int i = 1; i <= n; ++i) {
    psi_P[static_cast<size_t>(i - 1)] += 1;
    for (const auto& [s, l] : f.light_sides())
      if (l & (Mask{1} << (i - 1)))
        pulled[s] -= 1;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const Mask pair = (Mask{1} << (i - 1)) | (Mask{1} << (j - 1));
      if (weight_sum(a, pair) > 1)
        continue;
      for (const auto& [s, l] : f.light_sides())
        if ((l & pair) == pair)
          pulled[s] += a[static_cast<size_t>(i - 1)] + a[static_cast<size_t>(j - 1)];
    }
  for (Mask m = 1; m < full; ++m) {
    if (bits(m) < 2 || bits(m) > n - 2 || canonical(n, m) != m)
      continue;
    if (!f.light(m) && !f.light(full & ~m))
      pulled[m] -= 1;
  }

  std::map<Mask, Rational> diff;
  for (const auto& [m, q] : L) {
    const Rational d = q - pulled[m];
    if (d != 0)
      diff[m] = d;
  }
  for (int i = 0; i < n; ++i)
    if (psi_L[static_cast<size_t>(i)] != psi_P[static_cast<size_t>(i)])
      diff[0] = 1; // psi terms failed to cancel; flags the oracle itself
  return diff;
}

} // namespace oracle
