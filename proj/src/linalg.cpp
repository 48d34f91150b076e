#include "taut/linalg.hpp"

#include <utility>

namespace taut {

int exact_rank(IntegerMatrix m) {
  const size_t rows = m.size();
  if (rows == 0)
    return 0;
  const size_t cols = m[0].size();
  Integer prev = 1;
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0)
      ++pivot;
    if (pivot == rows)
      continue;
    std::swap(m[pivot], m[rank]);
    for (size_t r = rank + 1; r < rows; ++r) {
      for (size_t k = c + 1; k < cols; ++k) {
        m[r][k] = m[rank][c] * m[r][k] - m[r][c] * m[rank][k];
        // Exact by Sylvester's identity.
        mpz_divexact(m[r][k].get_mpz_t(), m[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

std::vector<size_t> independent_rows(const RationalMatrix& rows) {
  // Reduced basis rows with their pivot columns.
  std::vector<std::vector<Rational>> basis;
  std::vector<size_t> pivots;
  std::vector<size_t> chosen;
  for (size_t r = 0; r < rows.size(); ++r) {
    std::vector<Rational> v = rows[r];
    for (size_t b = 0; b < basis.size(); ++b) {
      const Rational f = v[pivots[b]];
      if (f == 0)
        continue;
      for (size_t k = 0; k < v.size(); ++k)
        if (basis[b][k] != 0)
          v[k] -= f * basis[b][k];
    }
    size_t p = 0;
    while (p < v.size() && v[p] == 0)
      ++p;
    if (p == v.size())
      continue;
    const Rational inv = 1 / v[p];
    for (auto& q : v)
      q *= inv;
    // Keep the basis fully reduced so later rows see zero pivot entries.
    for (auto& row : basis) {
      const Rational f = row[p];
      if (f == 0)
        continue;
      for (size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0)
          row[k] -= f * v[k];
    }
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(r);
  }
  return chosen;
}

} // namespace taut
