#ifndef TAUT_LINALG_HPP
#define TAUT_LINALG_HPP

#include "taut/rational.hpp"

#include <vector>

namespace taut {

using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-free (Bareiss) elimination. Entries stay integral.
int exact_rank(IntegerMatrix m);

/// Indices of a maximal linearly independent subset of the rows, chosen
/// greedily in order. The selected rows span the row space.
std::vector<size_t> independent_rows(const RationalMatrix& rows);

} // namespace taut

#endif // TAUT_LINALG_HPP
