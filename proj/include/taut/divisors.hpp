#ifndef TAUT_DIVISORS_HPP
#define TAUT_DIVISORS_HPP

#include "taut/picard.hpp"

#include <utility>
#include <vector>

namespace taut {

// Named divisor classes. The weight argument `w` of A, B and C is a formal
// coefficient vector: it is evaluated on whatever space is passed, and the
// pair sums range over the coincidence divisors that exist there (all
// pairs on a GIT quotient, none on Mbar_{0,n}).

/// Pairs {i,j} with a coincidence divisor Delta_ij on the space.
std::vector<std::pair<int, int>> coincidence_pairs(const SpaceTag& space);
/// Delta_ij on a Hassett space or GIT quotient.
DivisorClass coincidence_class(const SpaceTag& space, int i, int j);

/// kappa + psi + sum_{i<j} (w_i + w_j) Delta_ij
DivisorClass class_A(const SpaceTag& space, const WeightVector& w);
/// kappa + sum (2w_i - w_i^2) psi_i + sum_{i<j} 2 w_i w_j Delta_ij
DivisorClass class_B(const SpaceTag& space, const WeightVector& w);
/// (1 - w_i) psi_i + sum_{j != i} w_j Delta_ij
DivisorClass class_C(const SpaceTag& space, const WeightVector& w, int i);
/// sum_i C_i = sum (1 - w_i) psi_i + sum_{i<j} (w_i + w_j) Delta_ij
DivisorClass class_C_total(const SpaceTag& space, const WeightVector& w);
/// psi - 2 Delta_nodal (13 lambda - 2 Delta_nodal + psi with lambda = 0).
DivisorClass class_K(const SpaceTag& space);
/// A + lambda; lambda vanishes in genus 0.
DivisorClass class_A_plus_lambda(const SpaceTag& space, const WeightVector& w);

/// K + sum_{light pairs} (a_i + a_j) Delta_{ij} + Delta_rest on Mbar_{0,n},
/// Delta_rest = Delta - sum_{light pairs} Delta_{ij}.
DivisorClass class_logcanonical_upstairs(const WeightVector& a);

/// The GIT polarization A(x) = -(n-2)/2 sum x_i psi_i on the quotient,
/// pulled back to Mbar_{0,n}. Requires sum x = 2 and typical x.
DivisorClass git_polarization_pullback(const std::vector<Rational>& x);

} // namespace taut

#endif // TAUT_DIVISORS_HPP
