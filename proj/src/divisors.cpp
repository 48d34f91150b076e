#include "taut/divisors.hpp"
#include "taut/error.hpp"
#include "taut/morphisms.hpp"

namespace taut {

namespace {

void require_weight_count(const SpaceTag& space, const WeightVector& w) {
  if (w.n() != space.n())
    throw UsageError("weight vector has " + std::to_string(w.n()) + " entries but " +
                     space.to_string() + " has " + std::to_string(space.n()) + " markings");
}

} // namespace

std::vector<std::pair<int, int>> coincidence_pairs(const SpaceTag& space) {
  std::vector<std::pair<int, int>> out;
  const int n = space.n();
  if (space.is_moduli_bar())
    return out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (space.is_git() || is_legal(space, Generator::coincidence(i, j)))
        out.emplace_back(i, j);
  return out;
}

DivisorClass coincidence_class(const SpaceTag& space, int i, int j) {
  if (space.is_git())
    return git_coincidence_class(space, i, j);
  DivisorClass c(space);
  c.add(Generator::coincidence(std::min(i, j), std::max(i, j)), 1);
  return c;
}

DivisorClass class_A(const SpaceTag& space, const WeightVector& w) {
  require_weight_count(space, w);
  DivisorClass c = expand_aggregate(space, Aggregate::Kappa) +
                   expand_aggregate(space, Aggregate::PsiTotal);
  for (auto [i, j] : coincidence_pairs(space))
    c += (w[i] + w[j]) * coincidence_class(space, i, j);
  return c;
}

DivisorClass class_B(const SpaceTag& space, const WeightVector& w) {
  require_weight_count(space, w);
  DivisorClass c = expand_aggregate(space, Aggregate::Kappa);
  for (int i = 1; i <= space.n(); ++i)
    c.add(Generator::psi(i), 2 * w[i] - w[i] * w[i]);
  for (auto [i, j] : coincidence_pairs(space))
    c += (2 * w[i] * w[j]) * coincidence_class(space, i, j);
  return c;
}

DivisorClass class_C(const SpaceTag& space, const WeightVector& w, int i) {
  require_weight_count(space, w);
  if (i < 1 || i > space.n())
    throw UsageError("C_i index " + std::to_string(i) + " out of range");
  DivisorClass c(space);
  c.add(Generator::psi(i), 1 - w[i]);
  for (auto [p, q] : coincidence_pairs(space)) {
    if (p == i)
      c += w[q] * coincidence_class(space, p, q);
    else if (q == i)
      c += w[p] * coincidence_class(space, p, q);
  }
  return c;
}

DivisorClass class_C_total(const SpaceTag& space, const WeightVector& w) {
  require_weight_count(space, w);
  DivisorClass c(space);
  for (int i = 1; i <= space.n(); ++i)
    c.add(Generator::psi(i), 1 - w[i]);
  for (auto [i, j] : coincidence_pairs(space))
    c += (w[i] + w[j]) * coincidence_class(space, i, j);
  return c;
}

DivisorClass class_K(const SpaceTag& space) {
  return expand_aggregate(space, Aggregate::PsiTotal) -
         Rational(2) * expand_aggregate(space, Aggregate::DeltaNodal);
}

DivisorClass class_A_plus_lambda(const SpaceTag& space, const WeightVector& w) {
  return class_A(space, w) + expand_aggregate(space, Aggregate::Lambda);
}

DivisorClass class_logcanonical_upstairs(const WeightVector& a) {
  const SpaceTag space = SpaceTag::moduli_bar(a.n());
  DivisorClass c = class_K(space) + expand_aggregate(space, Aggregate::DeltaTotal);
  for (int i = 1; i <= a.n(); ++i)
    for (int j = i + 1; j <= a.n(); ++j)
      if (a[i] + a[j] <= 1)
        c.add(Generator::boundary(MarkedSubset::from_members(a.n(), {i, j})), a[i] + a[j] - 1);
  return c;
}

DivisorClass git_polarization_pullback(const std::vector<Rational>& x) {
  const SpaceTag git = SpaceTag::git_quotient(x);
  return ReductionMap::to_git(git).pullback(class_A(git, WeightVector(x)));
}

} // namespace taut
