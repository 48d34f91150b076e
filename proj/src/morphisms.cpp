#include "taut/morphisms.hpp"
#include "taut/divisors.hpp"
#include "taut/error.hpp"
#include "taut/fcurves.hpp"

namespace taut {

// ---------------------------------------------------------------------------
// ReductionMap

ReductionMap::ReductionMap(const WeightVector& target)
    : ReductionMap(SpaceTag::hassett(target), Lightness::AtMostOne) {}

ReductionMap ReductionMap::to_git(const SpaceTag& git) {
  if (!git.is_git())
    throw UsageError("to_git expects a GIT quotient, got " + git.to_string());
  return ReductionMap(git, Lightness::BelowOne);
}

ReductionMap::ReductionMap(SpaceTag target, Lightness rule)
    : n_(target.n()), source_(SpaceTag::moduli_bar(target.n())), target_(std::move(target)),
      rule_(rule), subsets_(boundary_subsets(n_)) {
  const WeightVector a = target_.weights();
  index_by_mask_.assign(size_t{1} << n_, -1);
  for (size_t k = 0; k < subsets_.size(); ++k) {
    const auto& s = subsets_[k];
    index_by_mask_[s.mask()] = static_cast<int>(k);
    light_.push_back(taut::light_side(s, a, rule_));
    SubsetClass c = SubsetClass::Nodal;
    if (light_.back())
      c = popcount(*light_.back()) == 2 ? SubsetClass::CoincidencePair : SubsetClass::Contracted;
    class_.push_back(c);
    switch (c) {
    case SubsetClass::CoincidencePair:
      light_pairs_.push_back(s);
      break;
    case SubsetClass::Contracted:
      contracted_.push_back(s);
      break;
    case SubsetClass::Nodal:
      nodal_.push_back(s);
      break;
    }
  }
}

size_t ReductionMap::slot(const MarkedSubset& s) const {
  if (s.n() != n_)
    throw UsageError("subset and reduction map disagree on n");
  return static_cast<size_t>(index_by_mask_[s.mask()]);
}

SubsetClass ReductionMap::classify(const MarkedSubset& s) const { return class_[slot(s)]; }

std::optional<Mask> ReductionMap::light_side(const MarkedSubset& s) const {
  return light_[slot(s)];
}

DivisorClass ReductionMap::pullback(const Generator& g) const {
  DivisorClass out(source_);
  switch (g.kind) {
  case Generator::Kind::Psi: {
    out.add(g, 1);
    for (size_t k = 0; k < subsets_.size(); ++k)
      if (light_[k] && (*light_[k] & g.data))
        out.add(Generator::boundary(subsets_[k]), -1);
    break;
  }
  case Generator::Kind::Coincidence:
    for (size_t k = 0; k < subsets_.size(); ++k)
      if (light_[k] && (*light_[k] & g.data) == g.data)
        out.add(Generator::boundary(subsets_[k]), 1);
    break;
  case Generator::Kind::Nodal:
    out.add(Generator::boundary(MarkedSubset(n_, g.data)), 1);
    break;
  case Generator::Kind::Boundary:
    throw UsageError("bd(...) is not a generator of " + target_.to_string());
  }
  return out;
}

DivisorClass ReductionMap::pullback(const DivisorClass& c) const {
  if (!(c.space() == target_))
    throw UsageError("pullback: class lives on " + c.space().to_string() + ", map targets " +
                     target_.to_string());
  DivisorClass out(source_);
  for (const auto& [g, q] : c.coeffs())
    out += q * pullback(g);
  return out;
}

DivisorClass ReductionMap::pushforward(const DivisorClass& c) const {
  if (!target_.is_hassett())
    throw UsageError("pushforward is implemented for Hassett targets only");
  if (!(c.space() == source_))
    throw UsageError("pushforward: class lives on " + c.space().to_string() + ", map source is " +
                     source_.to_string());
  DivisorClass out(target_);
  for (const auto& [g, q] : c.coeffs()) {
    if (g.kind == Generator::Kind::Psi) {
      out.add(g, q);
      for (const auto& s : light_pairs_) {
        const Mask pair = *light_[slot(s)];
        if (pair & g.data) {
          auto [i, j] = Generator{Generator::Kind::Coincidence, pair}.pair_indices();
          out.add(Generator::coincidence(i, j), q);
        }
      }
      continue;
    }
    const MarkedSubset s(n_, g.data);
    switch (classify(s)) {
    case SubsetClass::CoincidencePair: {
      auto [i, j] = Generator{Generator::Kind::Coincidence, *light_side(s)}.pair_indices();
      out.add(Generator::coincidence(i, j), q);
      break;
    }
    case SubsetClass::Contracted:
      break;
    case SubsetClass::Nodal:
      out.add(Generator::nodal(s), q);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replacement

namespace {

WeightVector split_weights(const WeightVector& a, int index, const std::vector<Rational>& split) {
  if (index < 1 || index > a.n())
    throw UsageError("replaced marking " + std::to_string(index) + " out of range");
  if (split.empty())
    throw UsageError("replacement split is empty");
  Rational total = 0;
  for (const auto& b : split) {
    if (b <= 0 || b > 1)
      throw UsageError("split weight " + b.get_str() + " is outside (0,1]");
    total += b;
  }
  if (total != a[index])
    throw UsageError("split " + join(split, "+") + " does not sum to a_" + std::to_string(index) +
                     " = " + a[index].get_str());
  std::vector<Rational> out;
  for (int m = 1; m <= a.n(); ++m) {
    if (m == index)
      out.insert(out.end(), split.begin(), split.end());
    else
      out.push_back(a[m]);
  }
  return WeightVector(std::move(out));
}

} // namespace

ReplacementData::ReplacementData(WeightVector source, int index, std::vector<Rational> split)
    : source_(std::move(source)), index_(index), split_(std::move(split)),
      target_(split_weights(source_, index_, split_)) {
  if (!source_.admissible())
    throw UsageError("replacement source weights " + source_.to_string() + " are not admissible");
}

bool ReplacementData::is_tau(int target_marking) const {
  return target_marking >= index_ && target_marking < index_ + k();
}

int ReplacementData::source_of(int target_marking) const {
  if (target_marking < index_)
    return target_marking;
  if (is_tau(target_marking))
    return index_;
  return target_marking - k() + 1;
}

DivisorClass replacement_pullback(const ReplacementData& r, const DivisorClass& c) {
  const SpaceTag b_space = SpaceTag::hassett(r.target());
  if (!(c.space() == b_space))
    throw UsageError("replacement_pullback: class lives on " + c.space().to_string() +
                     ", expected " + b_space.to_string());
  const SpaceTag a_space = SpaceTag::hassett(r.source());
  const int n_b = r.target().n();
  const int n_a = r.source().n();
  Mask tau = 0;
  for (int m = r.index(); m < r.index() + r.k(); ++m)
    tau |= bit(m);

  DivisorClass out(a_space);
  for (const auto& [g, q] : c.coeffs()) {
    switch (g.kind) {
    case Generator::Kind::Psi:
      out.add(Generator::psi(r.source_of(g.index())), q);
      break;
    case Generator::Kind::Coincidence: {
      auto [p, s] = g.pair_indices();
      if (r.is_tau(p) && r.is_tau(s)) {
        out.add(Generator::psi(r.index()), -q);
        break;
      }
      const Generator image = Generator::coincidence(std::min(r.source_of(p), r.source_of(s)),
                                                     std::max(r.source_of(p), r.source_of(s)));
      // A tau marking meeting j downstairs needs a_index + a_j <= 1 on A.
      if (is_legal(a_space, image))
        out.add(image, q);
      break;
    }
    case Generator::Kind::Nodal: {
      Mask side = g.data;
      if ((side & tau) != 0 && (side & tau) != tau)
        break; // the tau markings sit on one component of every curve in the image
      if ((side & tau) == 0)
        side = full_mask(n_b) & ~side;
      Mask image = 0;
      for (int m : members_of(side))
        image |= bit(r.source_of(m));
      const MarkedSubset s(n_a, image);
      if (classify_subset(s, r.source()) != SubsetClass::Nodal)
        throw IdentityViolation("replacement nodal transport",
                                g.key() + " maps to non-nodal " + s.to_string());
      out.add(Generator::nodal(s), q);
      break;
    }
    case Generator::Kind::Boundary:
      throw UsageError("bd(...) is not a generator of a Hassett space");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discrepancy

Rational discrepancy_formula(const WeightVector& a, Mask light) {
  return (popcount(light) - 1) * (1 - a.weight_of(light));
}

std::vector<DiscrepancyTerm> discrepancy(const ReductionMap& f) {
  if (!f.target().is_hassett())
    throw UsageError("discrepancy needs a Hassett target");
  const WeightVector a = f.target().weights();
  const DivisorClass upstairs = class_logcanonical_upstairs(a);
  const DivisorClass pulled = f.pullback(class_A_plus_lambda(f.target(), a));
  const DivisorClass diff = upstairs - pulled;

  std::map<MarkedSubset, Rational> found;
  for (const auto& [g, q] : diff.coeffs()) {
    if (g.kind != Generator::Kind::Boundary)
      throw IdentityViolation("discrepancy support",
                              g.key() + " has coefficient " + q.get_str());
    const MarkedSubset s(f.n(), g.data);
    if (f.classify(s) != SubsetClass::Contracted)
      throw IdentityViolation("discrepancy support", s.to_string() + " is " +
                                                         to_string(f.classify(s)) +
                                                         " but has coefficient " + q.get_str());
    found.emplace(s, q);
  }
  std::vector<DiscrepancyTerm> out;
  for (const auto& s : f.contracted()) {
    const Mask light = *f.light_side(s);
    const Rational expected = discrepancy_formula(a, light);
    const auto it = found.find(s);
    const Rational got = it == found.end() ? Rational(0) : it->second;
    if (got != expected)
      throw IdentityViolation("discrepancy coefficient",
                              format_members(light) + ": got " + got.get_str() + ", expected " +
                                  expected.get_str());
    if (got < 0)
      throw IdentityViolation("discrepancy effectivity",
                              format_members(light) + " has coefficient " + got.get_str());
    if (got != 0)
      out.push_back({s, light, got});
  }
  // The representative above is symbolic; confirm the identity in Pic too.
  DivisorClass rhs = pulled;
  for (const auto& t : out)
    rhs.add(Generator::boundary(t.subset), t.coefficient);
  if (!eq_classes(upstairs, rhs))
    throw IdentityViolation("discrepancy class identity",
                            "L and f^*(A+lambda) + E differ on some F-curve");
  return out;
}

} // namespace taut
