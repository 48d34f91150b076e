#include "taut/markings.hpp"
#include "taut/error.hpp"

#include <algorithm>
#include <cctype>

namespace taut {

std::vector<int> members_of(Mask m) {
  std::vector<int> out;
  for (int i = 1; m; ++i, m >>= 1)
    if (m & 1)
      out.push_back(i);
  return out;
}

std::string format_members(Mask m) {
  std::string out = "{";
  bool first = true;
  for (int i : members_of(m)) {
    if (!first)
      out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

void require_marking_count(int n, int minimum) {
  if (n < minimum)
    throw UsageError("need at least " + std::to_string(minimum) + " markings, got " +
                     std::to_string(n));
  if (n > kMaxMarkings)
    throw UsageError("at most " + std::to_string(kMaxMarkings) + " markings supported, got " +
                     std::to_string(n));
}

// ---------------------------------------------------------------------------

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty())
    throw UsageError("weight vector is empty");
  if (n() > kMaxMarkings)
    throw UsageError("too many weights");
  for (size_t i = 0; i < weights_.size(); ++i) {
    weights_[i].canonicalize();
    if (weights_[i] <= 0 || weights_[i] > 1)
      throw UsageError("weight a_" + std::to_string(i + 1) + " = " + weights_[i].get_str() +
                       " is outside (0,1]");
  }
}

WeightVector WeightVector::parse(std::string_view text) {
  return WeightVector(parse_rational_list(text));
}

WeightVector WeightVector::uniform(int n, const Rational& value) {
  return WeightVector(std::vector<Rational>(static_cast<size_t>(n), value));
}

Rational WeightVector::sum() const {
  Rational s = 0;
  for (const auto& w : weights_)
    s += w;
  return s;
}

Rational WeightVector::weight_of(Mask subset) const {
  Rational s = 0;
  for (int i : members_of(subset))
    s += (*this)[i];
  return s;
}

bool WeightVector::admissible(bool strict) const {
  return strict ? sum() > 4 : sum() > 2;
}

// ---------------------------------------------------------------------------

std::strong_ordering compare_masks(Mask a, Mask b) {
  if (auto c = popcount(a) <=> popcount(b); c != 0)
    return c;
  // Same size: the member list that starts with the smaller index at the
  // first difference wins, i.e. the lowest differing bit belongs to it.
  if (a == b)
    return std::strong_ordering::equal;
  const Mask diff = a ^ b;
  const Mask low = diff & (~diff + 1);
  return (a & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Mask MarkedSubset::canonical_mask(int n, Mask mask) {
  const Mask comp = full_mask(n) & ~mask;
  const int s = popcount(mask);
  const int c = n - s;
  if (s < c)
    return mask;
  if (s > c)
    return comp;
  return (mask & 1u) ? mask : comp;
}

MarkedSubset::MarkedSubset(int n, Mask mask) : n_(n) {
  require_marking_count(n);
  if (mask & ~full_mask(n))
    throw UsageError("subset " + format_members(mask) + " has indices above n = " +
                     std::to_string(n));
  const int s = popcount(mask);
  if (s < 2 || s > n - 2)
    throw UsageError("boundary subset " + format_members(mask) +
                     " must have between 2 and n-2 elements (n = " + std::to_string(n) + ")");
  mask_ = canonical_mask(n, mask);
}

MarkedSubset MarkedSubset::from_members(int n, const std::vector<int>& members) {
  Mask m = 0;
  for (int i : members) {
    if (i < 1 || i > n)
      throw UsageError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    if (m & bit(i))
      throw UsageError("repeated index " + std::to_string(i) + " in subset");
    m |= bit(i);
  }
  return MarkedSubset(n, m);
}

MarkedSubset MarkedSubset::parse(int n, std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw UsageError("subset must look like {i,j,...}: '" + std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<int> members;
  for (const auto& q : parse_rational_list(s)) {
    if (q.get_den() != 1)
      throw UsageError("subset entries must be integers");
    members.push_back(static_cast<int>(q.get_num().get_si()));
  }
  return from_members(n, members);
}

std::strong_ordering MarkedSubset::operator<=>(const MarkedSubset& o) const {
  if (auto c = n_ <=> o.n_; c != 0)
    return c;
  return compare_masks(mask_, o.mask_);
}

// ---------------------------------------------------------------------------

std::string to_string(SubsetClass c) {
  switch (c) {
  case SubsetClass::CoincidencePair:
    return "CoincidencePair";
  case SubsetClass::Contracted:
    return "Contracted";
  case SubsetClass::Nodal:
    return "Nodal";
  }
  return "?";
}

namespace {

bool is_light(const Rational& w, Lightness rule) {
  return rule == Lightness::AtMostOne ? w <= 1 : w < 1;
}

} // namespace

std::optional<Mask> light_side(const MarkedSubset& s, const WeightVector& a, Lightness rule) {
  if (a.n() != s.n())
    throw UsageError("subset and weight vector disagree on n");
  if (is_light(a.weight_of(s.mask()), rule))
    return s.mask();
  if (is_light(a.weight_of(s.complement()), rule))
    return s.complement();
  return std::nullopt;
}

SubsetClass classify_subset(const MarkedSubset& s, const WeightVector& a, Lightness rule) {
  if (rule == Lightness::AtMostOne && !a.admissible())
    throw UsageError("weights " + a.to_string() + " are not admissible (sum must exceed 2)");
  const auto light = light_side(s, a, rule);
  if (!light)
    return SubsetClass::Nodal;
  return popcount(*light) == 2 ? SubsetClass::CoincidencePair : SubsetClass::Contracted;
}

std::vector<MarkedSubset> boundary_subsets(int n) {
  require_marking_count(n);
  std::vector<MarkedSubset> out;
  const Mask full = full_mask(n);
  for (Mask m = 1; m < full; ++m) {
    const int s = popcount(m);
    if (s < 2 || s > n - 2)
      continue;
    if (MarkedSubset::canonical_mask(n, m) == m)
      out.emplace_back(n, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace taut
