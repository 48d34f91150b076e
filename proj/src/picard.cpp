#include "taut/picard.hpp"
#include "taut/error.hpp"
#include "taut/fcurves.hpp"
#include "taut/morphisms.hpp"

#include <algorithm>

namespace taut {

// ---------------------------------------------------------------------------
// SpaceTag

SpaceTag SpaceTag::moduli_bar(int n) {
  require_marking_count(n);
  return SpaceTag(Kind::ModuliBar, n, {});
}

SpaceTag SpaceTag::hassett(const WeightVector& a) {
  require_marking_count(a.n());
  if (!a.admissible())
    throw UsageError("weights " + a.to_string() + " are not admissible (sum must exceed 2)");
  return SpaceTag(Kind::Hassett, a.n(), a.values());
}

std::optional<Mask> atypical_witness(const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  for (Mask m = 1; m < full_mask(n); ++m) {
    Rational s = 0;
    for (int i : members_of(m))
      s += x[static_cast<size_t>(i - 1)];
    if (s == 1)
      return MarkedSubset::canonical_mask(n, m) == m ? m : full_mask(n) & ~m;
  }
  return std::nullopt;
}

SpaceTag SpaceTag::git_quotient(std::vector<Rational> x, bool allow_atypical) {
  const int n = static_cast<int>(x.size());
  require_marking_count(n);
  Rational s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    x[i].canonicalize();
    if (x[i] <= 0 || x[i] > 1)
      throw UsageError("GIT weight x_" + std::to_string(i + 1) + " = " + x[i].get_str() +
                       " is outside (0,1]");
    s += x[i];
  }
  if (s != 2)
    throw UsageError("GIT weights must sum to 2, got " + s.get_str());
  if (!allow_atypical) {
    if (auto w = atypical_witness(x))
      throw UsageError("GIT weights " + join(x) + " are atypical: subset " + format_members(*w) +
                       " has weight exactly 1");
  }
  return SpaceTag(Kind::GitQuotient, n, std::move(x));
}

WeightVector SpaceTag::weights() const {
  if (kind_ == Kind::ModuliBar)
    return WeightVector::uniform(n_, 1);
  return WeightVector(weights_);
}

std::string SpaceTag::to_string() const {
  switch (kind_) {
  case Kind::ModuliBar:
    return "Mbar(0," + std::to_string(n_) + ")";
  case Kind::Hassett:
    return "Hassett(" + join(weights_) + ")";
  case Kind::GitQuotient:
    return "Git(" + join(weights_) + ")";
  }
  return "?";
}

SpaceTag SpaceTag::parse(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw UsageError("malformed space '" + text + "'");
  const std::string head = text.substr(0, open);
  const std::string body = text.substr(open + 1, text.size() - open - 2);
  if (head == "Mbar") {
    if (body.rfind("0,", 0) != 0)
      throw UsageError("only genus 0 is supported: '" + text + "'");
    return moduli_bar(std::stoi(body.substr(2)));
  }
  if (head == "Hassett")
    return hassett(WeightVector::parse(body));
  if (head == "Git")
    return git_quotient(parse_rational_list(body));
  throw UsageError("unknown space '" + text + "'");
}

// ---------------------------------------------------------------------------
// Generators

std::pair<int, int> Generator::pair_indices() const {
  const auto m = members_of(data);
  return {m.at(0), m.at(1)};
}

std::string Generator::key() const {
  switch (kind) {
  case Kind::Psi:
    return "psi:" + std::to_string(index());
  case Kind::Boundary:
    return "bd:" + format_members(data);
  case Kind::Coincidence: {
    auto [i, j] = pair_indices();
    return "coinc:" + std::to_string(i) + "," + std::to_string(j);
  }
  case Kind::Nodal:
    return "nodal:" + format_members(data);
  }
  return "?";
}

std::string Generator::expression() const {
  switch (kind) {
  case Kind::Psi:
    return "psi(" + std::to_string(index()) + ")";
  case Kind::Boundary:
    return "bd(" + format_members(data) + ")";
  case Kind::Coincidence: {
    auto [i, j] = pair_indices();
    return "coinc(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  case Kind::Nodal:
    return "nodal(" + format_members(data) + ")";
  }
  return "?";
}

bool is_legal(const SpaceTag& space, const Generator& g) {
  const int n = space.n();
  if (g.data == 0 || (g.data & ~full_mask(n)))
    return false;
  switch (g.kind) {
  case Generator::Kind::Psi:
    return popcount(g.data) == 1;
  case Generator::Kind::Boundary:
    return space.is_moduli_bar() && popcount(g.data) >= 2 && popcount(g.data) <= n - 2 &&
           MarkedSubset::canonical_mask(n, g.data) == g.data;
  case Generator::Kind::Coincidence: {
    if (!space.is_hassett() || popcount(g.data) != 2)
      return false;
    auto [i, j] = g.pair_indices();
    return space.raw_weights()[static_cast<size_t>(i - 1)] +
               space.raw_weights()[static_cast<size_t>(j - 1)] <= 1;
  }
  case Generator::Kind::Nodal:
    if (!space.is_hassett() || popcount(g.data) < 2 || popcount(g.data) > n - 2 ||
        MarkedSubset::canonical_mask(n, g.data) != g.data)
      return false;
    return classify_subset(MarkedSubset(n, g.data), space.weights()) == SubsetClass::Nodal;
  }
  return false;
}

// ---------------------------------------------------------------------------
// DivisorClass

Rational DivisorClass::coeff(const Generator& g) const {
  auto it = coeffs_.find(g);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

DivisorClass& DivisorClass::add(const Generator& g, const Rational& c) {
  if (!is_legal(space_, g))
    throw UsageError(g.key() + " is not a generator of " + space_.to_string());
  if (c == 0)
    return *this;
  auto [it, inserted] = coeffs_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      coeffs_.erase(it);
  }
  return *this;
}

void DivisorClass::require_same_space(const DivisorClass& o) const {
  if (!(space_ == o.space_))
    throw UsageError("classes live on different spaces: " + space_.to_string() + " vs " +
                     o.space_.to_string());
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  require_same_space(o);
  for (const auto& [g, q] : o.coeffs_)
    add(g, q);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  require_same_space(o);
  for (const auto& [g, q] : o.coeffs_)
    add(g, -q);
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [g, q] : coeffs_)
    q *= s;
  return *this;
}

std::string DivisorClass::to_string() const {
  if (coeffs_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, q] : coeffs_) {
    Rational mag = abs(q);
    if (first)
      out += q < 0 ? "-" : "";
    else
      out += q < 0 ? " - " : " + ";
    if (mag != 1)
      out += mag.get_str() + "*";
    out += g.expression();
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregates and relations

std::string to_string(Aggregate a) {
  switch (a) {
  case Aggregate::PsiTotal:
    return "Psi";
  case Aggregate::DeltaNodal:
    return "Dnodal";
  case Aggregate::DeltaS:
    return "Ds";
  case Aggregate::DeltaR:
    return "Dr";
  case Aggregate::DeltaTotal:
    return "Delta";
  case Aggregate::Kappa:
    return "kappa";
  case Aggregate::Lambda:
    return "lambda";
  }
  return "?";
}

namespace {

void warn(std::vector<std::string>* warnings, const std::string& text) {
  if (warnings)
    warnings->push_back(text);
}

DivisorClass delta_nodal(const SpaceTag& space, std::vector<std::string>* warnings) {
  DivisorClass c(space);
  switch (space.kind()) {
  case SpaceTag::Kind::ModuliBar:
    for (const auto& s : boundary_subsets(space.n()))
      c.add(Generator::boundary(s), 1);
    break;
  case SpaceTag::Kind::Hassett: {
    const WeightVector a = space.weights();
    for (const auto& s : boundary_subsets(space.n()))
      if (classify_subset(s, a) == SubsetClass::Nodal)
        c.add(Generator::nodal(s), 1);
    if (c.empty())
      warn(warnings, "Dnodal has no components on " + space.to_string() + "; contributes zero");
    break;
  }
  case SpaceTag::Kind::GitQuotient:
    warn(warnings, "Dnodal vanishes on " + space.to_string());
    break;
  }
  return c;
}

DivisorClass delta_s(const SpaceTag& space, std::vector<std::string>* warnings) {
  DivisorClass c(space);
  const int n = space.n();
  switch (space.kind()) {
  case SpaceTag::Kind::ModuliBar:
    warn(warnings, "Ds has no components on " + space.to_string() + "; contributes zero");
    break;
  case SpaceTag::Kind::Hassett:
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (is_legal(space, Generator::coincidence(i, j)))
          c.add(Generator::coincidence(i, j), 1);
    if (c.empty())
      warn(warnings, "Ds has no components on " + space.to_string() + "; contributes zero");
    break;
  case SpaceTag::Kind::GitQuotient:
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        c += git_coincidence_class(space, i, j);
    break;
  }
  return c;
}

} // namespace

DivisorClass expand_aggregate(const SpaceTag& space, Aggregate name, int r,
                              std::vector<std::string>* warnings) {
  const int n = space.n();
  switch (name) {
  case Aggregate::PsiTotal: {
    DivisorClass c(space);
    for (int i = 1; i <= n; ++i)
      c.add(Generator::psi(i), 1);
    return c;
  }
  case Aggregate::DeltaNodal:
    return delta_nodal(space, warnings);
  case Aggregate::DeltaS:
    return delta_s(space, warnings);
  case Aggregate::DeltaR: {
    if (!space.is_moduli_bar())
      throw UsageError("Dr is only defined on Mbar(0,n), not " + space.to_string());
    if (r < 2 || r > n / 2)
      throw UsageError("Dr needs 2 <= r <= n/2, got r = " + std::to_string(r));
    DivisorClass c(space);
    for (const auto& s : boundary_subsets(n))
      if (s.size() == r)
        c.add(Generator::boundary(s), 1);
    return c;
  }
  case Aggregate::DeltaTotal:
    return delta_s(space, warnings) + delta_nodal(space, warnings);
  case Aggregate::Kappa:
    // Mumford: kappa = 12 lambda - Delta_nodal, lambda = 0 in genus 0.
    return -delta_nodal(space, nullptr);
  case Aggregate::Lambda:
    return DivisorClass(space);
  }
  throw UsageError("unknown aggregate");
}

DivisorClass git_coincidence_class(const SpaceTag& space, int i, int j) {
  if (!space.is_git())
    throw UsageError("git_coincidence_class needs a GIT quotient, got " + space.to_string());
  const int n = space.n();
  if (i < 1 || i > n || j < 1 || j > n)
    throw UsageError("index out of range 1.." + std::to_string(n));
  if (i == j)
    throw UsageError("Delta_ij needs distinct indices");
  DivisorClass c(space);
  c.add(Generator::psi(i), Rational(-1, 2));
  c.add(Generator::psi(j), Rational(-1, 2));
  return c;
}

DivisorClass keel_relation(int n, int i, int j, int k, int l) {
  require_marking_count(n);
  for (int x : {i, j, k, l})
    if (x < 1 || x > n)
      throw UsageError("index " + std::to_string(x) + " out of range 1.." + std::to_string(n));
  const Mask quad = bit(i) | bit(j) | bit(k) | bit(l);
  if (popcount(quad) != 4)
    throw UsageError("keel_relation needs four distinct indices");
  const SpaceTag space = SpaceTag::moduli_bar(n);
  DivisorClass c(space);
  auto separates = [](Mask s, Mask together, Mask apart) {
    return (s & together) == together && (s & apart) == 0;
  };
  const Mask full = full_mask(n);
  for (const auto& s : boundary_subsets(n)) {
    const Mask m = s.mask(), mc = full & ~m;
    const Mask ij = bit(i) | bit(j), kl = bit(k) | bit(l);
    const Mask ik = bit(i) | bit(k), jl = bit(j) | bit(l);
    if (separates(m, ij, kl) || separates(mc, ij, kl))
      c.add(Generator::boundary(s), 1);
    if (separates(m, ik, jl) || separates(mc, ik, jl))
      c.add(Generator::boundary(s), -1);
  }
  return c;
}

Rational positivity_coefficient(int n, int r) {
  return frac(r * (n - r) - n + 1, n - 1);
}

DivisorClass positivity_relation(int n) {
  const SpaceTag space = SpaceTag::moduli_bar(n);
  DivisorClass c = expand_aggregate(space, Aggregate::Kappa) +
                   expand_aggregate(space, Aggregate::PsiTotal);
  for (int r = 2; r <= n / 2; ++r)
    c -= positivity_coefficient(n, r) * expand_aggregate(space, Aggregate::DeltaR, r);
  return c;
}

bool eq_classes(const DivisorClass& a, const DivisorClass& b) {
  if (!(a.space() == b.space()))
    throw UsageError("eq_classes: mismatched spaces " + a.space().to_string() + " and " +
                     b.space().to_string());
  const DivisorClass diff = a - b;
  switch (a.space().kind()) {
  case SpaceTag::Kind::ModuliBar:
    return is_zero_vector(fingerprint(diff));
  case SpaceTag::Kind::Hassett:
    return is_zero_vector(fingerprint(ReductionMap(a.space().weights()).pullback(diff)));
  case SpaceTag::Kind::GitQuotient:
    return diff.empty();
  }
  return false;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::ordered_json to_json(const DivisorClass& c) {
  nlohmann::ordered_json j;
  j["space"] = c.space().to_string();
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& [g, q] : c.coeffs())
    coeffs.push_back({{"gen", g.key()}, {"val", q.get_str()}});
  j["coeffs"] = std::move(coeffs);
  return j;
}

Generator parse_generator_key(int n, const std::string& key) {
  const auto colon = key.find(':');
  if (colon == std::string::npos)
    throw UsageError("malformed generator key '" + key + "'");
  const std::string head = key.substr(0, colon), body = key.substr(colon + 1);
  if (head == "psi") {
    const int i = std::stoi(body);
    if (i < 1 || i > n)
      throw UsageError("psi index out of range in '" + key + "'");
    return Generator::psi(i);
  }
  if (head == "bd")
    return Generator::boundary(MarkedSubset::parse(n, body));
  if (head == "nodal")
    return Generator::nodal(MarkedSubset::parse(n, body));
  if (head == "coinc") {
    const auto v = parse_rational_list(body);
    if (v.size() != 2)
      throw UsageError("coinc key needs two indices: '" + key + "'");
    const int i = static_cast<int>(v[0].get_num().get_si());
    const int j = static_cast<int>(v[1].get_num().get_si());
    if (i < 1 || i > n || j < 1 || j > n || i == j)
      throw UsageError("bad coinc indices in '" + key + "'");
    return Generator::coincidence(i, j);
  }
  throw UsageError("unknown generator kind in '" + key + "'");
}

DivisorClass class_from_json(const nlohmann::ordered_json& j) {
  const SpaceTag space = SpaceTag::parse(j.at("space").get<std::string>());
  DivisorClass c(space);
  for (const auto& entry : j.at("coeffs"))
    c.add(parse_generator_key(space.n(), entry.at("gen").get<std::string>()),
          parse_rational(entry.at("val").get<std::string>()));
  return c;
}

} // namespace taut
