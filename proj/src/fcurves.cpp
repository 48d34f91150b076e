#include "taut/fcurves.hpp"
#include "taut/error.hpp"
#include "taut/morphisms.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace taut {

FCurve::FCurve(int n, std::array<Mask, 4> blocks) : n_(n), blocks_(blocks) {
  require_marking_count(n);
  Mask seen = 0;
  for (Mask b : blocks_) {
    if (b == 0)
      throw UsageError("F-curve blocks must be nonempty");
    if (b & seen)
      throw UsageError("F-curve blocks must be disjoint");
    seen |= b;
  }
  if (seen != full_mask(n))
    throw UsageError("F-curve blocks must cover {1.." + std::to_string(n) + "}");
  std::sort(blocks_.begin(), blocks_.end(),
            [](Mask a, Mask b) { return __builtin_ctz(a) < __builtin_ctz(b); });
}

std::string FCurve::to_string() const {
  std::string out = "(";
  for (size_t i = 0; i < 4; ++i) {
    if (i)
      out += '|';
    out += format_members(blocks_[i]);
  }
  return out + ")";
}

FCurve FCurve::parse(int n, const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw UsageError("F-curve must look like ({..}|{..}|{..}|{..}): '" + text + "'");
  s = s.substr(1, s.size() - 2);
  std::array<Mask, 4> blocks{};
  size_t count = 0, start = 0;
  while (true) {
    const auto bar = s.find('|', start);
    const std::string part = s.substr(start, bar - start);
    if (count == 4 || part.size() < 2 || part.front() != '{' || part.back() != '}')
      throw UsageError("malformed F-curve '" + text + "'");
    Mask m = 0;
    for (const auto& q : parse_rational_list(part.substr(1, part.size() - 2))) {
      const long i = q.get_num().get_si();
      if (q.get_den() != 1 || i < 1 || i > n)
        throw UsageError("bad index in F-curve '" + text + "'");
      m |= bit(static_cast<int>(i));
    }
    blocks[count++] = m;
    if (bar == std::string::npos)
      break;
    start = bar + 1;
  }
  if (count != 4)
    throw UsageError("F-curve needs four blocks: '" + text + "'");
  return FCurve(n, blocks);
}

FCurve FCurve::relabeled(const std::vector<int>& perm) const {
  std::array<Mask, 4> out{};
  for (size_t b = 0; b < 4; ++b)
    for (int i : members_of(blocks_[b]))
      out[b] |= bit(perm[static_cast<size_t>(i - 1)]);
  return FCurve(n_, out);
}

std::vector<FCurve> enumerate_fcurves(int n) {
  require_marking_count(n);
  std::vector<FCurve> out;
  // Restricted growth strings: element 1 opens block 0, each later element
  // joins an open block or opens the next one.
  std::vector<int> label(static_cast<size_t>(n), 0);
  auto recurse = [&](auto&& self, int pos, int used) -> void {
    if (used + (n - pos) < 4)
      return;
    if (pos == n) {
      if (used != 4)
        return;
      std::array<Mask, 4> blocks{};
      for (int i = 0; i < n; ++i)
        blocks[static_cast<size_t>(label[static_cast<size_t>(i)])] |= bit(i + 1);
      out.emplace_back(n, blocks);
      return;
    }
    for (int b = 0; b < used; ++b) {
      label[static_cast<size_t>(pos)] = b;
      self(self, pos + 1, used);
    }
    if (used < 4) {
      label[static_cast<size_t>(pos)] = used;
      self(self, pos + 1, used + 1);
    }
  };
  label[0] = 0;
  recurse(recurse, 1, 1);
  return out;
}

int pair_generator(const Generator& g, const FCurve& f) {
  const auto& b = f.blocks();
  const Mask full = full_mask(f.n());
  switch (g.kind) {
  case Generator::Kind::Psi:
    for (Mask block : b)
      if (block == g.data)
        return 1;
    return 0;
  case Generator::Kind::Boundary: {
    const Mask s = g.data;
    const Mask sc = full & ~s;
    for (Mask block : b)
      if (popcount(block) >= 2 && (s == block || sc == block))
        return -1;
    // Unions of two blocks come in complementary pairs.
    for (size_t j = 1; j < 4; ++j) {
      const Mask u = b[0] | b[j];
      if (s == u || sc == u)
        return 1;
    }
    return 0;
  }
  default:
    throw UsageError("F-curve pairing is defined on Mbar(0,n) generators only");
  }
}

Rational pair(const DivisorClass& c, const FCurve& f) {
  if (!c.space().is_moduli_bar())
    throw UsageError("pair expects a class on Mbar(0,n), got " + c.space().to_string());
  if (c.n() != f.n())
    throw UsageError("class and F-curve disagree on n");
  Rational total = 0;
  for (const auto& [g, q] : c.coeffs()) {
    const int d = pair_generator(g, f);
    if (d)
      total += d * q;
  }
  return total;
}

int PairingTable::column_of(const Generator& g) const {
  if (g.kind == Generator::Kind::Psi)
    return g.index() - 1;
  if (g.kind == Generator::Kind::Boundary)
    return subset_column[g.data];
  throw UsageError("not a generator of Mbar(0,n)");
}

namespace {

std::unique_ptr<PairingTable> build_table(int n) {
  auto t = std::make_unique<PairingTable>();
  t->n = n;
  t->curves = enumerate_fcurves(n);
  t->subsets = boundary_subsets(n);
  t->subset_column.assign(size_t{1} << n, -1);
  for (size_t k = 0; k < t->subsets.size(); ++k)
    t->subset_column[t->subsets[k].mask()] = n + static_cast<int>(k);
  t->rows.reserve(t->curves.size());
  for (const auto& f : t->curves) {
    std::vector<std::pair<int, int>> row;
    const auto& b = f.blocks();
    for (Mask block : b) {
      if (popcount(block) == 1)
        row.emplace_back(__builtin_ctz(block), 1);
      else
        row.emplace_back(t->subset_column[MarkedSubset::canonical_mask(n, block)], -1);
    }
    for (size_t j = 1; j < 4; ++j) {
      const Mask u = b[0] | b[j];
      row.emplace_back(t->subset_column[MarkedSubset::canonical_mask(n, u)], 1);
    }
    std::sort(row.begin(), row.end());
    t->rows.push_back(std::move(row));
  }
  return t;
}

} // namespace

const PairingTable& pairing_table(int n) {
  require_marking_count(n);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PairingTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot)
    slot = build_table(n);
  return *slot;
}

std::vector<Rational> fingerprint(const DivisorClass& c) {
  if (!c.space().is_moduli_bar())
    throw UsageError("fingerprint expects a class on Mbar(0,n), got " + c.space().to_string());
  const PairingTable& t = pairing_table(c.n());
  std::vector<Rational> dense(static_cast<size_t>(t.columns()));
  for (const auto& [g, q] : c.coeffs())
    dense[static_cast<size_t>(t.column_of(g))] = q;
  std::vector<Rational> out(t.rows.size());
  for (size_t r = 0; r < t.rows.size(); ++r) {
    Rational s = 0;
    for (const auto& [col, d] : t.rows[r]) {
      const Rational& q = dense[static_cast<size_t>(col)];
      if (q == 0)
        continue;
      if (d > 0)
        s += q;
      else
        s -= q;
    }
    out[r] = std::move(s);
  }
  return out;
}

std::vector<Rational> fingerprint_anywhere(const DivisorClass& c) {
  switch (c.space().kind()) {
  case SpaceTag::Kind::ModuliBar:
    return fingerprint(c);
  case SpaceTag::Kind::Hassett:
    return fingerprint(ReductionMap(c.space().weights()).pullback(c));
  case SpaceTag::Kind::GitQuotient:
    return fingerprint(ReductionMap::to_git(c.space()).pullback(c));
  }
  return {};
}

bool is_zero_vector(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

} // namespace taut
