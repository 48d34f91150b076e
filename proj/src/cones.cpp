#include "taut/cones.hpp"
#include "taut/error.hpp"
#include "taut/linalg.hpp"

#include <algorithm>

namespace taut {

nlohmann::ordered_json NefCertificate::to_json(bool verbose) const {
  nlohmann::ordered_json j;
  j["label"] = kLabel;
  j["n"] = n;
  j["f_nef"] = f_nef();
  j["min_degree"] = min_degree.get_str();
  j["curves"] = fingerprint.size();
  auto v = nlohmann::ordered_json::array();
  for (const auto& f : violators)
    v.push_back(f.to_string());
  j["violators"] = std::move(v);
  if (verbose) {
    auto fp = nlohmann::ordered_json::array();
    for (const auto& q : fingerprint)
      fp.push_back(q.get_str());
    j["fingerprint"] = std::move(fp);
  }
  return j;
}

NefCertificate fnef_certificate(const DivisorClass& c) {
  NefCertificate cert;
  cert.n = c.n();
  cert.fingerprint = fingerprint_anywhere(c);
  const auto& curves = pairing_table(c.n()).curves;
  cert.min_degree = *std::min_element(cert.fingerprint.begin(), cert.fingerprint.end());
  for (size_t r = 0; r < curves.size(); ++r)
    if (cert.fingerprint[r] < 0)
      cert.violators.push_back(curves[r]);
  return cert;
}

nlohmann::ordered_json MembershipResult::to_json() const {
  nlohmann::ordered_json j;
  if (certificate) {
    j["status"] = "found";
    auto arr = nlohmann::ordered_json::array();
    for (size_t i = 0; i < certificate->coefficients.size(); ++i)
      if (certificate->coefficients[i] != 0)
        arr.push_back({{"generator", certificate->generator_ids[i]},
                       {"coefficient", certificate->coefficients[i].get_str()}});
    j["combination"] = std::move(arr);
  } else {
    j["status"] = "not-found";
    j["note"] = "not in the cone of the supplied generators";
    auto arr = nlohmann::ordered_json::array();
    if (not_found)
      for (const auto& q : not_found->farkas)
        arr.push_back(q.get_str());
    j["farkas"] = std::move(arr);
  }
  return j;
}

namespace {

/// Dense tableau for min sum(artificials) s.t. A mu + s = b, mu, s >= 0,
/// with b >= 0 after row sign flips.
class PhaseOneSimplex {
public:
  PhaseOneSimplex(const RationalMatrix& a, const std::vector<Rational>& b)
      : rows_(a.size()), structural_(rows_ ? a[0].size() : 0),
        cols_(structural_ + rows_), tableau_(rows_, std::vector<Rational>(cols_ + 1)),
        sign_(rows_, 1), basis_(rows_), reduced_(cols_ + 1) {
    for (size_t i = 0; i < rows_; ++i) {
      sign_[i] = b[i] < 0 ? -1 : 1;
      for (size_t j = 0; j < structural_; ++j)
        tableau_[i][j] = sign_[i] * a[i][j];
      tableau_[i][structural_ + i] = 1;
      tableau_[i][cols_] = sign_[i] * b[i];
      basis_[i] = structural_ + i;
    }
    // Reduced costs with every artificial basic at cost 1.
    for (size_t j = 0; j <= cols_; ++j) {
      Rational s = 0;
      for (size_t i = 0; i < rows_; ++i)
        s += tableau_[i][j];
      reduced_[j] = j >= structural_ && j < cols_ ? Rational(0) : Rational(-s);
    }
  }

  void solve() {
    while (true) {
      size_t enter = cols_;
      for (size_t j = 0; j < cols_; ++j)
        if (reduced_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_)
        return;
      size_t leave = rows_;
      Rational best;
      for (size_t i = 0; i < rows_; ++i) {
        if (tableau_[i][enter] <= 0)
          continue;
        Rational ratio = tableau_[i][cols_] / tableau_[i][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      // Phase one is bounded below by zero, so some row always qualifies.
      pivot(leave, enter);
    }
  }

  Rational objective() const { return -reduced_[cols_]; }

  std::vector<Rational> primal() const {
    std::vector<Rational> mu(structural_);
    for (size_t i = 0; i < rows_; ++i)
      if (basis_[i] < structural_)
        mu[basis_[i]] = tableau_[i][cols_];
    return mu;
  }

  /// Multipliers y in the original row orientation: y^T A <= 0, y^T b > 0.
  std::vector<Rational> farkas() const {
    std::vector<Rational> y(rows_);
    for (size_t i = 0; i < rows_; ++i)
      y[i] = sign_[i] * (1 - reduced_[structural_ + i]);
    return y;
  }

private:
  void pivot(size_t r, size_t c) {
    const Rational inv = 1 / tableau_[r][c];
    for (auto& q : tableau_[r])
      q *= inv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r || tableau_[i][c] == 0)
        continue;
      const Rational f = tableau_[i][c];
      for (size_t j = 0; j <= cols_; ++j)
        if (tableau_[r][j] != 0)
          tableau_[i][j] -= f * tableau_[r][j];
    }
    if (reduced_[c] != 0) {
      const Rational f = reduced_[c];
      for (size_t j = 0; j <= cols_; ++j)
        if (tableau_[r][j] != 0)
          reduced_[j] -= f * tableau_[r][j];
    }
    basis_[r] = c;
  }

  size_t rows_, structural_, cols_;
  RationalMatrix tableau_;
  std::vector<int> sign_;
  std::vector<size_t> basis_;
  std::vector<Rational> reduced_; // last entry holds -objective
};

} // namespace

MembershipResult cone_membership(const std::vector<Rational>& target,
                                 const std::vector<std::vector<Rational>>& gens,
                                 std::vector<std::string> ids) {
  const size_t m = target.size();
  for (const auto& g : gens)
    if (g.size() != m)
      throw UsageError("cone_membership: generator dimension " + std::to_string(g.size()) +
                       " differs from target dimension " + std::to_string(m));
  if (ids.empty())
    for (size_t j = 0; j < gens.size(); ++j)
      ids.push_back("g" + std::to_string(j + 1));
  if (ids.size() != gens.size())
    throw UsageError("cone_membership: one id per generator required");

  // Coordinates whose rows of [G | t] span all rows carry the whole system.
  RationalMatrix augmented(m, std::vector<Rational>(gens.size() + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < gens.size(); ++j)
      augmented[i][j] = gens[j][i];
    augmented[i][gens.size()] = target[i];
  }
  const std::vector<size_t> keep = independent_rows(augmented);

  RationalMatrix a;
  std::vector<Rational> b;
  for (size_t i : keep) {
    a.emplace_back(augmented[i].begin(), augmented[i].end() - 1);
    b.push_back(augmented[i].back());
  }

  MembershipResult result;
  if (keep.empty()) {
    // Target and generators are all zero.
    result.certificate = MembershipCertificate{ids, std::vector<Rational>(gens.size())};
    return result;
  }
  PhaseOneSimplex lp(a, b);
  lp.solve();
  if (lp.objective() == 0) {
    result.certificate = MembershipCertificate{ids, lp.primal()};
  } else {
    NotFound nf;
    nf.farkas.assign(m, Rational(0));
    const auto y = lp.farkas();
    for (size_t r = 0; r < keep.size(); ++r)
      nf.farkas[keep[r]] = y[r];
    result.not_found = std::move(nf);
  }
  return result;
}

MembershipResult cone_membership(const DivisorClass& target, const std::vector<DivisorClass>& gens,
                                 std::vector<std::string> ids) {
  std::vector<std::vector<Rational>> fps;
  for (const auto& g : gens) {
    if (g.n() != target.n())
      throw UsageError("cone_membership: generator on " + g.space().to_string() +
                       " has a different number of markings than the target");
    fps.push_back(fingerprint_anywhere(g));
  }
  if (ids.empty())
    for (const auto& g : gens)
      ids.push_back(g.to_string());
  return cone_membership(fingerprint_anywhere(target), fps, std::move(ids));
}

bool verify_membership(const std::vector<Rational>& target,
                       const std::vector<std::vector<Rational>>& gens,
                       const MembershipCertificate& cert) {
  if (cert.coefficients.size() != gens.size())
    return false;
  std::vector<Rational> sum(target.size());
  for (size_t j = 0; j < gens.size(); ++j) {
    if (cert.coefficients[j] < 0)
      return false;
    for (size_t i = 0; i < target.size(); ++i)
      sum[i] += cert.coefficients[j] * gens[j][i];
  }
  return sum == target;
}

bool verify_farkas(const std::vector<Rational>& target,
                   const std::vector<std::vector<Rational>>& gens, const NotFound& nf) {
  if (nf.farkas.size() != target.size())
    return false;
  auto dot = [&](const std::vector<Rational>& v) {
    Rational s = 0;
    for (size_t i = 0; i < v.size(); ++i)
      s += nf.farkas[i] * v[i];
    return s;
  };
  for (const auto& g : gens)
    if (dot(g) > 0)
      return false;
  return dot(target) > 0;
}

} // namespace taut
