// One pass/fail line per acceptance criterion. Exit status is nonzero if
// any criterion fails; supplementary lines are informational only.
#include "taut/cones.hpp"
#include "taut/divisors.hpp"
#include "taut/expr.hpp"
#include "taut/fcurves.hpp"
#include "taut/suites.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace taut;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what, const std::string& detail = "") {
  std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << what;
  if (!detail.empty())
    std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!ok && id.find('+') == std::string::npos)
    ++failures;
}

std::string first_failure(const SuiteReport& r) {
  for (const auto& c : r.checks)
    if (!c.holds)
      return c.identity + ": " + c.witness;
  return "";
}

const IdentityCheck* find_check(const SuiteReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.identity.rfind(prefix, 0) == 0)
      return &c;
  return nullptr;
}

SuiteOptions range(int lo, int hi) {
  SuiteOptions o;
  o.n_range = std::pair{lo, hi};
  return o;
}

void criterion_positivity() {
  const auto start = std::chrono::steady_clock::now();
  const SuiteReport r = run_suite("positivity", range(4, 8));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs << " s";
  report("1", r.ok() && secs < 5.0,
         "positivity relation is zero for n=4..8, n=5 and n=6 instances, under 5 s",
         r.ok() ? t.str() : first_failure(r));
}

void criterion_keel() {
  const SuiteReport r = run_suite("keel", range(4, 6));
  report("2", r.ok(), "Keel relations have zero fingerprint, all 4-tuples, n=4..6",
         first_failure(r));
}

void criterion_rank() {
  // The keel suite computes ranks for n up to 7 regardless of its tuple range.
  const SuiteReport r = run_suite("keel", range(4, 7));
  std::string ranks;
  for (const auto& [n, v] : r.results["ranks"].items())
    ranks += (ranks.empty() ? "" : ", ") + n + ": " + v.dump();
  bool ok = r.ok();
  for (const auto& [n, expect] : std::vector<std::pair<std::string, int>>{{"4", 1}, {"5", 5}, {"6", 16}, {"7", 42}})
    ok = ok && r.results["ranks"].contains(n) && r.results["ranks"][n] == expect;
  report("3", ok, "boundary/F-curve pairing rank 2^(n-1) - C(n,2) - 1 for n=4..7", ranks);
}

void criterion_theorem_nef() {
  SuiteOptions o = range(5, 7);
  o.samples = 100;
  const SuiteReport r = run_suite("theorem-nef", o);
  report("4", r.ok(), "pullbacks of A, B, C_i are F-nef, 100 random weights at each n=5,6,7",
         first_failure(r));
}

void criterion_replacement() {
  SuiteOptions o = range(4, 7);
  o.samples = 50;
  const SuiteReport r = run_suite("replacement", o);
  const IdentityCheck* literal = find_check(r, "chi^* A(b) = A(a) + (1 - a_i) psi_i");
  const IdentityCheck* corrected = find_check(r, "chi^* A(b) = A(a) + (k - 1) C_i(a)");
  const IdentityCheck* trivial = find_check(r, "k = 1");
  report("5", literal && literal->holds,
         "chi^* A(b) = A(a) + (1 - a_i) psi_i on 50 random instances incl. (1/2)^6, 1/2 = 1/4 + 1/4",
         literal ? literal->witness : "check missing");
  report("5+", corrected && corrected->holds && trivial && trivial->holds,
         "supplementary: chi^* A(b) = A(a) + (k - 1) C_i(a) on the same instances",
         corrected ? corrected->witness : "check missing");
}

void criterion_discrepancy() {
  SuiteOptions o = range(5, 7);
  o.samples = 50;
  const SuiteReport r = run_suite("discrepancy", o);
  const bool anchor = r.to_json(o.seed).dump().find("\"subset\":\"{3,4,5}\",\"value\":\"7/5\"") !=
                      std::string::npos;
  report("6", r.ok() && anchor,
         "discrepancy support and coefficients on 50 random weights at n=5,6,7, {3,4,5} -> 7/5, "
         "f_* L = A",
         r.ok() ? (anchor ? "" : "anchor missing") : first_failure(r));
}

void criterion_n6() {
  const SuiteReport r = run_suite("n6-relations", {});
  const bool wanted = find_check(r, "f^*(5 psi'") && find_check(r, "2 Dnodal' - psi' is F-nef") &&
                      find_check(r, "psi' + Ds' = 3/2 Ctot") && find_check(r, "(1,1,1/2,1/2)");
  report("7", r.ok() && wanted,
         "n=6 relations: zero fingerprint, 2Dnodal' - psi' F-nef, psi' + Ds' = 3/2 Ctot, degrees 2,1,2",
         first_failure(r));
}

void criterion_git() {
  SuiteOptions o = range(4, 8);
  o.samples = 100;
  const SuiteReport r = run_suite("git-descent", o);
  const bool nef = find_check(r, "git(x) pulled back") != nullptr;
  report("8", r.ok() && nef,
         "GIT descent identities for n=4..8 at 2/n and 100 random x; pullback F-nef at n=5,6",
         first_failure(r));
}

void criterion_lp() {
  std::mt19937_64 rng(20240501);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int certs = 0, farkas = 0, trivial = 0;
  bool ok = true;
  std::string detail;

  // Generators: pullbacks of A, B and C_1 from random Hassett spaces.
  for (int t = 0; t < 30 && ok; ++t) {
    const int n = uni(5, 6);
    const SpaceTag m = SpaceTag::moduli_bar(n);
    std::vector<std::vector<Rational>> gens;
    for (int g = 0; g < 4; ++g) {
      std::vector<Rational> w;
      for (int i = 0; i < n; ++i)
        w.push_back(frac(uni(1, 6), 6));
      WeightVector a(w);
      if (!a.admissible())
        continue;
      const std::string pw = "pull[" + a.to_string() + "]";
      for (const char* body : {"A", "B", "C"}) {
        std::string text = pw + "(" + body + (std::string(body) == "C" ? "(1," : "(") + a.to_string() + "))";
        gens.push_back(fingerprint(evaluate(text, m)));
      }
    }
    if (gens.empty())
      continue;
    // trivial memberships
    for (size_t g = 0; g < gens.size(); ++g) {
      const auto r = cone_membership(gens[g], gens);
      ++trivial;
      if (!r.found() || !verify_membership(gens[g], gens, *r.certificate)) {
        ok = false;
        detail = "trivial membership " + std::to_string(g) + " not found";
      }
    }
    // random targets: combinations and arbitrary classes
    for (int k = 0; k < 4 && ok; ++k) {
      std::vector<Rational> target(gens[0].size());
      if (k % 2 == 0) {
        for (const auto& g : gens) {
          const Rational mu = frac(uni(0, 2), uni(1, 3));
          for (size_t d = 0; d < target.size(); ++d)
            target[d] += mu * g[d];
        }
      } else {
        DivisorClass c(m);
        c.add(Generator::psi(uni(1, n)), uni(-2, 2));
        c.add(Generator::boundary(boundary_subsets(n)[static_cast<size_t>(uni(0, 5))]), uni(-2, 2));
        target = fingerprint(c);
      }
      const auto r = cone_membership(target, gens);
      if (r.found()) {
        ++certs;
        ok = verify_membership(target, gens, *r.certificate);
      } else {
        ++farkas;
        ok = verify_farkas(target, gens, *r.not_found);
      }
      if (!ok)
        detail = "certificate check failed";
    }
  }
  if (ok)
    detail = std::to_string(certs) + " certificates, " + std::to_string(farkas) + " Farkas vectors, " +
             std::to_string(trivial) + " trivial memberships";
  report("9", ok && certs > 0 && farkas > 0, "LP certificates re-multiply exactly, Farkas vectors separate",
         detail);
}

void criterion_limitation() {
  std::ifstream in(README_PATH);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string readme = ss.str();
  const bool documented = readme.find("not reproducible") != std::string::npos &&
                          readme.find("ampleness") != std::string::npos &&
                          readme.find("cone equality") != std::string::npos;
  const auto j = fnef_certificate(expand_aggregate(SpaceTag::moduli_bar(5), Aggregate::PsiTotal)).to_json();
  const bool labelled = std::string(NefCertificate::kLabel) == "F-nef" && j["label"] == "F-nef";
  const SuiteReport r = run_suite("theorem-nef", [] {
    SuiteOptions o = range(5, 5);
    o.samples = 1;
    return o;
  }());
  bool noted = false;
  for (const auto& note : r.notes)
    noted = noted || note.find("not a proof of nefness or ampleness") != std::string::npos;
  report("10", documented && labelled && noted,
         "only F-nef certificates and exploratory LP are reported; README states the limitation",
         documented ? "" : "README limitation text missing");
}

} // namespace

int main() {
  criterion_positivity();
  criterion_keel();
  criterion_rank();
  criterion_theorem_nef();
  criterion_replacement();
  criterion_discrepancy();
  criterion_n6();
  criterion_git();
  criterion_lp();
  criterion_limitation();
  std::cout << (failures ? std::to_string(failures) + (failures == 1 ? " criterion" : " criteria") + " failed" : std::string("all criteria passed"))
            << "\n";
  return failures ? 1 : 0;
}
