#include "oracles.hpp"

#include "taut/cones.hpp"
#include "taut/divisors.hpp"
#include "taut/error.hpp"
#include "taut/morphisms.hpp"

#include <doctest.h>

using namespace taut;

namespace {

const WeightVector kFifth = WeightVector::parse("1,1,1/10,1/10,1/10");

DivisorClass single(const SpaceTag& s, const Generator& g, const Rational& q = 1) {
  DivisorClass c(s);
  c.add(g, q);
  return c;
}

} // namespace

TEST_CASE("coefficients on small examples") {
  const SpaceTag h = SpaceTag::hassett(kFifth);
  CHECK(class_A(h, kFifth).coeff(Generator::coincidence(3, 4)) == frac(1, 5));
  CHECK(class_A(h, kFifth).coeff(Generator::psi(1)) == 1);

  const WeightVector half = WeightVector::uniform(6, frac(1, 2));
  const SpaceTag h6 = SpaceTag::hassett(half);
  const DivisorClass b = class_B(h6, half);
  for (int i = 1; i <= 6; ++i)
    CHECK(b.coeff(Generator::psi(i)) == frac(3, 4));
  CHECK(b.coeff(Generator::coincidence(2, 5)) == frac(1, 2));
  CHECK(class_C_total(h6, half).coeff(Generator::coincidence(1, 2)) == 1);

  // A at (1/2)^6 is psi + sum Delta_ij - Dnodal
  CHECK(class_A(h6, half) == expand_aggregate(h6, Aggregate::PsiTotal) +
                                  expand_aggregate(h6, Aggregate::DeltaS) -
                                  expand_aggregate(h6, Aggregate::DeltaNodal));

  const SpaceTag m5 = SpaceTag::moduli_bar(5);
  const WeightVector ones = WeightVector::uniform(5, 1);
  CHECK(class_A(m5, ones) ==
        expand_aggregate(m5, Aggregate::Kappa) + expand_aggregate(m5, Aggregate::PsiTotal));
  CHECK(class_B(m5, ones) == class_A(m5, ones));
  CHECK(class_C(m5, ones, 2).empty());

  const DivisorClass c1 = class_C(h, kFifth, 1);
  CHECK(c1.coeff(Generator::psi(1)) == 0);
  CHECK(c1.coeffs().empty()); // a_1 = 1: no pair with 1 is light either
  const DivisorClass c3 = class_C(h, kFifth, 3);
  CHECK(c3.coeff(Generator::psi(3)) == frac(9, 10));
  CHECK(c3.coeff(Generator::coincidence(3, 5)) == frac(1, 10));
}

TEST_CASE("3/2 C_total(1/3^6) on Hassett((1/2)^6) is psi + Ds") {
  const WeightVector half = WeightVector::uniform(6, frac(1, 2));
  const SpaceTag h = SpaceTag::hassett(half);
  const WeightVector third = WeightVector::uniform(6, frac(1, 3));
  CHECK(frac(3, 2) * class_C_total(h, third) ==
        expand_aggregate(h, Aggregate::PsiTotal) + expand_aggregate(h, Aggregate::DeltaS));
}

TEST_CASE("K and its relation to A") {
  const SpaceTag m4 = SpaceTag::moduli_bar(4);
  CHECK(fingerprint(class_K(m4)) == std::vector<Rational>{-2});

  oracle::Gen gen(43);
  for (int t = 0; t < 40; ++t) {
    const int n = gen.uniform(4, 7);
    const WeightVector a = gen.admissible(n);
    const SpaceTag h = SpaceTag::hassett(a);
    DivisorClass rhs = class_K(h) + expand_aggregate(h, Aggregate::DeltaNodal);
    for (const auto& [i, j] : coincidence_pairs(h))
      rhs += (a[i] + a[j]) * coincidence_class(h, i, j);
    CHECK(class_A_plus_lambda(h, a) == rhs);
    CHECK(eq_classes(class_A(h, a), rhs));
  }
}

TEST_CASE("upstairs log canonical divisor") {
  const DivisorClass l = class_logcanonical_upstairs(kFifth);
  CHECK(l.coeff(Generator::boundary(MarkedSubset::parse(5, "{3,4}"))) == frac(-9, 5));
  CHECK(l.coeff(Generator::boundary(MarkedSubset::parse(5, "{1,2}"))) == -1);
  CHECK(l.coeff(Generator::boundary(MarkedSubset::parse(5, "{1,3}"))) == -1);

  // no light pairs: K + Delta
  const WeightVector ones = WeightVector::uniform(5, 1);
  const SpaceTag m5 = SpaceTag::moduli_bar(5);
  CHECK(class_logcanonical_upstairs(ones) ==
        class_K(m5) + expand_aggregate(m5, Aggregate::DeltaTotal));
}

TEST_CASE("property: pushforward of the upstairs log canonical divisor is A") {
  oracle::Gen gen(47);
  for (int t = 0; t < 60; ++t) {
    const int n = gen.uniform(4, 7);
    const WeightVector a = gen.admissible(n);
    const ReductionMap f(a);
    CHECK(f.pushforward(class_logcanonical_upstairs(a)) == class_A(f.target(), a));
  }
}

TEST_CASE("property: A, B, C agree with the family calculus on every kind of space") {
  oracle::Gen gen(53);
  for (int t = 0; t < 60; ++t) {
    const int n = gen.uniform(4, 7);
    const WeightVector a = gen.admissible(n);
    const WeightVector w = gen.admissible(n);
    for (const SpaceTag& s :
         {SpaceTag::hassett(a), SpaceTag::moduli_bar(n), SpaceTag::git_quotient(gen.typical_x(n))}) {
      // Hassett: evaluate at the space's own weights; elsewhere w is formal.
      const WeightVector& v = s.is_hassett() ? a : w;
      CHECK(class_A(s, v) == oracle::family_A(s, v.values()));
      CHECK(class_B(s, v) == oracle::family_B(s, v.values()));
      DivisorClass total(s);
      for (int i = 1; i <= n; ++i) {
        CHECK(class_C(s, v, i) == oracle::family_C(s, v.values(), i));
        total += class_C(s, v, i);
      }
      CHECK(class_C_total(s, v) == total);
    }
  }
}

TEST_CASE("GIT polarization") {
  const std::vector<Rational> x(5, frac(2, 5));
  const SpaceTag g = SpaceTag::git_quotient(x);
  // On the quotient the class normal-forms to -(n-2)/2 sum x_i psi_i.
  CHECK(class_A(g, WeightVector(x)) == frac(-3, 5) * expand_aggregate(g, Aggregate::PsiTotal));

  const DivisorClass up = git_polarization_pullback(x);
  CHECK(up == ReductionMap::to_git(g).pullback(class_A(g, WeightVector(x))));
  const NefCertificate cert = fnef_certificate(up);
  CHECK(cert.f_nef());
  CHECK(cert.min_degree >= 0);

  CHECK_THROWS_AS(git_polarization_pullback(std::vector<Rational>(4, frac(1, 2))), UsageError);
  CHECK_THROWS_AS(git_polarization_pullback({frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 3)}), UsageError);
}

TEST_CASE("named classes reject mismatched weight length") {
  CHECK_THROWS_AS(class_A(SpaceTag::hassett(kFifth), WeightVector::uniform(6, 1)), UsageError);
  CHECK_THROWS_AS(class_C(SpaceTag::hassett(kFifth), kFifth, 6), UsageError);
  CHECK_THROWS_AS(coincidence_class(SpaceTag::hassett(kFifth), 1, 2), UsageError);
  CHECK(coincidence_class(SpaceTag::hassett(kFifth), 3, 5) ==
        single(SpaceTag::hassett(kFifth), Generator::coincidence(3, 5)));
}
