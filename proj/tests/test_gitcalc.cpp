#include "oracles.hpp"

#include "taut/error.hpp"
#include "taut/gitcalc.hpp"

#include <doctest.h>

using namespace taut;

namespace {

SquareFreeClass mono(int n, std::initializer_list<int> idx, const Rational& q = 1) {
  SquareFreeClass c(n);
  Mask m = 0;
  for (int i : idx)
    m |= bit(i);
  c.add(m, q);
  return c;
}

SquareFreeClass random_class(oracle::Gen& gen, int n, bool allow_fiber) {
  SquareFreeClass c(n);
  const int top = allow_fiber ? n + 1 : n;
  for (int t = 0; t < 4; ++t) {
    Mask m = 0;
    for (int i = 1; i <= top; ++i)
      if (gen.uniform(0, 2) == 0)
        m |= bit(i);
    c.add(m, frac(gen.uniform(-3, 3), gen.uniform(1, 4)));
  }
  return c;
}

} // namespace

TEST_CASE("square-free products") {
  const int n = 4;
  CHECK((SquareFreeClass::h(n, 1) * SquareFreeClass::h(n, 1)).empty());
  CHECK(SquareFreeClass::tau(n, 2) * SquareFreeClass::tau(n, 2) == mono(n, {2, 5}, 2));
  const SquareFreeClass d = SquareFreeClass::tau(n, 1) - SquareFreeClass::tau(n, 2);
  CHECK(d * d == mono(n, {1, 2}, -2));
  CHECK(pushforward_pi(d * d).empty());
  CHECK(SquareFreeClass::omega(n) == mono(n, {5}, -2));
  CHECK(mono(n, {1, 5}, 2).to_string() == "2*H1*H5");
}

TEST_CASE("pushforward along the fiber coordinate") {
  const int n = 5;
  CHECK(pushforward_pi(mono(n, {1, 2})).empty());
  CHECK(pushforward_pi(Rational(-1) * (SquareFreeClass::tau(n, 3) * SquareFreeClass::tau(n, 3))) ==
        mono(n, {3}, -2));
  CHECK(pushforward_pi(SquareFreeClass::tau(n, 1) * SquareFreeClass::tau(n, 2)) ==
        mono(n, {1}) + mono(n, {2}));

  // (omega + sum x tau)(omega + sum tau) at x = (2/5)^5
  SquareFreeClass l = SquareFreeClass::omega(n), r = SquareFreeClass::omega(n);
  SquareFreeClass expect(n);
  for (int i = 1; i <= n; ++i) {
    l += frac(2, 5) * SquareFreeClass::tau(n, i);
    r += SquareFreeClass::tau(n, i);
    expect += Rational(n - 2) * frac(2, 5) * SquareFreeClass::h(n, i);
  }
  CHECK(pushforward_pi(l * r) == expect);
}

TEST_CASE("property: multiplication is commutative, associative and distributive") {
  oracle::Gen gen(59);
  for (int t = 0; t < 100; ++t) {
    const int n = gen.uniform(3, 7);
    const auto a = random_class(gen, n, true), b = random_class(gen, n, true),
               c = random_class(gen, n, true);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("property: projection formula") {
  oracle::Gen gen(61);
  for (int t = 0; t < 100; ++t) {
    const int n = gen.uniform(3, 7);
    const auto p = random_class(gen, n, false);
    const auto q = random_class(gen, n, true);
    CHECK(pushforward_pi(p * q) == p * pushforward_pi(q));
    CHECK(pushforward_pi(p + q) == pushforward_pi(p) + pushforward_pi(q));
  }
}

TEST_CASE("descent identities at the symmetric point") {
  for (int n = 4; n <= 8; ++n) {
    const GitDescentReport r = verify_git_descent(n, std::vector<Rational>(static_cast<size_t>(n), frac(2, n)));
    CHECK(r.ok());
    CHECK(r.checks.size() >= 4);
    CHECK(r.to_json()["status"] == "holds");
  }
}

TEST_CASE("descent identities at an asymmetric point") {
  const GitDescentReport r =
      verify_git_descent(5, {Rational(1), frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4)});
  CHECK(r.ok());
}

TEST_CASE("property: descent holds for random x") {
  oracle::Gen gen(67);
  for (int t = 0; t < 100; ++t) {
    const int n = gen.uniform(4, 8);
    CHECK(verify_git_descent(n, gen.typical_x(n)).ok());
  }
}

TEST_CASE("descent preconditions") {
  CHECK_THROWS_AS(verify_git_descent(4, {frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 4)}), UsageError);
  CHECK_THROWS_AS(verify_git_descent(5, std::vector<Rational>(4, frac(1, 2))), UsageError);
  const GitDescentReport atypical = verify_git_descent(4, std::vector<Rational>(4, frac(1, 2)));
  CHECK(atypical.ok());
  bool noted = false;
  for (const auto& note : atypical.notes)
    noted = noted || note.find("atypical") != std::string::npos;
  CHECK(noted);
}
