#include "taut/gitcalc.hpp"
#include "taut/divisors.hpp"
#include "taut/error.hpp"
#include "taut/picard.hpp"

namespace taut {

SquareFreeClass SquareFreeClass::constant(int n, const Rational& q) {
  SquareFreeClass c(n);
  c.add(0, q);
  return c;
}

SquareFreeClass SquareFreeClass::h(int n, int i) {
  if (i < 1 || i > n + 1)
    throw UsageError("H index " + std::to_string(i) + " out of range 1.." + std::to_string(n + 1));
  SquareFreeClass c(n);
  c.add(bit(i), 1);
  return c;
}

SquareFreeClass SquareFreeClass::omega(int n) { return Rational(-2) * h(n, n + 1); }

SquareFreeClass SquareFreeClass::tau(int n, int i) {
  if (i < 1 || i > n)
    throw UsageError("section index out of range");
  return h(n, i) + h(n, n + 1);
}

Rational SquareFreeClass::coeff(Mask monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

SquareFreeClass& SquareFreeClass::add(Mask monomial, const Rational& q) {
  if (q == 0)
    return *this;
  auto [it, inserted] = terms_.try_emplace(monomial, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0)
      terms_.erase(it);
  }
  return *this;
}

SquareFreeClass& SquareFreeClass::operator+=(const SquareFreeClass& o) {
  if (o.n_ != n_)
    throw UsageError("square-free classes on different products");
  for (const auto& [m, q] : o.terms_)
    add(m, q);
  return *this;
}

SquareFreeClass& SquareFreeClass::operator-=(const SquareFreeClass& o) {
  if (o.n_ != n_)
    throw UsageError("square-free classes on different products");
  for (const auto& [m, q] : o.terms_)
    add(m, -q);
  return *this;
}

SquareFreeClass operator*(const Rational& s, SquareFreeClass a) {
  SquareFreeClass out(a.n());
  for (const auto& [m, q] : a.terms())
    out.add(m, s * q);
  return out;
}

std::string SquareFreeClass::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, q] : terms_) {
    const Rational mag = abs(q);
    if (first)
      out += q < 0 ? "-" : "";
    else
      out += q < 0 ? " - " : " + ";
    std::string mono;
    for (int i : members_of(m))
      mono += (mono.empty() ? "" : "*") + ("H" + std::to_string(i));
    if (mono.empty())
      out += mag.get_str();
    else
      out += (mag == 1 ? "" : mag.get_str() + "*") + mono;
    first = false;
  }
  return out;
}

SquareFreeClass multiply(const SquareFreeClass& a, const SquareFreeClass& b) {
  if (a.n() != b.n())
    throw UsageError("square-free classes on different products");
  SquareFreeClass out(a.n());
  for (const auto& [ma, qa] : a.terms())
    for (const auto& [mb, qb] : b.terms())
      if ((ma & mb) == 0)
        out.add(ma | mb, qa * qb);
  return out;
}

SquareFreeClass pushforward_pi(const SquareFreeClass& a) {
  const Mask fiber = bit(a.n() + 1);
  SquareFreeClass out(a.n());
  for (const auto& [m, q] : a.terms())
    if (m & fiber)
      out.add(m & ~fiber, q);
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json GitDescentReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["x"] = join(x);
  j["status"] = ok() ? "holds" : "violated";
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    arr.push_back(c.to_json());
  j["checks"] = std::move(arr);
  j["notes"] = notes;
  return j;
}

namespace {

void expect(std::vector<IdentityCheck>& checks, std::string name, const SquareFreeClass& got,
            const SquareFreeClass& want) {
  IdentityCheck c{std::move(name), got == want, ""};
  if (!c.holds)
    c.witness = "got " + got.to_string() + ", expected " + want.to_string();
  checks.push_back(std::move(c));
}

} // namespace

GitDescentReport verify_git_descent(int n, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != n)
    throw UsageError("expected " + std::to_string(n) + " GIT weights, got " +
                     std::to_string(x.size()));
  // The identities are weight-generic, so atypical x is checked too.
  const SpaceTag git = SpaceTag::git_quotient(x, true);

  GitDescentReport report;
  report.n = n;
  report.x = x;
  if (const auto w = atypical_witness(x))
    report.notes.push_back("x is atypical: subset " + format_members(*w) +
                           " has weight 1, so the quotient has strictly semistable points");

  const SquareFreeClass omega = SquareFreeClass::omega(n);
  SquareFreeClass weighted = omega, unweighted = omega, target(n);
  for (int i = 1; i <= n; ++i) {
    weighted += x[static_cast<size_t>(i - 1)] * SquareFreeClass::tau(n, i);
    unweighted += SquareFreeClass::tau(n, i);
    target += Rational(n - 2) * x[static_cast<size_t>(i - 1)] * SquareFreeClass::h(n, i);
  }
  const SquareFreeClass pushed = pushforward_pi(weighted * unweighted);
  expect(report.checks, "pi_*((omega+sum x_i tau_i)(omega+sum tau_i)) = (n-2) sum x_i H_i", pushed,
         target);

  for (int i = 1; i <= n; ++i) {
    const SquareFreeClass t = SquareFreeClass::tau(n, i);
    expect(report.checks, "pi_*(-tau_" + std::to_string(i) + "^2) = -2 H_" + std::to_string(i),
           pushforward_pi(Rational(-1) * (t * t)), Rational(-2) * SquareFreeClass::h(n, i));
  }

  // Delta_ij = pi_*(tau_i tau_j) = H_i + H_j, i.e. -(psi_i + psi_j)/2.
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      expect(report.checks,
             "pi_*(tau_" + std::to_string(i) + " tau_" + std::to_string(j) + ") = H_" +
                 std::to_string(i) + " + H_" + std::to_string(j),
             pushforward_pi(SquareFreeClass::tau(n, i) * SquareFreeClass::tau(n, j)),
             SquareFreeClass::h(n, i) + SquareFreeClass::h(n, j));
  {
    const SquareFreeClass d = SquareFreeClass::tau(n, 1) - SquareFreeClass::tau(n, 2);
    report.notes.push_back("(tau_1 - tau_2)^2 = " + (d * d).to_string() +
                           " as a class on (P^1)^n x P^1; pi_* of it = " +
                           pushforward_pi(d * d).to_string());
  }

  DivisorClass normal_form(git);
  for (int i = 1; i <= n; ++i)
    normal_form.add(Generator::psi(i), frac(-(n - 2), 2) * x[static_cast<size_t>(i - 1)]);

  const DivisorClass a = class_A(git, WeightVector(x));
  IdentityCheck nf{"A(x) = -(n-2)/2 sum x_i psi_i", a == normal_form, ""};
  if (!nf.holds)
    nf.witness = "got " + a.to_string() + ", expected " + normal_form.to_string();
  report.checks.push_back(std::move(nf));

  DivisorClass descended(git);
  for (const auto& [m, q] : pushed.terms()) {
    if (popcount(m) != 1 || (m & bit(n + 1))) {
      descended = DivisorClass(git);
      report.checks.push_back({"descent of pi_* class", false, "unexpected monomial"});
      break;
    }
    descended.add(Generator::psi(__builtin_ctz(m) + 1), q * Rational(-1, 2));
  }
  IdentityCheck desc{"descended (n-2) sum x_i H_i equals A(x)", descended == a, ""};
  if (!desc.holds)
    desc.witness = "descended " + descended.to_string() + ", A(x) = " + a.to_string();
  report.checks.push_back(std::move(desc));
  return report;
}

} // namespace taut
