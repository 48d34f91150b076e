#ifndef TAUT_CONES_HPP
#define TAUT_CONES_HPP

#include "taut/fcurves.hpp"
#include "taut/picard.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace taut {

/// Degrees of a class on all F-curves of Mbar_{0,n}. This certifies
/// F-nefness only; it says nothing about nefness against other curves.
struct NefCertificate {
  static constexpr const char* kLabel = "F-nef";

  int n = 0;
  std::vector<Rational> fingerprint;
  Rational min_degree;
  std::vector<FCurve> violators;

  bool f_nef() const { return violators.empty(); }
  nlohmann::ordered_json to_json(bool verbose = false) const;
};

/// Hassett and GIT classes are pulled back to Mbar_{0,n} first; a class is
/// nef downstairs iff its pullback is.
NefCertificate fnef_certificate(const DivisorClass& c);

struct MembershipCertificate {
  std::vector<std::string> generator_ids;
  std::vector<Rational> coefficients; // >= 0, one per generator
};

/// Not in the cone spanned by the supplied generators. `farkas` is a
/// functional on fingerprint space with farkas.g <= 0 for every generator
/// and farkas.target > 0.
struct NotFound {
  std::vector<Rational> farkas;
};

struct MembershipResult {
  std::optional<MembershipCertificate> certificate;
  std::optional<NotFound> not_found;

  bool found() const { return certificate.has_value(); }
  nlohmann::ordered_json to_json() const;
};

/// Exact phase-one simplex with Bland's rule: mu >= 0 with
/// sum mu_j gens[j] = target. Redundant coordinates are dropped first.
MembershipResult cone_membership(const std::vector<Rational>& target,
                                 const std::vector<std::vector<Rational>>& gens,
                                 std::vector<std::string> ids = {});

/// Same, in F-curve fingerprint coordinates. All classes must share n.
MembershipResult cone_membership(const DivisorClass& target,
                                 const std::vector<DivisorClass>& gens,
                                 std::vector<std::string> ids = {});

/// Re-multiplies the certificate; independent of the solver.
bool verify_membership(const std::vector<Rational>& target,
                       const std::vector<std::vector<Rational>>& gens,
                       const MembershipCertificate& cert);
bool verify_farkas(const std::vector<Rational>& target,
                   const std::vector<std::vector<Rational>>& gens, const NotFound& nf);

} // namespace taut

#endif // TAUT_CONES_HPP
