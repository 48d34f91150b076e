#ifndef TAUT_ERROR_HPP
#define TAUT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace taut {

/// Violated precondition: bad index, inadmissible weights, mismatched
/// spaces. Maps to CLI exit code 2.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical identity that was asserted did not hold. Carries the
/// identity name and a human-readable witness. Maps to CLI exit code 1.
class IdentityViolation : public std::runtime_error {
public:
  IdentityViolation(std::string identity, std::string witness)
      : std::runtime_error(identity + " violated: " + witness),
        identity_(std::move(identity)), witness_(std::move(witness)) {}

  const std::string& identity() const { return identity_; }
  const std::string& witness() const { return witness_; }

private:
  std::string identity_;
  std::string witness_;
};

} // namespace taut

#endif // TAUT_ERROR_HPP
