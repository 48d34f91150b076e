#ifndef TAUT_REPORT_HPP
#define TAUT_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace taut {

/// One checked identity: {"identity": ..., "status": "holds"|"violated", "witness": ...}.
struct IdentityCheck {
  std::string identity;
  bool holds = true;
  std::string witness;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["status"] = holds ? "holds" : "violated";
    if (!witness.empty())
      j["witness"] = witness;
    return j;
  }
};

inline bool all_hold(const std::vector<IdentityCheck>& checks) {
  for (const auto& c : checks)
    if (!c.holds)
      return false;
  return true;
}

} // namespace taut

#endif // TAUT_REPORT_HPP
