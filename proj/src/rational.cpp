#include "taut/rational.hpp"
#include "taut/error.hpp"

#include <cctype>

namespace taut {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw UsageError("malformed rational '" + std::string(text) + "'");
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0)
    throw UsageError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  if (negative)
    r = -r;
  return r;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::string_view s = trim(text);
  if (s.empty())
    return out;
  size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_rational(s.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string join(const std::vector<Rational>& values, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += sep;
    out += values[i].get_str();
  }
  return out;
}

} // namespace taut
