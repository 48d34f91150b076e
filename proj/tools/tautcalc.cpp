// tautcalc: command-line front end for the divisor class calculator.
//
// Exit codes: 0 ok, 1 an asserted identity failed, 2 usage or input error.

#include "taut/cones.hpp"
#include "taut/divisors.hpp"
#include "taut/error.hpp"
#include "taut/expr.hpp"
#include "taut/fcurves.hpp"
#include "taut/gitcalc.hpp"
#include "taut/morphisms.hpp"
#include "taut/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace taut;
using Json = nlohmann::ordered_json;

namespace {

struct Common {
  std::string n;
  std::string weights;
  std::string x;
  bool json = false;
  bool verbose = false;
  std::uint64_t seed = SuiteOptions{}.seed;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_space = true) {
  if (with_space) {
    cmd->add_option("--n", c.n, "number of markings (Mbar(0,n) ambient)");
    cmd->add_option("--weights", c.weights, "Hassett weights, e.g. 1,1,1/2,1/2");
    cmd->add_option("--x", c.x, "GIT weights summing to 2");
  }
  cmd->add_flag("--json", c.json, "machine-readable output");
  cmd->add_flag("--verbose", c.verbose, "include full fingerprints");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256));
}

int parse_int(const std::string& text, const char* flag) {
  try {
    size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size())
      return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(flag) + " expects an integer, got '" + text + "'");
}

SpaceTag ambient(const Common& c) {
  if (!c.weights.empty() && !c.x.empty())
    throw UsageError("--weights and --x are mutually exclusive");
  std::optional<int> n;
  if (!c.n.empty())
    n = parse_int(c.n, "--n");
  auto check_n = [&](int actual) {
    if (n && *n != actual)
      throw UsageError("--n " + std::to_string(*n) + " disagrees with " + std::to_string(actual) +
                       " weights");
  };
  if (!c.weights.empty()) {
    const WeightVector w = WeightVector::parse(c.weights);
    check_n(w.n());
    return SpaceTag::hassett(w);
  }
  if (!c.x.empty()) {
    auto x = parse_rational_list(c.x);
    check_n(static_cast<int>(x.size()));
    return SpaceTag::git_quotient(std::move(x));
  }
  if (!n)
    throw UsageError("specify the ambient space with --n, --weights or --x");
  require_marking_count(*n);
  return SpaceTag::moduli_bar(*n);
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string caret_line(const std::string& text, size_t offset) {
  return "  " + text + "\n  " + std::string(std::min(offset, text.size()), ' ') + "^";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    lines.push_back(line);
  return lines;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Expression lines of a batch or generator file: blank lines and "#"
// comments are skipped; the 1-based line number is kept.
std::vector<std::pair<int, std::string>> expression_lines(const std::string& path) {
  std::vector<std::pair<int, std::string>> out;
  int number = 0;
  for (const auto& raw : read_lines(path)) {
    ++number;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (!line.empty())
      out.emplace_back(number, line);
  }
  return out;
}

Json warnings_json(const std::vector<std::string>& warnings) {
  Json j = Json::array();
  for (const auto& w : warnings)
    j.push_back(w);
  return j;
}

// ---------------------------------------------------------------------------

struct LineResult {
  bool ok = false;
  DivisorClass value{SpaceTag::moduli_bar(4)};
  std::string canonical;
  std::string error;
  std::optional<size_t> offset;
  std::vector<std::string> warnings;
};

LineResult eval_line(const std::string& text, const SpaceTag& space) {
  LineResult r;
  try {
    const Expr e = parse_expr(text, space.n());
    r.canonical = print_expr(e);
    r.value = evaluate(e, space, &r.warnings);
    r.ok = true;
  } catch (const ParseError& e) {
    r.error = e.what();
    r.offset = e.offset();
  } catch (const UsageError& e) {
    r.error = e.what();
  }
  return r;
}

int cmd_eval(const Common& c, const std::string& expr, const std::string& batch) {
  const SpaceTag space = ambient(c);
  if (batch.empty()) {
    if (expr.empty())
      throw UsageError("eval needs an expression or --batch FILE");
    const LineResult r = eval_line(expr, space);
    if (!r.ok) {
      std::cerr << "error: " << r.error << "\n";
      if (r.offset)
        std::cerr << caret_line(expr, *r.offset) << "\n";
      return 2;
    }
    if (c.json) {
      Json j;
      j["space"] = space.to_string();
      j["expr"] = r.canonical;
      j["class"] = to_json(r.value);
      j["warnings"] = warnings_json(r.warnings);
      print(j);
    } else {
      for (const auto& w : r.warnings)
        std::cerr << "warning: " << w << "\n";
      std::cout << r.value.to_string() << "\n";
    }
    return 0;
  }

  const auto lines = expression_lines(batch);
  std::vector<LineResult> results(lines.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < lines.size(); i = next++)
      results[i] = eval_line(lines[i].second, space);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < c.jobs; ++t)
    pool.emplace_back(work);
  work();
  for (auto& t : pool)
    t.join();

  int failed = 0;
  Json arr = Json::array();
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto& r = results[i];
    failed += r.ok ? 0 : 1;
    if (c.json) {
      Json j;
      j["line"] = lines[i].first;
      j["expr"] = lines[i].second;
      j["status"] = r.ok ? "ok" : "failed";
      if (r.ok) {
        j["class"] = to_json(r.value);
        j["warnings"] = warnings_json(r.warnings);
      } else {
        j["error"] = r.error;
        if (r.offset)
          j["offset"] = *r.offset;
      }
      arr.push_back(j);
    } else if (r.ok) {
      std::cout << lines[i].first << ": " << r.value.to_string() << "\n";
      for (const auto& w : r.warnings)
        std::cout << lines[i].first << ": warning: " << w << "\n";
    } else {
      std::cout << lines[i].first << ": failed: " << r.error << "\n";
    }
  }
  if (c.json) {
    Json j;
    j["space"] = space.to_string();
    j["lines"] = arr;
    j["failed"] = failed;
    print(j);
  }
  return failed ? 2 : 0;
}

int cmd_nef(const Common& c, const std::string& expr) {
  if (expr.empty())
    throw UsageError("nef needs --class EXPR");
  const SpaceTag space = ambient(c);
  std::vector<std::string> warnings;
  const DivisorClass cls = evaluate(expr, space, &warnings);
  const NefCertificate cert = fnef_certificate(cls);
  if (c.json) {
    Json j;
    j["space"] = space.to_string();
    j["class"] = cls.to_string();
    j["certificate"] = cert.to_json(c.verbose);
    j["warnings"] = warnings_json(warnings);
    print(j);
  } else {
    std::cout << NefCertificate::kLabel << ": " << (cert.f_nef() ? "yes" : "no") << " (min degree "
              << cert.min_degree.get_str() << " over " << cert.fingerprint.size()
              << " F-curves)\n";
    for (const auto& f : cert.violators)
      std::cout << "  negative on " << f.to_string() << "\n";
  }
  return 0;
}

// Grid config: "n <int>", "classes A,B,Ctot" (optional) and one
// "weights <list>" line per vector; "#" starts a comment.
struct Grid {
  int n = 0;
  std::vector<std::string> classes{"A", "B", "Ctot"};
  std::vector<WeightVector> weights;
};

Grid read_grid(const std::string& path) {
  Grid g;
  for (const auto& [number, line] : expression_lines(path)) {
    std::istringstream in(line);
    std::string key, value;
    in >> key;
    std::getline(in, value);
    value = trim(value);
    const std::string where = path + ":" + std::to_string(number) + ": ";
    try {
      if (key == "n") {
        g.n = parse_int(value, "n");
      } else if (key == "classes") {
        g.classes.clear();
        std::stringstream ss(value);
        for (std::string name; std::getline(ss, name, ',');) {
          name = trim(name);
          if (name != "A" && name != "B" && name != "Ctot")
            throw UsageError("unknown grid class '" + name + "' (A, B or Ctot)");
          g.classes.push_back(name);
        }
      } else if (key == "weights") {
        g.weights.push_back(WeightVector::parse(value));
      } else {
        throw UsageError("unknown key '" + key + "'");
      }
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    }
  }
  if (g.n == 0)
    throw UsageError(path + ": missing 'n' line");
  for (const auto& w : g.weights) {
    if (w.n() != g.n)
      throw UsageError(path + ": weight vector " + w.to_string() + " does not have n entries");
    if (!w.admissible())
      throw UsageError(path + ": weight vector " + w.to_string() + " is not admissible");
  }
  return g;
}

int cmd_member(Common c, const std::string& target_expr, const std::string& gens_arg,
               const std::string& grid_path) {
  if (target_expr.empty())
    throw UsageError("member needs --target EXPR");
  std::optional<Grid> grid;
  if (!grid_path.empty()) {
    grid = read_grid(grid_path);
    if (c.n.empty() && c.weights.empty() && c.x.empty())
      c.n = std::to_string(grid->n);
  }
  const SpaceTag space = ambient(c);
  if (grid && !(space == SpaceTag::moduli_bar(grid->n)))
    throw UsageError("--grid generators live on Mbar(0," + std::to_string(grid->n) +
                     "), ambient is " + space.to_string());

  std::vector<std::string> warnings;
  const DivisorClass target = evaluate(target_expr, space, &warnings);
  std::vector<DivisorClass> gens;
  std::vector<std::string> ids;
  if (!gens_arg.empty()) {
    std::vector<std::pair<int, std::string>> lines;
    if (gens_arg[0] == '@') {
      lines = expression_lines(gens_arg.substr(1));
    } else {
      std::stringstream ss(gens_arg);
      int k = 0;
      for (std::string part; std::getline(ss, part, ';');)
        if (!trim(part).empty())
          lines.emplace_back(++k, trim(part));
    }
    for (const auto& [number, text] : lines) {
      try {
        gens.push_back(evaluate(text, space, &warnings));
      } catch (const std::exception& e) {
        throw UsageError("generator " + std::to_string(number) + " ('" + text + "'): " + e.what());
      }
      ids.push_back(text);
    }
  }
  if (grid)
    for (const auto& w : grid->weights)
      for (const auto& name : grid->classes) {
        const std::string text = "pull[" + w.to_string() + "](" + name + "(" + w.to_string() + "))";
        gens.push_back(evaluate(text, space));
        ids.push_back(text);
      }
  if (gens.empty())
    throw UsageError("member needs generators (--gens or --grid)");

  const NefCertificate cert = fnef_certificate(target);
  const MembershipResult result = cone_membership(target, gens, ids);

  // Re-check the answer independently of the solver.
  std::vector<std::vector<Rational>> fps;
  for (const auto& g : gens)
    fps.push_back(fingerprint_anywhere(g));
  const auto tfp = fingerprint_anywhere(target);
  const bool verified = result.found() ? verify_membership(tfp, fps, *result.certificate)
                                       : verify_farkas(tfp, fps, *result.not_found);

  if (c.json) {
    Json j;
    j["space"] = space.to_string();
    j["target"] = target.to_string();
    j["generators"] = gens.size();
    j["target_certificate"] = cert.to_json(c.verbose);
    j["membership"] = result.to_json();
    j["verified"] = verified;
    j["warnings"] = warnings_json(warnings);
    print(j);
  } else {
    std::cout << "target " << NefCertificate::kLabel << ": " << (cert.f_nef() ? "yes" : "no")
              << " (min degree " << cert.min_degree.get_str() << ")\n";
    if (result.found()) {
      std::cout << "in the cone of the " << gens.size() << " supplied generators:\n";
      const auto& mc = *result.certificate;
      for (size_t i = 0; i < mc.coefficients.size(); ++i)
        if (mc.coefficients[i] != 0)
          std::cout << "  " << mc.coefficients[i].get_str() << " * " << mc.generator_ids[i] << "\n";
    } else {
      std::cout << "not in the cone of the " << gens.size()
                << " supplied generators (Farkas certificate attached in --json)\n";
    }
    std::cout << "certificate re-check: " << (verified ? "exact" : "FAILED") << "\n";
  }
  return verified ? 0 : 1;
}

int cmd_transport(const Common& c, const std::string& expr, bool pull) {
  if (c.weights.empty())
    throw UsageError(std::string(pull ? "pull" : "push") + " needs --weights");
  if (expr.empty())
    throw UsageError("missing expression");
  const WeightVector w = WeightVector::parse(c.weights);
  if (!c.n.empty() && parse_int(c.n, "--n") != w.n())
    throw UsageError("--n disagrees with the number of weights");
  const ReductionMap f(w);
  std::vector<std::string> warnings;
  const DivisorClass in = evaluate(expr, pull ? f.target() : f.source(), &warnings);
  const DivisorClass out = pull ? f.pullback(in) : f.pushforward(in);
  if (c.json) {
    Json j;
    j["from"] = in.space().to_string();
    j["to"] = out.space().to_string();
    j["input"] = to_json(in);
    j["class"] = to_json(out);
    j["warnings"] = warnings_json(warnings);
    print(j);
  } else {
    for (const auto& m : warnings)
      std::cerr << "warning: " << m << "\n";
    std::cout << out.to_string() << "\n";
  }
  return 0;
}

void print_suite_text(const SuiteReport& r) {
  std::cout << "== " << r.suite << ": " << (r.ok() ? "holds" : "VIOLATED") << "\n";
  for (const auto& c : r.checks) {
    std::cout << "  " << (c.holds ? "holds     " : "VIOLATED  ") << c.identity << "\n";
    if (!c.holds)
      std::cout << "            " << c.witness << "\n";
  }
  for (const auto& n : r.notes)
    std::cout << "  note: " << n << "\n";
  if (!r.results.is_null())
    std::cout << "  results: " << r.results.dump() << "\n";
}

int cmd_verify(const Common& c, const std::string& suite, std::optional<int> samples) {
  SuiteOptions o;
  o.seed = c.seed;
  o.jobs = c.jobs;
  o.samples = samples;
  if (!c.n.empty())
    o.n_range = parse_n_range(c.n);
  if (!c.weights.empty())
    o.weights = WeightVector::parse(c.weights).values();
  if (!c.x.empty())
    o.x = parse_rational_list(c.x);

  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else
    names.push_back(suite);

  std::vector<SuiteReport> reports;
  for (const auto& name : names)
    reports.push_back(run_suite(name, o));
  bool ok = true;
  for (const auto& r : reports)
    ok = ok && r.ok();

  if (c.json) {
    if (reports.size() == 1) {
      print(reports.front().to_json(o.seed));
    } else {
      Json j;
      j["seed"] = o.seed;
      j["status"] = ok ? "holds" : "violated";
      Json summary = Json::array();
      for (const auto& r : reports) {
        int failed = 0;
        for (const auto& ch : r.checks)
          failed += ch.holds ? 0 : 1;
        summary.push_back({{"suite", r.suite},
                           {"status", r.ok() ? "holds" : "violated"},
                           {"checks", r.checks.size()},
                           {"violated", failed}});
      }
      j["summary"] = summary;
      Json all = Json::array();
      for (const auto& r : reports)
        all.push_back(r.to_json(o.seed));
      j["suites"] = all;
      print(j);
    }
  } else {
    std::cout << "seed " << o.seed << "\n";
    for (const auto& r : reports)
      print_suite_text(r);
    if (reports.size() > 1) {
      std::cout << "\nsuite          status    checks  violated\n";
      for (const auto& r : reports) {
        int failed = 0;
        for (const auto& ch : r.checks)
          failed += ch.holds ? 0 : 1;
        std::cout << std::left << std::setw(15) << r.suite << std::setw(10)
                  << (r.ok() ? "holds" : "VIOLATED") << std::setw(8) << r.checks.size() << failed
                  << "\n";
      }
    }
  }
  return ok ? 0 : 1;
}

int cmd_git_verify(const Common& c) {
  if (c.n.empty() && c.x.empty())
    throw UsageError("git-verify needs --n and/or --x");
  std::vector<Rational> x;
  int n;
  if (!c.x.empty()) {
    x = parse_rational_list(c.x);
    n = static_cast<int>(x.size());
    if (!c.n.empty() && parse_int(c.n, "--n") != n)
      throw UsageError("--n disagrees with the number of --x entries");
  } else {
    n = parse_int(c.n, "--n");
    require_marking_count(n);
    x.assign(static_cast<size_t>(n), frac(2, n));
  }
  const GitDescentReport report = verify_git_descent(n, x);
  if (c.json) {
    print(report.to_json());
  } else {
    std::cout << "x = (" << join(x) << "): " << (report.ok() ? "holds" : "VIOLATED") << "\n";
    for (const auto& ch : report.checks) {
      std::cout << "  " << (ch.holds ? "holds     " : "VIOLATED  ") << ch.identity << "\n";
      if (!ch.holds)
        std::cout << "            " << ch.witness << "\n";
    }
    for (const auto& note : report.notes)
      std::cout << "  note: " << note << "\n";
  }
  return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact divisor class calculator for Mbar(0,n), Hassett spaces and GIT quotients"};
  app.require_subcommand(1);

  Common common;
  std::string expr, batch, target, gens, grid, suite;
  std::optional<int> samples;

  auto* eval = app.add_subcommand("eval", "evaluate an expression on the ambient space");
  add_common(eval, common);
  eval->add_option("expr", expr, "divisor expression");
  eval->add_option("--batch", batch, "file with one expression per line, # comments");

  auto* nef = app.add_subcommand("nef", "F-nef certificate (degrees on all F-curves)");
  add_common(nef, common);
  nef->add_option("--class,expr", expr, "divisor expression");

  auto* member = app.add_subcommand("member", "exact LP cone membership in F-curve coordinates");
  add_common(member, common);
  member->add_option("--target", target, "target expression");
  member->add_option("--gens", gens, "@FILE with one expression per line, or 'e1; e2; ...'");
  member->add_option("--grid", grid, "weight grid config: pullbacks of A, B, Ctot");

  auto* pull = app.add_subcommand("pull", "pull back from Hassett(w) to Mbar(0,n)");
  add_common(pull, common);
  pull->add_option("expr", expr, "expression on Hassett(w)");

  auto* push = app.add_subcommand("push", "push forward from Mbar(0,n) to Hassett(w)");
  add_common(push, common);
  push->add_option("expr", expr, "expression on Mbar(0,n)");

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  add_common(verify, common);
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--samples", samples, "random instances per n");

  auto* git = app.add_subcommand("git-verify", "check the GIT descent identities");
  add_common(git, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eval)
      return cmd_eval(common, expr, batch);
    if (*nef)
      return cmd_nef(common, expr);
    if (*member)
      return cmd_member(common, target, gens, grid);
    if (*pull)
      return cmd_transport(common, expr, true);
    if (*push)
      return cmd_transport(common, expr, false);
    if (*verify)
      return cmd_verify(common, suite, samples);
    if (*git)
      return cmd_git_verify(common);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IdentityViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
