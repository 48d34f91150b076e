#include "taut/expr.hpp"
#include "taut/divisors.hpp"
#include "taut/error.hpp"
#include "taut/morphisms.hpp"

#include <cctype>
#include <set>

namespace taut {

ParseError::ParseError(size_t offset, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error(message), offset_(offset), expected_(std::move(expected)) {}

namespace {

const std::set<std::string> kGenerators = {"psi", "bd", "coinc", "nodal"};
const std::set<std::string> kAggregates = {"Psi", "Dnodal", "Ds", "Dr", "Delta", "kappa", "lambda"};
const std::set<std::string> kNamed = {"A", "B", "C", "Ctot", "K", "Lup", "git"};
const std::set<std::string> kTransports = {"pull", "push", "chi*"};

struct Token {
  enum class Kind { Int, Ident, Symbol, End };
  Kind kind;
  std::string text;
  size_t offset;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
      out.push_back({Token::Kind::Int, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      std::string word(s.substr(start, i - start));
      if (word == "chi" && i + 1 < s.size() && s[i] == '*' && s[i + 1] == '[') {
        word = "chi*";
        ++i;
      }
      out.push_back({Token::Kind::Ident, word, start});
      continue;
    }
    if (std::string_view("+-*/(){}[],:").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(start, {"number", "name", "operator"},
                     "unexpected character '" + std::string(1, c) + "' at offset " +
                         std::to_string(start));
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

class Parser {
public:
  Parser(std::string_view text, std::optional<int> n) : tokens_(lex(text)), n_(n) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Token::Kind::End)
      fail({"'+'", "'-'", "end of input"});
    return e;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool at_symbol(const char* s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    std::string list;
    for (size_t i = 0; i < expected.size(); ++i)
      list += (i ? ", " : "") + expected[i];
    throw ParseError(t.offset, expected,
                     "at offset " + std::to_string(t.offset) + ": expected " + list + ", found " +
                         found);
  }

  void expect_symbol(const char* s) {
    if (!at_symbol(s))
      fail({std::string("'") + s + "'"});
    ++pos_;
  }

  Expr expr() {
    Expr left = term();
    while (at_symbol("+") || at_symbol("-")) {
      const Token& op = next();
      Expr node;
      node.kind = op.text == "+" ? Expr::Kind::Sum : Expr::Kind::Difference;
      node.offset = op.offset;
      node.children.push_back(std::move(left));
      node.children.push_back(term());
      left = std::move(node);
    }
    return left;
  }

  bool starts_factor() const {
    return peek().kind == Token::Kind::Int || peek().kind == Token::Kind::Ident || at_symbol("(");
  }

  Expr term() {
    Expr left = unary();
    while (at_symbol("*") || starts_factor()) {
      const size_t offset = peek().offset;
      if (at_symbol("*"))
        ++pos_;
      Expr node;
      node.kind = Expr::Kind::Product;
      node.offset = offset;
      node.children.push_back(std::move(left));
      node.children.push_back(unary());
      left = std::move(node);
    }
    return left;
  }

  Expr unary() {
    if (at_symbol("-")) {
      Expr node;
      node.kind = Expr::Kind::Negate;
      node.offset = next().offset;
      node.children.push_back(unary());
      return node;
    }
    return atom();
  }

  int integer(const char* what) {
    if (peek().kind != Token::Kind::Int)
      fail({what});
    const Token& t = next();
    if (t.text.size() > 6)
      throw ParseError(t.offset, {what}, "integer too large at offset " + std::to_string(t.offset));
    return std::stoi(t.text);
  }

  int marking(const char* what = "marking index") {
    const size_t offset = peek().offset;
    const int i = integer(what);
    if (i < 1 || (n_ && i > *n_)) {
      const std::string range = n_ ? "1.." + std::to_string(*n_) : "1..";
      throw ParseError(offset, {"index in " + range},
                       "at offset " + std::to_string(offset) + ": index " + std::to_string(i) +
                           " out of range " + range);
    }
    return i;
  }

  Rational rational() {
    bool negative = false;
    if (at_symbol("-")) {
      negative = true;
      ++pos_;
    }
    const int p_offset = static_cast<int>(peek().offset);
    if (peek().kind != Token::Kind::Int)
      fail({"rational"});
    Integer p(next().text, 10);
    Integer q = 1;
    if (at_symbol("/")) {
      ++pos_;
      if (peek().kind != Token::Kind::Int)
        fail({"denominator"});
      q = Integer(next().text, 10);
      if (q == 0)
        throw ParseError(static_cast<size_t>(p_offset), {"nonzero denominator"},
                         "zero denominator at offset " + std::to_string(p_offset));
    }
    Rational r(p, q);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  std::vector<Rational> rational_list() {
    std::vector<Rational> out{rational()};
    while (at_symbol(",")) {
      ++pos_;
      out.push_back(rational());
    }
    return out;
  }

  std::vector<int> subset_literal() {
    expect_symbol("{");
    std::vector<int> out{marking()};
    while (at_symbol(",")) {
      ++pos_;
      out.push_back(marking());
    }
    expect_symbol("}");
    return out;
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      Expr e;
      e.kind = Expr::Kind::Number;
      e.offset = t.offset;
      e.number = rational();
      return e;
    }
    if (at_symbol("(")) {
      ++pos_;
      Expr e = expr();
      expect_symbol(")");
      return e;
    }
    if (t.kind != Token::Kind::Ident)
      fail({"number", "'('", "name"});
    const std::string word = t.text;
    Expr e;
    e.offset = t.offset;
    e.name = word;
    ++pos_;
    if (kGenerators.count(word)) {
      e.kind = Expr::Kind::Generator;
      expect_symbol("(");
      if (word == "psi") {
        e.indices.push_back(marking());
      } else if (word == "coinc") {
        e.indices.push_back(marking());
        expect_symbol(",");
        e.indices.push_back(marking());
      } else {
        e.indices = subset_literal();
      }
      expect_symbol(")");
      return e;
    }
    if (kAggregates.count(word)) {
      e.kind = Expr::Kind::Aggregate;
      if (word == "Dr") {
        expect_symbol("(");
        e.indices.push_back(integer("r"));
        expect_symbol(")");
      }
      return e;
    }
    if (kNamed.count(word)) {
      e.kind = Expr::Kind::Named;
      if (word == "K")
        return e;
      expect_symbol("(");
      if (word == "C") {
        e.indices.push_back(marking());
        expect_symbol(",");
      }
      e.weights = rational_list();
      expect_symbol(")");
      return e;
    }
    if (kTransports.count(word)) {
      e.kind = word == "pull" ? Expr::Kind::Pull : word == "push" ? Expr::Kind::Push : Expr::Kind::Chi;
      expect_symbol("[");
      if (e.kind == Expr::Kind::Chi) {
        // Optional "i:" prefix names the replaced marking; default 1.
        if (peek().kind == Token::Kind::Int && tokens_[pos_ + 1].kind == Token::Kind::Symbol &&
            tokens_[pos_ + 1].text == ":") {
          e.indices.push_back(integer("marking index"));
          ++pos_;
        } else {
          e.indices.push_back(1);
        }
      }
      e.weights = rational_list();
      expect_symbol("]");
      expect_symbol("(");
      // Inner expressions live on another space; their n differs for chi*.
      const auto saved = n_;
      n_.reset();
      e.children.push_back(expr());
      n_ = saved;
      expect_symbol(")");
      return e;
    }
    pos_--;
    fail({"psi", "bd", "coinc", "nodal", "Psi", "Dnodal", "Ds", "Dr", "Delta", "kappa", "lambda",
          "A", "B", "C", "Ctot", "K", "Lup", "git", "pull", "push", "chi*"});
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::optional<int> n_;
};

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

bool is_additive(const Expr& e) {
  return e.kind == Expr::Kind::Sum || e.kind == Expr::Kind::Difference;
}

std::string wrap_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

} // namespace

Expr parse_expr(std::string_view text, std::optional<int> n) { return Parser(text, n).parse(); }

std::string print_expr(const Expr& e) {
  switch (e.kind) {
  case Expr::Kind::Number:
    return e.number.get_str();
  case Expr::Kind::Generator:
    if (e.name == "psi")
      return "psi(" + std::to_string(e.indices.at(0)) + ")";
    if (e.name == "coinc")
      return "coinc(" + join_ints(e.indices) + ")";
    return e.name + "({" + join_ints(e.indices) + "})";
  case Expr::Kind::Aggregate:
    return e.name == "Dr" ? "Dr(" + std::to_string(e.indices.at(0)) + ")" : e.name;
  case Expr::Kind::Named:
    if (e.name == "K")
      return "K";
    if (e.name == "C")
      return "C(" + std::to_string(e.indices.at(0)) + "," + join(e.weights) + ")";
    return e.name + "(" + join(e.weights) + ")";
  case Expr::Kind::Sum:
    return print_expr(e.children[0]) + " + " + wrap_if(is_additive(e.children[1]), print_expr(e.children[1]));
  case Expr::Kind::Difference:
    return print_expr(e.children[0]) + " - " + wrap_if(is_additive(e.children[1]), print_expr(e.children[1]));
  case Expr::Kind::Product: {
    const Expr& rhs = e.children[1];
    const bool wrap_rhs = is_additive(rhs) || rhs.kind == Expr::Kind::Negate ||
                          rhs.kind == Expr::Kind::Product ||
                          (rhs.kind == Expr::Kind::Number && rhs.number < 0);
    return wrap_if(is_additive(e.children[0]), print_expr(e.children[0])) + "*" +
           wrap_if(wrap_rhs, print_expr(rhs));
  }
  case Expr::Kind::Negate: {
    const Expr& c = e.children[0];
    return "-" + wrap_if(is_additive(c) || c.kind == Expr::Kind::Negate ||
                             (c.kind == Expr::Kind::Number && c.number < 0),
                         print_expr(c));
  }
  case Expr::Kind::Pull:
    return "pull[" + join(e.weights) + "](" + print_expr(e.children[0]) + ")";
  case Expr::Kind::Push:
    return "push[" + join(e.weights) + "](" + print_expr(e.children[0]) + ")";
  case Expr::Kind::Chi: {
    const std::string prefix = e.indices.at(0) == 1 ? "" : std::to_string(e.indices[0]) + ":";
    return "chi*[" + prefix + join(e.weights) + "](" + print_expr(e.children[0]) + ")";
  }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Value {
  std::optional<Rational> scalar;
  std::optional<DivisorClass> cls;
};

[[noreturn]] void eval_fail(const Expr& e, const std::string& message) {
  throw UsageError("at offset " + std::to_string(e.offset) + ": " + message);
}

void require_markings(const Expr& e, const SpaceTag& space, const std::vector<int>& idx) {
  for (int i : idx)
    if (i < 1 || i > space.n())
      eval_fail(e, "index " + std::to_string(i) + " out of range 1.." + std::to_string(space.n()) +
                       " on " + space.to_string());
}

WeightVector weights_for(const Expr& e, const SpaceTag& space) {
  if (static_cast<int>(e.weights.size()) != space.n())
    eval_fail(e, e.name + " has " + std::to_string(e.weights.size()) + " weights but " +
                     space.to_string() + " has " + std::to_string(space.n()) + " markings");
  return WeightVector(e.weights);
}

Value eval(const Expr& e, const SpaceTag& space, std::vector<std::string>* warnings);

DivisorClass eval_class(const Expr& e, const SpaceTag& space, std::vector<std::string>* warnings) {
  Value v = eval(e, space, warnings);
  if (v.cls)
    return std::move(*v.cls);
  if (*v.scalar == 0)
    return DivisorClass(space);
  eval_fail(e, "expected a divisor class, found the number " + v.scalar->get_str());
}

Value eval_generator(const Expr& e, const SpaceTag& space) {
  require_markings(e, space, e.indices);
  DivisorClass c(space);
  try {
    if (e.name == "psi") {
      c.add(Generator::psi(e.indices[0]), 1);
    } else if (e.name == "coinc") {
      if (e.indices[0] == e.indices[1])
        eval_fail(e, "coinc needs distinct indices");
      if (space.is_git())
        c = git_coincidence_class(space, e.indices[0], e.indices[1]);
      else
        c.add(Generator::coincidence(std::min(e.indices[0], e.indices[1]),
                                     std::max(e.indices[0], e.indices[1])), 1);
    } else {
      const MarkedSubset s = MarkedSubset::from_members(space.n(), e.indices);
      c.add(e.name == "bd" ? Generator::boundary(s) : Generator::nodal(s), 1);
    }
  } catch (const UsageError& err) {
    const std::string what = err.what();
    if (what.rfind("at offset", 0) == 0)
      throw;
    eval_fail(e, what);
  }
  return {std::nullopt, std::move(c)};
}

Value eval_aggregate(const Expr& e, const SpaceTag& space, std::vector<std::string>* warnings) {
  static const std::map<std::string, Aggregate> names = {
      {"Psi", Aggregate::PsiTotal}, {"Dnodal", Aggregate::DeltaNodal}, {"Ds", Aggregate::DeltaS},
      {"Dr", Aggregate::DeltaR},    {"Delta", Aggregate::DeltaTotal},  {"kappa", Aggregate::Kappa},
      {"lambda", Aggregate::Lambda}};
  try {
    const int r = e.indices.empty() ? 0 : e.indices[0];
    return {std::nullopt, expand_aggregate(space, names.at(e.name), r, warnings)};
  } catch (const UsageError& err) {
    eval_fail(e, err.what());
  }
}

Value eval_named(const Expr& e, const SpaceTag& space, std::vector<std::string>* warnings) {
  try {
    if (e.name == "K")
      return {std::nullopt, class_K(space)};
    if (e.name == "Lup") {
      if (!space.is_moduli_bar())
        eval_fail(e, "Lup(w) lives on Mbar(0,n), not " + space.to_string());
      const WeightVector w = weights_for(e, space);
      if (!w.admissible())
        eval_fail(e, "Lup weights " + w.to_string() + " are not admissible");
      return {std::nullopt, class_logcanonical_upstairs(w)};
    }
    if (e.name == "git") {
      if (!space.is_moduli_bar())
        eval_fail(e, "git(x) is the pullback to Mbar(0,n); ambient is " + space.to_string());
      if (static_cast<int>(e.weights.size()) != space.n())
        eval_fail(e, "git(x) needs " + std::to_string(space.n()) + " weights");
      return {std::nullopt, git_polarization_pullback(e.weights)};
    }
    const WeightVector w = weights_for(e, space);
    if (space.is_moduli_bar() && warnings) {
      for (int i = 1; i <= w.n(); ++i)
        for (int j = i + 1; j <= w.n(); ++j)
          if (w[i] + w[j] <= 1) {
            warnings->push_back(e.name + "(" + w.to_string() + "): coincidence terms vanish on " +
                                space.to_string() + "; use pull[w](...) for the pullback");
            i = j = w.n() + 1;
          }
    }
    if (e.name == "A")
      return {std::nullopt, class_A(space, w)};
    if (e.name == "B")
      return {std::nullopt, class_B(space, w)};
    if (e.name == "Ctot")
      return {std::nullopt, class_C_total(space, w)};
    require_markings(e, space, e.indices);
    return {std::nullopt, class_C(space, w, e.indices.at(0))};
  } catch (const UsageError& err) {
    const std::string what = err.what();
    if (what.rfind("at offset", 0) == 0)
      throw;
    eval_fail(e, what);
  }
}

Value eval_transport(const Expr& e, const SpaceTag& space, std::vector<std::string>* warnings) {
  try {
    if (e.kind == Expr::Kind::Pull) {
      const WeightVector w(e.weights);
      if (!space.is_moduli_bar() || space.n() != w.n())
        eval_fail(e, "pull[w] produces a class on Mbar(0," + std::to_string(w.n()) +
                         "); ambient is " + space.to_string());
      const ReductionMap f(w);
      return {std::nullopt, f.pullback(eval_class(e.children[0], f.target(), warnings))};
    }
    if (e.kind == Expr::Kind::Push) {
      const WeightVector w(e.weights);
      const SpaceTag target = SpaceTag::hassett(w);
      if (!(space == target))
        eval_fail(e, "push[w] produces a class on " + target.to_string() + "; ambient is " +
                         space.to_string());
      const ReductionMap f(w);
      return {std::nullopt, f.pushforward(eval_class(e.children[0], f.source(), warnings))};
    }
    if (!space.is_hassett())
      eval_fail(e, "chi* needs a Hassett ambient space, not " + space.to_string());
    const ReplacementData r(space.weights(), e.indices.at(0), e.weights);
    const SpaceTag inner = SpaceTag::hassett(r.target());
    return {std::nullopt, replacement_pullback(r, eval_class(e.children[0], inner, warnings))};
  } catch (const UsageError& err) {
    const std::string what = err.what();
    if (what.rfind("at offset", 0) == 0)
      throw;
    eval_fail(e, what);
  }
}

Value eval(const Expr& e, const SpaceTag& space, std::vector<std::string>* warnings) {
  switch (e.kind) {
  case Expr::Kind::Number:
    return {e.number, std::nullopt};
  case Expr::Kind::Generator:
    return eval_generator(e, space);
  case Expr::Kind::Aggregate:
    return eval_aggregate(e, space, warnings);
  case Expr::Kind::Named:
    return eval_named(e, space, warnings);
  case Expr::Kind::Pull:
  case Expr::Kind::Push:
  case Expr::Kind::Chi:
    return eval_transport(e, space, warnings);
  case Expr::Kind::Negate: {
    Value v = eval(e.children[0], space, warnings);
    if (v.scalar)
      return {Rational(-*v.scalar), std::nullopt};
    return {std::nullopt, -*v.cls};
  }
  case Expr::Kind::Sum:
  case Expr::Kind::Difference: {
    Value a = eval(e.children[0], space, warnings);
    Value b = eval(e.children[1], space, warnings);
    const bool minus = e.kind == Expr::Kind::Difference;
    if (a.scalar && b.scalar)
      return {minus ? Rational(*a.scalar - *b.scalar) : Rational(*a.scalar + *b.scalar),
              std::nullopt};
    // A bare 0 acts as the zero class.
    if (a.scalar && *a.scalar == 0)
      a = {std::nullopt, DivisorClass(space)};
    if (b.scalar && *b.scalar == 0)
      b = {std::nullopt, DivisorClass(space)};
    if (a.scalar || b.scalar)
      eval_fail(e, "cannot add a number to a divisor class");
    return {std::nullopt, minus ? *a.cls - *b.cls : *a.cls + *b.cls};
  }
  case Expr::Kind::Product: {
    Value a = eval(e.children[0], space, warnings);
    Value b = eval(e.children[1], space, warnings);
    if (a.scalar && b.scalar)
      return {Rational(*a.scalar * *b.scalar), std::nullopt};
    if (a.cls && b.cls)
      eval_fail(e, "product of two divisor classes is not a divisor class");
    if (a.scalar)
      return {std::nullopt, *a.scalar * std::move(*b.cls)};
    return {std::nullopt, *b.scalar * std::move(*a.cls)};
  }
  }
  eval_fail(e, "unknown expression");
}

} // namespace

DivisorClass evaluate(const Expr& e, const SpaceTag& ambient, std::vector<std::string>* warnings) {
  return eval_class(e, ambient, warnings);
}

DivisorClass evaluate(std::string_view text, const SpaceTag& ambient,
                      std::vector<std::string>* warnings) {
  return evaluate(parse_expr(text, ambient.n()), ambient, warnings);
}

} // namespace taut
