#include "amc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "amc/error.hpp"

namespace amc {

FormulaPtr Formula::top() {
  static const FormulaPtr t(new Formula(FormulaKind::Top, {}, {}, nullptr, nullptr));
  return t;
}
FormulaPtr Formula::bot() {
  static const FormulaPtr b(new Formula(FormulaKind::Bot, {}, {}, nullptr, nullptr));
  return b;
}
FormulaPtr Formula::atom(std::string name) {
  return FormulaPtr(new Formula(FormulaKind::Atom, std::move(name), {}, nullptr, nullptr));
}
FormulaPtr Formula::negAtom(std::string name) {
  return FormulaPtr(new Formula(FormulaKind::NegAtom, std::move(name), {}, nullptr, nullptr));
}
FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FormulaKind::And, {}, {}, std::move(l), std::move(r)));
}
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FormulaKind::Or, {}, {}, std::move(l), std::move(r)));
}
FormulaPtr Formula::enforce(Coalition c, FormulaPtr arg) {
  return FormulaPtr(new Formula(FormulaKind::Enforce, {}, c, std::move(arg), nullptr));
}
FormulaPtr Formula::allows(Coalition c, FormulaPtr arg) {
  return FormulaPtr(new Formula(FormulaKind::Allows, {}, c, std::move(arg), nullptr));
}
FormulaPtr Formula::var(std::string name) {
  return FormulaPtr(new Formula(FormulaKind::Var, std::move(name), {}, nullptr, nullptr));
}
FormulaPtr Formula::mu(std::string var, FormulaPtr body) {
  return FormulaPtr(new Formula(FormulaKind::Mu, std::move(var), {}, std::move(body), nullptr));
}
FormulaPtr Formula::nu(std::string var, FormulaPtr body) {
  return FormulaPtr(new Formula(FormulaKind::Nu, std::move(var), {}, std::move(body), nullptr));
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  if (left_) n += left_->size();
  if (right_) n += right_->size();
  return n;
}

std::size_t Formula::connectives() const {
  std::size_t n = (left_ || right_) ? 1 : 0;
  if (left_) n += left_->connectives();
  if (right_) n += right_->connectives();
  return n;
}

int Formula::fixpointDepth() const {
  int d = 0;
  if (left_) d = left_->fixpointDepth();
  if (right_) d = std::max(d, right_->fixpointDepth());
  return isFixpoint() ? d + 1 : d;
}

namespace {

void collect(const Formula& f, std::set<Coalition>& coalitions, std::set<std::string>& atoms) {
  if (f.isModal()) coalitions.insert(f.coalition());
  if (f.kind() == FormulaKind::Atom || f.kind() == FormulaKind::NegAtom) atoms.insert(f.name());
  if (f.left()) collect(*f.left(), coalitions, atoms);
  if (f.right()) collect(*f.right(), coalitions, atoms);
}

}  // namespace

std::vector<Coalition> Formula::coalitions() const {
  std::set<Coalition> cs;
  std::set<std::string> as;
  collect(*this, cs, as);
  return {cs.begin(), cs.end()};
}

std::vector<std::string> Formula::atoms() const {
  std::set<Coalition> cs;
  std::set<std::string> as;
  collect(*this, cs, as);
  return {as.begin(), as.end()};
}

bool operator==(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind_ != b.kind_ || a.name_ != b.name_ || a.coalition_ != b.coalition_) return false;
  auto same = [](const FormulaPtr& x, const FormulaPtr& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return same(a.left_, b.left_) && same(a.right_, b.right_);
}

namespace {

void checkScopes(const Formula& f, std::vector<std::string>& scope, std::set<std::string>& bound) {
  switch (f.kind()) {
    case FormulaKind::Var:
      if (std::find(scope.begin(), scope.end(), f.name()) == scope.end())
        throw ValidationError("unbound variable " + f.name());
      return;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      if (!bound.insert(f.name()).second) throw ValidationError("variable " + f.name() + " bound twice");
      scope.push_back(f.name());
      checkScopes(*f.arg(), scope, bound);
      scope.pop_back();
      return;
    default:
      if (f.left()) checkScopes(*f.left(), scope, bound);
      if (f.right()) checkScopes(*f.right(), scope, bound);
  }
}

// ---------------------------------------------------------------------------
// Parser

enum class Tok { End, Ident, Var, Nat, True, False, Mu, Nu, Tilde, Amp, Bar, LBrack, RBrack, Lt, Gt, LBrace, RBrace, Comma, Dot, LParen, RParen };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skipSpace();
    Token t;
    t.pos = i_;
    if (i_ >= s_.size()) return t;
    char c = s_[i_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      t.text = std::string(s_.substr(start, i_ - start));
      if (std::isupper(static_cast<unsigned char>(c))) {
        t.kind = Tok::Var;
      } else if (t.text == "true") {
        t.kind = Tok::True;
      } else if (t.text == "false") {
        t.kind = Tok::False;
      } else if (t.text == "mu") {
        t.kind = Tok::Mu;
      } else if (t.text == "nu") {
        t.kind = Tok::Nu;
      } else {
        t.kind = Tok::Ident;
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      t.kind = Tok::Nat;
      t.text = std::string(s_.substr(start, i_ - start));
      return t;
    }
    ++i_;
    switch (c) {
      case '~': t.kind = Tok::Tilde; break;
      case '&': t.kind = Tok::Amp; break;
      case '|': t.kind = Tok::Bar; break;
      case '[': t.kind = Tok::LBrack; break;
      case ']': t.kind = Tok::RBrack; break;
      case '<': t.kind = Tok::Lt; break;
      case '>': t.kind = Tok::Gt; break;
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case ',': t.kind = Tok::Comma; break;
      case '.': t.kind = Tok::Dot; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", t.pos);
    }
    return t;
  }

 private:
  void skipSpace() {
    for (;;) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      return;
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  FormulaPtr parse() {
    FormulaPtr f = parseOr();
    if (cur_.kind != Tok::End) fail("unexpected input after formula");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.pos); }

  void advance() { cur_ = lex_.next(); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    advance();
  }

  FormulaPtr parseOr() {
    FormulaPtr l = parseAnd();
    while (cur_.kind == Tok::Bar) {
      advance();
      l = Formula::disj(std::move(l), parseAnd());
    }
    return l;
  }

  FormulaPtr parseAnd() {
    FormulaPtr l = parseUnary();
    while (cur_.kind == Tok::Amp) {
      advance();
      l = Formula::conj(std::move(l), parseUnary());
    }
    return l;
  }

  Coalition parseCoalition() {
    expect(Tok::LBrace, "'{'");
    std::vector<AgentId> agents;
    if (cur_.kind != Tok::RBrace) {
      for (;;) {
        if (cur_.kind != Tok::Nat) fail("expected agent number");
        if (cur_.text.size() > 3 || std::stoi(cur_.text) < 1 || std::stoi(cur_.text) > kMaxAgents)
          fail("agent number out of range 1.." + std::to_string(kMaxAgents));
        agents.push_back(std::stoi(cur_.text));
        advance();
        if (cur_.kind != Tok::Comma) break;
        advance();
      }
    }
    expect(Tok::RBrace, "'}'");
    return Coalition(agents);
  }

  FormulaPtr parseUnary() {
    switch (cur_.kind) {
      case Tok::True: advance(); return Formula::top();
      case Tok::False: advance(); return Formula::bot();
      case Tok::Ident: {
        std::string name = cur_.text;
        advance();
        return Formula::atom(std::move(name));
      }
      case Tok::Tilde: {
        advance();
        if (cur_.kind != Tok::Ident) fail("negation applies to atoms only");
        std::string name = cur_.text;
        advance();
        return Formula::negAtom(std::move(name));
      }
      case Tok::Var: {
        std::string name = cur_.text;
        advance();
        return Formula::var(std::move(name));
      }
      case Tok::LParen: {
        advance();
        FormulaPtr f = parseOr();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::LBrack: {
        advance();
        Coalition c = parseCoalition();
        expect(Tok::RBrack, "']'");
        return Formula::enforce(c, parseOr());
      }
      case Tok::Lt: {
        advance();
        Coalition c = parseCoalition();
        expect(Tok::Gt, "'>'");
        return Formula::allows(c, parseOr());
      }
      case Tok::Mu:
      case Tok::Nu: {
        bool least = cur_.kind == Tok::Mu;
        advance();
        if (cur_.kind != Tok::Var) fail("expected fixpoint variable (uppercase identifier)");
        std::string v = cur_.text;
        advance();
        expect(Tok::Dot, "'.'");
        FormulaPtr body = parseOr();
        return least ? Formula::mu(std::move(v), std::move(body)) : Formula::nu(std::move(v), std::move(body));
      }
      case Tok::End: fail("unexpected end of formula");
      default: fail("expected formula");
    }
  }

  Lexer lex_;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Printer

enum class Ctx { Top, OrLeft, OrRight, AndLeft, AndRight };

void printTo(const Formula& f, Ctx ctx, bool tail, std::string& out) {
  bool parens = false;
  switch (f.kind()) {
    case FormulaKind::Or: parens = ctx == Ctx::OrRight || ctx == Ctx::AndLeft || ctx == Ctx::AndRight; break;
    case FormulaKind::And: parens = ctx == Ctx::AndRight; break;
    case FormulaKind::Enforce:
    case FormulaKind::Allows:
    case FormulaKind::Mu:
    case FormulaKind::Nu: parens = ctx != Ctx::Top && !tail; break;
    default: break;
  }
  if (parens) {
    out += '(';
    tail = true;
  }
  switch (f.kind()) {
    case FormulaKind::Top: out += "true"; break;
    case FormulaKind::Bot: out += "false"; break;
    case FormulaKind::Atom:
    case FormulaKind::Var: out += f.name(); break;
    case FormulaKind::NegAtom: out += "~" + f.name(); break;
    case FormulaKind::And:
      printTo(*f.left(), Ctx::AndLeft, false, out);
      out += " & ";
      printTo(*f.right(), Ctx::AndRight, tail, out);
      break;
    case FormulaKind::Or:
      printTo(*f.left(), Ctx::OrLeft, false, out);
      out += " | ";
      printTo(*f.right(), Ctx::OrRight, tail, out);
      break;
    case FormulaKind::Enforce:
      out += "[" + f.coalition().toString() + "] ";
      printTo(*f.arg(), Ctx::Top, tail, out);
      break;
    case FormulaKind::Allows:
      out += "<" + f.coalition().toString() + "> ";
      printTo(*f.arg(), Ctx::Top, tail, out);
      break;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      out += f.kind() == FormulaKind::Mu ? "mu " : "nu ";
      out += f.name() + ". ";
      printTo(*f.arg(), Ctx::Top, tail, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

void checkClosedAndClean(const Formula& f) {
  std::vector<std::string> scope;
  std::set<std::string> bound;
  checkScopes(f, scope, bound);
}

FormulaPtr parseFormula(std::string_view text) {
  FormulaPtr f = Parser(text).parse();
  checkClosedAndClean(*f);
  return f;
}

std::string print(const Formula& f) {
  std::string out;
  printTo(f, Ctx::Top, true, out);
  return out;
}

}  // namespace amc
