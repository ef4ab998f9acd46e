#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "amc/coalition.hpp"

namespace amc {

enum class FormulaKind : std::uint8_t {
  Top,
  Bot,
  Atom,
  NegAtom,
  And,
  Or,
  Enforce,  // [C] phi
  Allows,   // <C> phi
  Var,
  Mu,
  Nu,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable AMC syntax tree in negation normal form.
///
/// `name` holds the atom name (Atom, NegAtom) or variable name (Var, Mu, Nu).
/// Binary nodes use `left`/`right`; modalities and binders keep their
/// argument in `left`.
class Formula {
 public:
  static FormulaPtr top();
  static FormulaPtr bot();
  static FormulaPtr atom(std::string name);
  static FormulaPtr negAtom(std::string name);
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr enforce(Coalition c, FormulaPtr arg);
  static FormulaPtr allows(Coalition c, FormulaPtr arg);
  static FormulaPtr var(std::string name);
  static FormulaPtr mu(std::string var, FormulaPtr body);
  static FormulaPtr nu(std::string var, FormulaPtr body);

  FormulaKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Coalition coalition() const { return coalition_; }
  const FormulaPtr& left() const { return left_; }
  const FormulaPtr& right() const { return right_; }
  /// Argument of a modality or body of a binder.
  const FormulaPtr& arg() const { return left_; }

  bool isModal() const { return kind_ == FormulaKind::Enforce || kind_ == FormulaKind::Allows; }
  bool isFixpoint() const { return kind_ == FormulaKind::Mu || kind_ == FormulaKind::Nu; }
  bool isBinary() const { return kind_ == FormulaKind::And || kind_ == FormulaKind::Or; }

  /// Number of AST nodes, variable occurrences included.
  std::size_t size() const;
  /// Number of non-leaf operators (&, |, [C], <C>, mu, nu).
  std::size_t connectives() const;
  /// Maximal nesting depth of fixpoint binders.
  int fixpointDepth() const;
  /// Coalitions of all modalities, ascending, without duplicates.
  std::vector<Coalition> coalitions() const;
  /// Atom names mentioned, ascending, without duplicates.
  std::vector<std::string> atoms() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula(FormulaKind k, std::string name, Coalition c, FormulaPtr l, FormulaPtr r)
      : kind_(k), name_(std::move(name)), coalition_(c), left_(std::move(l)), right_(std::move(r)) {}

  FormulaKind kind_;
  std::string name_;
  Coalition coalition_;
  FormulaPtr left_;
  FormulaPtr right_;
};

/// Parses the concrete syntax:
///
///   phi ::= true | false | ident | ~ident | phi & phi | phi | phi
///         | [C] phi | <C> phi | VAR | mu VAR. phi | nu VAR. phi | (phi)
///   C   ::= { [nat (, nat)*] }
///
/// `&` binds tighter than `|`, both associate to the left, and modalities and
/// binders extend as far to the right as possible. The result is checked to
/// be closed and clean. Throws ParseError or ValidationError.
FormulaPtr parseFormula(std::string_view text);

/// Prints in the syntax accepted by parseFormula; parseFormula(print(f)) == f.
std::string print(const Formula& f);

/// Throws ValidationError unless every variable is bound and no variable is
/// bound twice.
void checkClosedAndClean(const Formula& f);

}  // namespace amc
