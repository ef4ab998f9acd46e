#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amc/formula.hpp"
#include "amc/model.hpp"

namespace amc {

/// A formula together with a short file-name-friendly tag.
struct NamedFormula {
  std::string name;
  FormulaPtr formula;
};

struct Benchmark {
  Cgf model;
  std::vector<NamedFormula> formulas;
};

/// Uniform random CGF: every agent has `movesPerAgent` moves everywhere,
/// outcomes are uniform over states, and each atom holds at each state with
/// probability 1/2. State 0 is marked initial.
Cgf randomCgf(int states, int agents, int movesPerAgent, const std::vector<std::string>& atoms,
              std::uint64_t seed);

struct RandomFormulaOptions {
  int agents = 1;
  std::vector<std::string> atoms{"p"};
  int maxFixpointDepth = 3;
};

/// Random closed, clean formula with exactly `connectives` non-leaf
/// operators. Every binder's variable occurs in its body.
FormulaPtr randomFormula(int connectives, const RandomFormulaOptions& options, std::uint64_t seed);

/// Castle game with n castles starting at h health points. States are
/// n-tuples of (ready, hp); castle a's knight is agent a.
Benchmark castleGame(int castles, int hp);

/// Modulo game: states 0..base-1, every agent picks 1..moves, and the play
/// advances by the sum modulo base.
Benchmark moduloGame(int agents, int moves, int base = 10);

/// Atom names p0 .. p{count-1}.
std::vector<std::string> atomNames(int count);

}  // namespace amc
