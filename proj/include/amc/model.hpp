#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "amc/coalition.hpp"

namespace amc {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Sorted, duplicate-free list of states.
using StateSet = std::vector<StateId>;
/// A family of state sets, e.g. e(w, C).
using Family = std::vector<StateSet>;

/// One move per agent, 1-based, in agent order.
using GrandMove = std::vector<int>;

/// A move for every member of `coalition`, listed by ascending agent id.
struct JointMove {
  Coalition coalition;
  std::vector<int> moves;

  friend bool operator==(const JointMove&, const JointMove&) = default;
};

/// Atom valuation. Atoms that are not listed hold nowhere.
class Valuation {
 public:
  const StateSet& lookup(std::string_view atom) const;
  void set(std::string atom, StateSet states);
  const std::map<std::string, StateSet, std::less<>>& atoms() const { return atoms_; }

 private:
  std::map<std::string, StateSet, std::less<>> atoms_;
};

/// Parts shared by both kinds of frame.
struct FrameBase {
  std::vector<std::string> states;
  int agents = 0;
  Valuation valuation;
  std::optional<StateId> initial;

  std::size_t stateCount() const { return states.size(); }
  /// Throws ValidationError for unknown names.
  StateId stateIndex(std::string_view name) const;
};

/// An outcome entry for a grand move that is not admissible at its state.
/// Kept only so that validation can report it.
struct StrayTransition {
  StateId state;
  GrandMove move;
  StateId target;
};

/// Concurrent game frame. Outcomes are stored densely per state, indexed by
/// the mixed-radix rank of the grand move (agent 1 most significant).
class Cgf : public FrameBase {
 public:
  /// Sets m(w, .) and clears the outcome table of `w`.
  void setMoves(StateId w, std::vector<int> counts);
  /// Records f(w, s); inadmissible moves are kept as stray entries.
  void setOutcome(StateId w, const GrandMove& s, StateId target);

  int moveCount(StateId w, AgentId a) const { return moves_[w][a - 1]; }
  const std::vector<int>& moveCounts(StateId w) const { return moves_[w]; }
  std::size_t grandMoveCount(StateId w) const { return table_[w].size(); }
  /// Largest number of grand moves at any state.
  std::size_t maxGrandMoveCount() const;

  bool admissible(StateId w, const GrandMove& s) const;
  /// Rank of an admissible grand move; throws ValidationError otherwise.
  std::size_t grandIndex(StateId w, const GrandMove& s) const;
  GrandMove grandMoveAt(StateId w, std::size_t index) const;
  /// kNoState where undefined.
  StateId outcomeAt(StateId w, std::size_t index) const { return table_[w][index]; }
  /// Rank weight of agent `a`'s move at `w`.
  std::size_t stride(StateId w, AgentId a) const;

  const std::vector<StrayTransition>& stray() const { return stray_; }

  /// Appends an empty state with all move counts 1 and no outcome.
  StateId addState(std::string name);

 private:
  std::vector<std::vector<int>> moves_;
  std::vector<std::vector<StateId>> table_;
  std::vector<StrayTransition> stray_;
};

/// Effectivity frame. Families are stored only for the coalitions present.
class Ef : public FrameBase {
 public:
  StateId addState(std::string name);
  void setFamily(StateId w, Coalition c, Family f);
  /// nullptr if e(w, C) is not listed.
  const Family* family(StateId w, Coalition c) const;
  const std::map<Coalition, Family>& families(StateId w) const { return effectivity_[w]; }

 private:
  std::vector<std::map<Coalition, Family>> effectivity_;
};

/// Either kind of frame together with its valuation.
class Model {
 public:
  Model(Cgf g) : frame_(std::move(g)) {}
  Model(Ef e) : frame_(std::move(e)) {}

  bool isCgf() const { return std::holds_alternative<Cgf>(frame_); }
  bool isEf() const { return std::holds_alternative<Ef>(frame_); }
  const Cgf& cgf() const { return std::get<Cgf>(frame_); }
  const Ef& ef() const { return std::get<Ef>(frame_); }
  const FrameBase& base() const;

 private:
  std::variant<Cgf, Ef> frame_;
};

/// Every violation found, each naming its location. Empty when valid.
std::vector<std::string> validateCgf(const Cgf& g);
std::vector<std::string> validateEf(const Ef& e);

/// Joint moves of C admissible at w, ordered lexicographically by ascending
/// agent id. The empty coalition has exactly one (empty) joint move.
std::vector<JointMove> admissibleJointMoves(const Cgf& g, StateId w, Coalition c);

/// f(w, s); throws ValidationError for inadmissible or undefined moves.
StateId outcome(const Cgf& g, StateId w, const GrandMove& s);

/// Grand-move rank contributions of C's and C-bar's joint moves at w, each
/// in admissibleJointMoves order. The rank of (s_C, s_Cbar) is
/// coalition[i] + counter[j].
struct MoveSplit {
  std::vector<std::uint32_t> coalition;
  std::vector<std::uint32_t> counter;
};
MoveSplit splitMoves(const Cgf& g, StateId w, Coalition c);

// JSON model files; see README for the format.
Model parseModel(std::string_view json);
Model loadModel(const std::string& path);
std::string toJson(const Model& m);
void saveModel(const Model& m, const std::string& path);

}  // namespace amc
