#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amc/closure.hpp"
#include "amc/deadline.hpp"
#include "amc/model.hpp"

namespace amc {

enum class Player : std::uint8_t { Exists = 0, Forall = 1 };

inline constexpr Player opponent(Player p) {
  return p == Player::Exists ? Player::Forall : Player::Exists;
}
const char* playerName(Player p);

using PositionId = std::uint32_t;

struct GamePosition {
  Player owner = Player::Exists;
  int priority = 0;
  std::vector<PositionId> successors;
};

/// Explicit parity game. A player who cannot move loses; an infinite play is
/// won by Exists iff the largest priority seen infinitely often is even.
class ParityGame {
 public:
  PositionId add(Player owner, int priority, std::string label = {});
  void addEdge(PositionId from, PositionId to) { positions_[from].successors.push_back(to); }

  std::size_t size() const { return positions_.size(); }
  const GamePosition& at(PositionId v) const { return positions_[v]; }
  GamePosition& at(PositionId v) { return positions_[v]; }
  int maxPriority() const;

  /// Empty unless labels were requested at construction time.
  const std::string& label(PositionId v) const;
  bool hasLabels() const { return !labels_.empty(); }

 private:
  std::vector<GamePosition> positions_;
  std::vector<std::string> labels_;
};

struct Solution {
  std::vector<Player> winner;
  /// For positions owned by their winner and having a successor: a
  /// successor inside the winning region. Empty if not computed.
  std::vector<std::optional<PositionId>> strategy;
};

/// Recursive attractor decomposition (Zielonka).
Solution zielonkaSolve(const ParityGame& game, const Deadline& deadline = {});

inline constexpr std::size_t kBruteForceLimit = 12;

/// Reference solver: enumerates every positional Exists strategy and decides
/// the remaining one-player game by cycle analysis. Throws
/// std::invalid_argument above kBruteForceLimit positions.
Solution bruteForceSolve(const ParityGame& game);

struct GameBuildOptions {
  bool labels = false;
  Deadline deadline;
};

/// A model-checking game built reachably from the queried states.
struct ModelCheckingGame {
  ParityGame game;
  /// Position (w, root) for each queried state, in query order.
  std::vector<PositionId> roots;
  /// Ceiling on the position count of the full product game:
  /// |W|*|cl|*(|Pi|+1) for CGFs, |W|*|cl|*(2^|W|+1) for EFs (saturating).
  double positionBound = 0;
};

ModelCheckingGame buildGameCgf(const Cgf& g, const ClosureGraph& cl, std::span<const StateId> states,
                               const GameBuildOptions& options = {});
/// Throws CheckError when a reached modality's coalition is missing.
ModelCheckingGame buildGameEf(const Ef& e, const ClosureGraph& cl, std::span<const StateId> states,
                              const GameBuildOptions& options = {});
ModelCheckingGame buildGame(const Model& m, const ClosureGraph& cl, std::span<const StateId> states,
                            const GameBuildOptions& options = {});

/// Whether Exists wins (w, f) in the model-checking game for m's semantics.
bool checkViaGame(const Model& m, const Formula& f, StateId w);
/// Verdict for every state, from one game rooted at all of them.
std::vector<bool> checkAllViaGame(const Model& m, const ClosureGraph& cl, const Deadline& deadline = {});

/// PGSolver text. Positions without successors are written as self-loops
/// that their owner loses (priority 1 for Exists, 0 for Forall).
std::string exportPgsolver(const ParityGame& game);
/// Reads PGSolver text (`parity N;` header optional, `start` ignored).
/// Throws ParseError.
ParityGame parsePgsolver(std::string_view text);

}  // namespace amc
