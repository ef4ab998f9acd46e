#include <limits>
#include <stdexcept>

#include "amc/game.hpp"

namespace amc {

namespace {

// Forall's winning positions once Exists is committed to `choice`
// (choice[v] = successor index for each Exists position that can move).
std::vector<bool> forallWinsAgainst(const ParityGame& g, const std::vector<std::size_t>& choice) {
  const std::size_t n = g.size();
  auto successors = [&](PositionId v) -> std::vector<PositionId> {
    const GamePosition& p = g.at(v);
    if (p.owner == Player::Exists && !p.successors.empty()) return {p.successors[choice[v]]};
    return p.successors;
  };

  // reach[u][v]: v reachable from u in >= 1 step using only positions of priority <= bound.
  auto reachableWithin = [&](PositionId from, int bound) {
    std::vector<bool> seen(n, false);
    std::vector<PositionId> stack{from};
    while (!stack.empty()) {
      PositionId u = stack.back();
      stack.pop_back();
      for (PositionId t : successors(u)) {
        if (g.at(t).priority > bound || seen[t]) continue;
        seen[t] = true;
        stack.push_back(t);
      }
    }
    return seen;
  };

  // A position is a goal for Forall if Exists is stuck there, or if it has
  // odd priority p and lies on a cycle through priorities <= p.
  std::vector<bool> goal(n, false);
  for (PositionId v = 0; v < n; ++v) {
    const GamePosition& p = g.at(v);
    if (p.owner == Player::Exists && p.successors.empty()) {
      goal[v] = true;
    } else if (p.priority % 2 == 1) {
      goal[v] = reachableWithin(v, p.priority)[v];
    }
  }

  std::vector<bool> wins(n, false);
  for (PositionId v = 0; v < n; ++v) {
    if (goal[v]) {
      wins[v] = true;
      continue;
    }
    std::vector<bool> seen = reachableWithin(v, std::numeric_limits<int>::max());
    for (PositionId u = 0; u < n && !wins[v]; ++u)
      if (seen[u] && goal[u]) wins[v] = true;
  }
  return wins;
}

}  // namespace

Solution bruteForceSolve(const ParityGame& game) {
  const std::size_t n = game.size();
  if (n > kBruteForceLimit)
    throw std::invalid_argument("bruteForceSolve: game has " + std::to_string(n) + " positions, limit is " +
                                std::to_string(kBruteForceLimit));

  std::vector<PositionId> choosers;
  for (PositionId v = 0; v < n; ++v)
    if (game.at(v).owner == Player::Exists && game.at(v).successors.size() > 1) choosers.push_back(v);

  std::vector<bool> existsWins(n, false);
  std::vector<std::size_t> choice(n, 0);
  for (;;) {
    std::vector<bool> forall = forallWinsAgainst(game, choice);
    for (PositionId v = 0; v < n; ++v)
      if (!forall[v]) existsWins[v] = true;

    // Next strategy in odometer order.
    std::size_t i = 0;
    for (; i < choosers.size(); ++i) {
      PositionId v = choosers[i];
      if (++choice[v] < game.at(v).successors.size()) break;
      choice[v] = 0;
    }
    if (i == choosers.size()) break;
  }

  Solution sol;
  sol.winner.resize(n);
  for (PositionId v = 0; v < n; ++v) sol.winner[v] = existsWins[v] ? Player::Exists : Player::Forall;
  return sol;
}

}  // namespace amc
