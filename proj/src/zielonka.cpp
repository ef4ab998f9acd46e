#include <algorithm>
#include <array>

#include "amc/game.hpp"

namespace amc {

namespace {

constexpr PositionId kNone = static_cast<PositionId>(-1);

// The game plus two sinks so that every position can move: a position whose
// owner is stuck moves to the sink won by the other player.
class Solver {
 public:
  Solver(const ParityGame& game, const Deadline& deadline) : deadline_(deadline) {
    const std::size_t n = game.size();
    const PositionId existsWins = static_cast<PositionId>(n);
    const PositionId forallWins = static_cast<PositionId>(n + 1);
    owner_.resize(n + 2);
    priority_.resize(n + 2);
    succ_.resize(n + 2);
    for (PositionId v = 0; v < n; ++v) {
      const GamePosition& p = game.at(v);
      owner_[v] = p.owner;
      priority_[v] = p.priority;
      succ_[v] = p.successors;
      if (succ_[v].empty()) succ_[v].push_back(p.owner == Player::Exists ? forallWins : existsWins);
    }
    owner_[existsWins] = Player::Exists;
    priority_[existsWins] = 0;
    succ_[existsWins] = {existsWins};
    owner_[forallWins] = Player::Forall;
    priority_[forallWins] = 1;
    succ_[forallWins] = {forallWins};

    pred_.resize(n + 2);
    for (PositionId v = 0; v < n + 2; ++v)
      for (PositionId t : succ_[v]) pred_[t].push_back(v);
    strategy_.assign(n + 2, kNone);
    inSub_.assign(n + 2, 0);
    inAttr_.assign(n + 2, 0);
    mark_.assign(n + 2, 0);
    count_.assign(n + 2, 0);
  }

  Solution run(std::size_t realPositions) {
    std::vector<PositionId> all(owner_.size());
    for (PositionId v = 0; v < all.size(); ++v) all[v] = v;
    Regions r = solve(all);

    Solution sol;
    sol.winner.assign(realPositions, Player::Exists);
    for (PositionId v : r[1])
      if (v < realPositions) sol.winner[v] = Player::Forall;
    sol.strategy.assign(realPositions, std::nullopt);
    for (PositionId v = 0; v < realPositions; ++v)
      if (owner_[v] == sol.winner[v] && strategy_[v] != kNone && strategy_[v] < realPositions)
        sol.strategy[v] = strategy_[v];
    return sol;
  }

 private:
  using Regions = std::array<std::vector<PositionId>, 2>;

  static int index(Player p) { return p == Player::Exists ? 0 : 1; }

  // Positions of `sub` from which `player` can force a visit to `target`.
  // Assigns attractor strategies for the player's own positions.
  std::vector<PositionId> attractor(const std::vector<PositionId>& sub, const std::vector<PositionId>& target,
                                    Player player) {
    for (PositionId v : sub) {
      inSub_[v] = 1;
      count_[v] = 0;
    }
    for (PositionId v : sub)
      for (PositionId t : succ_[v])
        if (inSub_[t]) ++count_[v];

    std::vector<char>& in = inAttr_;
    std::vector<PositionId> out(target.begin(), target.end());
    for (PositionId v : target) in[v] = 1;
    for (std::size_t head = 0; head < out.size(); ++head) {
      PositionId t = out[head];
      for (PositionId v : pred_[t]) {
        if (!inSub_[v] || in[v]) continue;
        if (owner_[v] == player) {
          in[v] = 1;
          strategy_[v] = t;
          out.push_back(v);
        } else if (--count_[v] == 0) {
          in[v] = 1;
          out.push_back(v);
        }
      }
    }
    for (PositionId v : sub) inSub_[v] = 0;
    for (PositionId v : out) in[v] = 0;
    return out;
  }

  static std::vector<PositionId> minus(const std::vector<PositionId>& a, const std::vector<PositionId>& b,
                                       std::vector<char>& mark) {
    for (PositionId v : b) mark[v] = 1;
    std::vector<PositionId> out;
    for (PositionId v : a)
      if (!mark[v]) out.push_back(v);
    for (PositionId v : b) mark[v] = 0;
    return out;
  }

  Regions solve(const std::vector<PositionId>& sub) {
    Regions result;
    if (sub.empty()) return result;
    deadline_.check();

    int top = 0;
    for (PositionId v : sub) top = std::max(top, priority_[v]);
    Player player = top % 2 == 0 ? Player::Exists : Player::Forall;
    Player other = opponent(player);

    std::vector<PositionId> heads;
    for (PositionId v : sub)
      if (priority_[v] == top) heads.push_back(v);
    std::vector<char>& mark = mark_;
    for (PositionId v : sub) mark[v] = 1;
    for (PositionId v : heads) {
      if (owner_[v] != player) continue;
      for (PositionId t : succ_[v]) {
        if (mark[t]) {
          strategy_[v] = t;
          break;
        }
      }
    }
    for (PositionId v : sub) mark[v] = 0;

    std::vector<PositionId> a = attractor(sub, heads, player);
    Regions first = solve(minus(sub, a, mark));
    if (first[index(other)].empty()) {
      result[index(player)] = sub;
      return result;
    }
    std::vector<PositionId> b = attractor(sub, first[index(other)], other);
    Regions second = solve(minus(sub, b, mark));
    result[index(player)] = std::move(second[index(player)]);
    result[index(other)] = std::move(second[index(other)]);
    result[index(other)].insert(result[index(other)].end(), b.begin(), b.end());
    return result;
  }

  const Deadline& deadline_;
  std::vector<Player> owner_;
  std::vector<int> priority_;
  std::vector<std::vector<PositionId>> succ_;
  std::vector<std::vector<PositionId>> pred_;
  std::vector<PositionId> strategy_;
  std::vector<char> inSub_;
  std::vector<char> inAttr_;
  std::vector<char> mark_;
  std::vector<std::size_t> count_;
};

}  // namespace

Solution zielonkaSolve(const ParityGame& game, const Deadline& deadline) {
  return Solver(game, deadline).run(game.size());
}

}  // namespace amc
