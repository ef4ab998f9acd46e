#include <algorithm>
#include <cmath>
#include <limits>

#include "amc/error.hpp"
#include "amc/game.hpp"

namespace amc {

const char* playerName(Player p) { return p == Player::Exists ? "Exists" : "Forall"; }

PositionId ParityGame::add(Player owner, int priority, std::string label) {
  positions_.push_back({owner, priority, {}});
  if (!label.empty() || !labels_.empty()) {
    labels_.resize(positions_.size() - 1);
    labels_.push_back(std::move(label));
  }
  return static_cast<PositionId>(positions_.size() - 1);
}

int ParityGame::maxPriority() const {
  int m = 0;
  for (const auto& p : positions_) m = std::max(m, p.priority);
  return m;
}

const std::string& ParityGame::label(PositionId v) const {
  static const std::string kEmpty;
  return v < labels_.size() ? labels_[v] : kEmpty;
}

namespace {

constexpr PositionId kUnset = std::numeric_limits<PositionId>::max();

// Shared traversal for both semantics. `Modal` expands a modal position into
// its intermediate positions.
template <typename Frame>
class GameBuilder {
 public:
  GameBuilder(const Frame& frame, const ClosureGraph& cl, const GameBuildOptions& options)
      : frame_(frame), cl_(cl), options_(options),
        index_(frame.stateCount() * cl.size(), kUnset), atomHolds_(cl.size()) {
    for (NodeId n = 0; n < cl.size(); ++n) {
      const ClosureNode& c = cl.node(n);
      if (c.kind == FormulaKind::Atom || c.kind == FormulaKind::NegAtom) {
        atomHolds_[n].assign(frame.stateCount(), false);
        for (StateId w : frame.valuation.lookup(c.name)) atomHolds_[n][w] = true;
      }
    }
    if (options.labels) {
      nodeLabels_.reserve(cl.size());
      for (NodeId n = 0; n < cl.size(); ++n) nodeLabels_.push_back(cl.label(n));
    }
  }

  template <typename ExpandModal>
  ModelCheckingGame run(std::span<const StateId> states, ExpandModal&& expandModal) {
    ModelCheckingGame out;
    for (StateId w : states) {
      if (w >= frame_.stateCount()) throw CheckError("query state out of range");
      out.roots.push_back(outer(w, cl_.root()));
    }
    while (!pending_.empty()) {
      auto [w, n] = pending_.back();
      pending_.pop_back();
      if ((++expanded_ & 1023) == 0) options_.deadline.check();
      expand(w, n, expandModal);
    }
    out.game = std::move(game_);
    return out;
  }

  PositionId outer(StateId w, NodeId n) {
    PositionId& slot = index_[static_cast<std::size_t>(n) * frame_.stateCount() + w];
    if (slot != kUnset) return slot;
    const ClosureNode& c = cl_.node(n);
    Player owner = Player::Exists;
    int priority = 0;
    switch (c.kind) {
      case FormulaKind::Top:
      case FormulaKind::And:
      case FormulaKind::Allows: owner = Player::Forall; break;
      case FormulaKind::NegAtom:
        owner = Player::Forall;
        priority = 1;
        break;
      case FormulaKind::Mu:
      case FormulaKind::Nu: priority = c.priority; break;
      default: break;
    }
    slot = game_.add(owner, priority, options_.labels ? frame_.states[w] + "," + nodeLabels_[n] : std::string());
    pending_.emplace_back(w, n);
    return slot;
  }

  PositionId inner(Player owner, StateId w, NodeId n, const std::string& choice) {
    return game_.add(owner, 0,
                     options_.labels ? frame_.states[w] + "," + nodeLabels_[n] + "," + choice : std::string());
  }

  void connect(PositionId from, std::vector<PositionId>& targets) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (PositionId t : targets) game_.addEdge(from, t);
  }

  void addEdge(PositionId from, PositionId to) { game_.addEdge(from, to); }
  bool labels() const { return options_.labels; }

 private:
  template <typename ExpandModal>
  void expand(StateId w, NodeId n, ExpandModal& expandModal) {
    PositionId self = index_[static_cast<std::size_t>(n) * frame_.stateCount() + w];
    const ClosureNode& c = cl_.node(n);
    switch (c.kind) {
      case FormulaKind::Top:
      case FormulaKind::Bot: break;
      case FormulaKind::Atom:
      case FormulaKind::NegAtom:
        if (atomHolds_[n][w]) game_.addEdge(self, self);
        break;
      case FormulaKind::And:
      case FormulaKind::Or: {
        PositionId l = outer(w, c.left);
        PositionId r = outer(w, c.right);
        game_.addEdge(self, l);
        if (r != l) game_.addEdge(self, r);
        break;
      }
      case FormulaKind::Mu:
      case FormulaKind::Nu: game_.addEdge(self, outer(w, c.left)); break;
      case FormulaKind::Enforce:
      case FormulaKind::Allows: expandModal(*this, self, w, n, c); break;
      case FormulaKind::Var: break;
    }
  }

  const Frame& frame_;
  const ClosureGraph& cl_;
  const GameBuildOptions& options_;
  ParityGame game_;
  std::vector<PositionId> index_;
  std::vector<std::vector<bool>> atomHolds_;
  std::vector<std::string> nodeLabels_;
  std::vector<std::pair<StateId, NodeId>> pending_;
  std::size_t expanded_ = 0;
};

double saturatingProduct(double a, double b) {
  double p = a * b;
  return std::isfinite(p) ? p : std::numeric_limits<double>::infinity();
}

std::string jointMoveLabel(const std::vector<AgentId>& members, const std::vector<int>& moves) {
  std::string s;
  for (std::size_t i = 0; i < members.size(); ++i)
    s += (i ? " " : "") + std::to_string(members[i]) + ":" + std::to_string(moves[i]);
  return "(" + s + ")";
}

}  // namespace

ModelCheckingGame buildGameCgf(const Cgf& g, const ClosureGraph& cl, std::span<const StateId> states,
                               const GameBuildOptions& options) {
  GameBuilder<Cgf> builder(g, cl, options);
  std::vector<PositionId> targets;
  auto expandModal = [&](GameBuilder<Cgf>& b, PositionId self, StateId w, NodeId n, const ClosureNode& c) {
    Player innerOwner = c.kind == FormulaKind::Enforce ? Player::Forall : Player::Exists;
    MoveSplit split = splitMoves(g, w, c.coalition);
    std::vector<JointMove> moves;
    std::vector<AgentId> members;
    if (b.labels()) {
      moves = admissibleJointMoves(g, w, c.coalition);
      members = c.coalition.members();
    }
    for (std::size_t i = 0; i < split.coalition.size(); ++i) {
      PositionId mid = b.inner(innerOwner, w, n, b.labels() ? jointMoveLabel(members, moves[i].moves) : std::string());
      b.addEdge(self, mid);
      targets.clear();
      for (std::uint32_t off : split.counter) targets.push_back(b.outer(g.outcomeAt(w, split.coalition[i] + off), c.left));
      b.connect(mid, targets);
    }
  };
  ModelCheckingGame out = builder.run(states, expandModal);
  double product = static_cast<double>(g.stateCount()) * static_cast<double>(cl.size());
  out.positionBound = saturatingProduct(product, static_cast<double>(g.maxGrandMoveCount()) + 1);
  return out;
}

ModelCheckingGame buildGameEf(const Ef& e, const ClosureGraph& cl, std::span<const StateId> states,
                              const GameBuildOptions& options) {
  GameBuilder<Ef> builder(e, cl, options);
  std::vector<PositionId> targets;
  auto expandModal = [&](GameBuilder<Ef>& b, PositionId self, StateId w, NodeId n, const ClosureNode& c) {
    const Family* family = e.family(w, c.coalition);
    if (!family)
      throw CheckError("effectivity of coalition " + c.coalition.toString() + " at state " + e.states[w] +
                       " is not listed");
    Player innerOwner = c.kind == FormulaKind::Enforce ? Player::Forall : Player::Exists;
    for (const StateSet& u : *family) {
      std::string choice;
      if (b.labels()) {
        for (StateId v : u) choice += (choice.empty() ? "" : " ") + e.states[v];
        choice = "{" + choice + "}";
      }
      PositionId mid = b.inner(innerOwner, w, n, choice);
      b.addEdge(self, mid);
      targets.clear();
      for (StateId v : u) targets.push_back(b.outer(v, c.left));
      b.connect(mid, targets);
    }
  };
  ModelCheckingGame out = builder.run(states, expandModal);
  double product = static_cast<double>(e.stateCount()) * static_cast<double>(cl.size());
  double sets = std::pow(2.0, static_cast<double>(e.stateCount())) + 1;
  out.positionBound = saturatingProduct(product, sets);
  return out;
}

ModelCheckingGame buildGame(const Model& m, const ClosureGraph& cl, std::span<const StateId> states,
                            const GameBuildOptions& options) {
  return m.isCgf() ? buildGameCgf(m.cgf(), cl, states, options) : buildGameEf(m.ef(), cl, states, options);
}

bool checkViaGame(const Model& m, const Formula& f, StateId w) {
  ClosureGraph cl = ClosureGraph::build(f);
  StateId query[] = {w};
  ModelCheckingGame mc = buildGame(m, cl, query);
  return zielonkaSolve(mc.game).winner[mc.roots[0]] == Player::Exists;
}

std::vector<bool> checkAllViaGame(const Model& m, const ClosureGraph& cl, const Deadline& deadline) {
  std::vector<StateId> all(m.base().stateCount());
  for (StateId w = 0; w < all.size(); ++w) all[w] = w;
  GameBuildOptions options;
  options.deadline = deadline;
  ModelCheckingGame mc = buildGame(m, cl, all, options);
  Solution sol = zielonkaSolve(mc.game, deadline);
  std::vector<bool> out(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) out[i] = sol.winner[mc.roots[i]] == Player::Exists;
  return out;
}

}  // namespace amc
