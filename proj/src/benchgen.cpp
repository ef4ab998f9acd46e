#include "amc/benchgen.hpp"

#include <algorithm>
#include <random>

#include "amc/error.hpp"

namespace amc {

std::vector<std::string> atomNames(int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

namespace {

void fillOutcomes(Cgf& g, StateId w, auto&& target) {
  for (std::size_t i = 0; i < g.grandMoveCount(w); ++i) {
    GrandMove s = g.grandMoveAt(w, i);
    g.setOutcome(w, s, target(s));
  }
}

FormulaPtr conjunction(std::vector<FormulaPtr> parts) {
  if (parts.empty()) return Formula::top();
  FormulaPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::conj(out, parts[i]);
  return out;
}

Coalition prefix(int i) { return Coalition::grand(i); }

}  // namespace

Cgf randomCgf(int states, int agents, int movesPerAgent, const std::vector<std::string>& atoms,
              std::uint64_t seed) {
  if (states < 1 || agents < 1 || movesPerAgent < 1)
    throw ValidationError("random model needs at least one state, agent and move");
  if (agents > kMaxAgents) throw ValidationError("too many agents");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(states - 1));

  Cgf g;
  g.agents = agents;
  for (int i = 0; i < states; ++i) g.addState("s" + std::to_string(i));
  for (StateId w = 0; w < g.stateCount(); ++w) {
    g.setMoves(w, std::vector<int>(static_cast<std::size_t>(agents), movesPerAgent));
    fillOutcomes(g, w, [&](const GrandMove&) { return pick(rng); });
  }
  std::bernoulli_distribution coin(0.5);
  for (const auto& a : atoms) {
    StateSet holds;
    for (StateId w = 0; w < g.stateCount(); ++w)
      if (coin(rng)) holds.push_back(w);
    g.valuation.set(a, std::move(holds));
  }
  g.initial = 0;
  return g;
}

namespace {

// Grows a formula with an exact connective budget. `required` lists bound
// variables that must occur in the subtree; a subtree with c connectives
// has at most c + 1 leaves, which bounds how many it can absorb.
class FormulaGrower {
 public:
  FormulaGrower(const RandomFormulaOptions& options, std::uint64_t seed) : options_(options), rng_(seed) {
    if (options_.agents < 0 || options_.agents > kMaxAgents) throw ValidationError("agent count out of range");
  }

  FormulaPtr grow(int connectives, std::vector<std::string> required, int depth) {
    const int r = static_cast<int>(required.size());
    if (connectives == 0) {
      if (r == 1) return Formula::var(required.front());
      return leaf();
    }

    bool binaryOnly = r == connectives + 1;
    bool canBind = !binaryOnly && r + 1 <= connectives && depth < options_.maxFixpointDepth;
    int roll = uniform(0, 99);
    if (binaryOnly || roll < 40) return binary(connectives, std::move(required), depth);
    if (!canBind || roll < 75) {
      Coalition c = coalition();
      FormulaPtr arg = grow(connectives - 1, std::move(required), depth);
      return coin() ? Formula::enforce(c, arg) : Formula::allows(c, arg);
    }
    std::string x = "X" + std::to_string(nextVar_++);
    scope_.push_back(x);
    required.push_back(x);
    FormulaPtr body = grow(connectives - 1, std::move(required), depth + 1);
    scope_.pop_back();
    return coin() ? Formula::mu(x, body) : Formula::nu(x, body);
  }

 private:
  FormulaPtr binary(int connectives, std::vector<std::string> required, int depth) {
    const int budget = connectives - 1;
    std::shuffle(required.begin(), required.end(), rng_);
    const int r = static_cast<int>(required.size());
    // Left gets `a` connectives and the first `ra` requirements.
    int a = 0;
    int ra = 0;
    for (;;) {
      a = uniform(0, budget);
      int lo = std::max(0, r - (budget - a + 1));
      int hi = std::min(r, a + 1);
      if (lo > hi) continue;
      ra = uniform(lo, hi);
      break;
    }
    std::vector<std::string> left(required.begin(), required.begin() + ra);
    std::vector<std::string> right(required.begin() + ra, required.end());
    FormulaPtr l = grow(a, std::move(left), depth);
    FormulaPtr rr = grow(budget - a, std::move(right), depth);
    return coin() ? Formula::conj(l, rr) : Formula::disj(l, rr);
  }

  FormulaPtr leaf() {
    int roll = uniform(0, 99);
    if (!scope_.empty() && roll < 25) return Formula::var(scope_[static_cast<std::size_t>(uniform(0, static_cast<int>(scope_.size()) - 1))]);
    if (roll < 30) return coin() ? Formula::top() : Formula::bot();
    if (options_.atoms.empty()) return Formula::top();
    const std::string& p = options_.atoms[static_cast<std::size_t>(uniform(0, static_cast<int>(options_.atoms.size()) - 1))];
    return coin() ? Formula::atom(p) : Formula::negAtom(p);
  }

  Coalition coalition() {
    if (options_.agents == 0) return {};
    std::uniform_int_distribution<std::uint64_t> mask(0, Coalition::grand(options_.agents).mask());
    return Coalition::fromMask(mask(rng_));
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  const RandomFormulaOptions& options_;
  std::mt19937_64 rng_;
  std::vector<std::string> scope_;
  int nextVar_ = 0;
};

}  // namespace

FormulaPtr randomFormula(int connectives, const RandomFormulaOptions& options, std::uint64_t seed) {
  if (connectives < 0) throw ValidationError("connective count must be nonnegative");
  return FormulaGrower(options, seed).grow(connectives, {}, 0);
}

// ---------------------------------------------------------------------------
// Castle game

namespace {

struct Castle {
  bool ready;
  int hp;
};

}  // namespace

Benchmark castleGame(int castles, int hp) {
  if (castles < 2) throw ValidationError("castle game needs at least 2 castles");
  if (hp < 1) throw ValidationError("castle game needs at least 1 health point");
  if (castles > 8) throw ValidationError("castle game supports at most 8 castles");
  const int n = castles;
  const int radix = 2 * (hp + 1);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(radix);

  // Castle a's digit: ready * (hp+1) + health, castle 1 most significant.
  auto decode = [&](std::size_t index) {
    std::vector<Castle> cs(static_cast<std::size_t>(n));
    for (int a = n - 1; a >= 0; --a) {
      int digit = static_cast<int>(index % static_cast<std::size_t>(radix));
      index /= static_cast<std::size_t>(radix);
      cs[static_cast<std::size_t>(a)] = {digit / (hp + 1) == 1, digit % (hp + 1)};
    }
    return cs;
  };
  auto encode = [&](const std::vector<Castle>& cs) {
    std::size_t index = 0;
    for (const Castle& c : cs) index = index * static_cast<std::size_t>(radix) + (c.ready ? hp + 1 : 0) + c.hp;
    return static_cast<StateId>(index);
  };

  Benchmark b;
  Cgf& g = b.model;
  g.agents = n;
  for (std::size_t i = 0; i < total; ++i) {
    std::string name;
    for (const Castle& c : decode(i)) name += (name.empty() ? "" : "-") + std::string(c.ready ? "t" : "f") + std::to_string(c.hp);
    g.addState(std::move(name));
  }

  std::vector<StateSet> lost(static_cast<std::size_t>(n));
  for (StateId w = 0; w < total; ++w) {
    std::vector<Castle> cs = decode(w);
    std::vector<int> counts;
    for (int a = 0; a < n; ++a) {
      const Castle& c = cs[static_cast<std::size_t>(a)];
      counts.push_back(c.hp > 0 && c.ready ? n : 1);
      if (c.hp == 0) lost[static_cast<std::size_t>(a)].push_back(w);
    }
    g.setMoves(w, counts);
    fillOutcomes(g, w, [&](const GrandMove& s) {
      std::vector<int> attacks(static_cast<std::size_t>(n), 0);
      std::vector<bool> blocks(static_cast<std::size_t>(n), false);
      std::vector<bool> attacked(static_cast<std::size_t>(n), false);
      for (int a = 0; a < n; ++a) {
        const Castle& c = cs[static_cast<std::size_t>(a)];
        int m = s[static_cast<std::size_t>(a)];
        if (c.hp > 0 && c.ready && m >= 2) {
          // attack the (m-1)-th other castle in ascending order
          int target = m - 2;
          if (target >= a) ++target;
          ++attacks[static_cast<std::size_t>(target)];
          attacked[static_cast<std::size_t>(a)] = true;
        } else {
          blocks[static_cast<std::size_t>(a)] = true;  // defend, rest or dead
        }
      }
      std::vector<Castle> next = cs;
      for (int a = 0; a < n; ++a) {
        Castle& c = next[static_cast<std::size_t>(a)];
        int damage = std::max(0, attacks[static_cast<std::size_t>(a)] - (blocks[static_cast<std::size_t>(a)] ? 1 : 0));
        c.hp = std::max(0, c.hp - damage);
        c.ready = !attacked[static_cast<std::size_t>(a)];
      }
      return encode(next);
    });
  }
  for (int a = 0; a < n; ++a) g.valuation.set("lost" + std::to_string(a + 1), lost[static_cast<std::size_t>(a)]);
  g.initial = encode(std::vector<Castle>(static_cast<std::size_t>(n), Castle{true, hp}));

  auto lostAtom = [](int a) { return "lost" + std::to_string(a); };
  for (int a = 1; a <= n; ++a) {
    b.formulas.push_back({"survive-" + std::to_string(a),
                          Formula::nu("X", Formula::conj(Formula::negAtom(lostAtom(a)),
                                                         Formula::enforce(Coalition{a}, Formula::var("X"))))});
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<FormulaPtr> goal;
    for (int a = 1; a <= i; ++a) goal.push_back(Formula::negAtom(lostAtom(a)));
    for (int a = i + 1; a <= n; ++a) goal.push_back(Formula::atom(lostAtom(a)));
    b.formulas.push_back({"win-" + std::to_string(i),
                          Formula::mu("X", Formula::disj(conjunction(std::move(goal)),
                                                         Formula::enforce(prefix(i), Formula::var("X"))))});
  }
  return b;
}

// ---------------------------------------------------------------------------
// Modulo game

Benchmark moduloGame(int agents, int moves, int base) {
  if (agents < 1 || agents > kMaxAgents) throw ValidationError("modulo game agent count out of range");
  if (moves < 1) throw ValidationError("modulo game needs at least one move");
  if (base < 2) throw ValidationError("modulo game base must be at least 2");

  Benchmark b;
  Cgf& g = b.model;
  g.agents = agents;
  for (int i = 0; i < base; ++i) g.addState("s" + std::to_string(i));
  for (StateId w = 0; w < g.stateCount(); ++w) {
    g.setMoves(w, std::vector<int>(static_cast<std::size_t>(agents), moves));
    fillOutcomes(g, w, [&](const GrandMove& s) {
      long sum = w;
      for (int m : s) sum += m;
      return static_cast<StateId>(sum % base);
    });
  }
  std::vector<std::string> atoms = atomNames(base);
  for (int i = 0; i < base; ++i) g.valuation.set(atoms[static_cast<std::size_t>(i)], {static_cast<StateId>(i)});
  g.initial = 0;

  for (int i = 1; i <= agents; ++i) {
    Coalition c = prefix(i);
    std::vector<FormulaPtr> reach;
    for (int j = 0; j < base; ++j) {
      std::string x = "X" + std::to_string(j);
      reach.push_back(Formula::mu(x, Formula::disj(Formula::atom(atoms[static_cast<std::size_t>(j)]),
                                                   Formula::enforce(c, Formula::var(x)))));
    }
    b.formulas.push_back({"phi1-" + std::to_string(i), conjunction(std::move(reach))});
  }
  for (int i = 1; i <= agents; ++i) {
    Coalition c = prefix(i);
    auto visit = [&](int j) {
      return Formula::disj(Formula::atom(atoms[static_cast<std::size_t>(j)]), Formula::enforce(c, Formula::var("Y")));
    };
    FormulaPtr body = Formula::conj(Formula::conj(Formula::var("X"), visit(0)), visit(base / 2));
    b.formulas.push_back({"phi2-" + std::to_string(i), Formula::nu("X", Formula::mu("Y", body))});
  }
  return b;
}

}  // namespace amc
