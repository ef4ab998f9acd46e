#include "amc/convert.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include "amc/error.hpp"

namespace amc {

namespace {

struct CanonicalOrder {
  bool operator()(const StateSet& a, const StateSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Family for (w, C) using a caller-owned stamp buffer for deduplication.
Family familyWith(const Cgf& g, StateId w, Coalition c, std::vector<std::uint32_t>& stamp,
                  std::uint32_t& generation) {
  MoveSplit split = splitMoves(g, w, c);
  std::set<StateSet, CanonicalOrder> family;
  StateSet u;
  for (std::uint32_t base : split.coalition) {
    if (++generation == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      generation = 1;
    }
    u.clear();
    for (std::uint32_t off : split.counter) {
      StateId t = g.outcomeAt(w, base + off);
      if (stamp[t] != generation) {
        stamp[t] = generation;
        u.push_back(t);
      }
    }
    std::sort(u.begin(), u.end());
    family.insert(u);
  }
  return {family.begin(), family.end()};
}

std::vector<Coalition> allCoalitions(int agents) {
  std::vector<Coalition> out;
  std::uint64_t count = std::uint64_t{1} << agents;
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.push_back(Coalition::fromMask(m));
  return out;
}

}  // namespace

Family inducedFamily(const Cgf& g, StateId w, Coalition c) {
  std::vector<std::uint32_t> stamp(g.stateCount(), 0);
  std::uint32_t generation = 0;
  return familyWith(g, w, c, stamp, generation);
}

Ef inducedEffectivity(const Cgf& g, const std::optional<std::vector<Coalition>>& coalitions, unsigned threads) {
  std::vector<Coalition> targets;
  if (coalitions) {
    targets = *coalitions;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (Coalition c : targets)
      if (!c.empty() && c.maxAgent() > g.agents)
        throw ValidationError("coalition " + c.toString() + " names an agent beyond " + std::to_string(g.agents));
  } else {
    if (g.agents > 30) throw ValidationError("too many agents to convert all coalitions");
    targets = allCoalitions(g.agents);
  }

  const std::size_t n = g.stateCount();
  std::vector<std::vector<Family>> perState(n);
  auto work = [&](std::size_t from, std::size_t to) {
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t generation = 0;
    for (std::size_t w = from; w < to; ++w) {
      perState[w].reserve(targets.size());
      for (Coalition c : targets)
        perState[w].push_back(familyWith(g, static_cast<StateId>(w), c, stamp, generation));
    }
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t from = 0; from < n; from += chunk)
      pool.emplace_back(work, from, std::min(n, from + chunk));
  }

  Ef e;
  e.agents = g.agents;
  for (const auto& name : g.states) e.addState(name);
  e.valuation = g.valuation;
  e.initial = g.initial;
  for (StateId w = 0; w < n; ++w)
    for (std::size_t i = 0; i < targets.size(); ++i) e.setFamily(w, targets[i], std::move(perState[w][i]));
  return e;
}

Family minimalSets(Family f) {
  std::sort(f.begin(), f.end(), CanonicalOrder{});
  f.erase(std::unique(f.begin(), f.end()), f.end());
  Family kept;
  for (auto& u : f) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const StateSet& k) {
      return std::includes(u.begin(), u.end(), k.begin(), k.end());
    });
    if (!dominated) kept.push_back(std::move(u));
  }
  return kept;
}

Ef minimize(Ef e) {
  for (StateId w = 0; w < e.stateCount(); ++w) {
    std::vector<std::pair<Coalition, Family>> updated;
    for (const auto& [c, fam] : e.families(w)) updated.emplace_back(c, minimalSets(fam));
    for (auto& [c, fam] : updated) e.setFamily(w, c, std::move(fam));
  }
  return e;
}

Conversion convert(const Cgf& g, const ConvertOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Ef e = inducedEffectivity(g, options.coalitions, options.threads);
  if (options.minimize) e = minimize(std::move(e));
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(e), elapsed.count()};
}

}  // namespace amc
