#include "amc/model.hpp"

#include <algorithm>

#include "amc/error.hpp"

namespace amc {

const StateSet& Valuation::lookup(std::string_view atom) const {
  static const StateSet kEmpty;
  auto it = atoms_.find(atom);
  return it == atoms_.end() ? kEmpty : it->second;
}

void Valuation::set(std::string atom, StateSet states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  atoms_[std::move(atom)] = std::move(states);
}

StateId FrameBase::stateIndex(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ValidationError("unknown state '" + std::string(name) + "'");
  return static_cast<StateId>(it - states.begin());
}

const FrameBase& Model::base() const {
  return std::visit([](const auto& f) -> const FrameBase& { return f; }, frame_);
}

// ---------------------------------------------------------------------------
// Cgf

StateId Cgf::addState(std::string name) {
  states.push_back(std::move(name));
  moves_.emplace_back(static_cast<std::size_t>(agents), 1);
  table_.emplace_back(1, kNoState);
  return static_cast<StateId>(states.size() - 1);
}

void Cgf::setMoves(StateId w, std::vector<int> counts) {
  if (w >= states.size()) throw ValidationError("setMoves: unknown state");
  if (counts.size() != static_cast<std::size_t>(agents))
    throw ValidationError("state " + states[w] + ": expected " + std::to_string(agents) + " move counts, got " +
                          std::to_string(counts.size()));
  std::size_t total = 1;
  for (int m : counts) total *= static_cast<std::size_t>(std::max(m, 0));
  moves_[w] = std::move(counts);
  table_[w].assign(total, kNoState);
  std::erase_if(stray_, [w](const StrayTransition& t) { return t.state == w; });
}

bool Cgf::admissible(StateId w, const GrandMove& s) const {
  if (w >= states.size() || s.size() != static_cast<std::size_t>(agents)) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] < 1 || s[i] > moves_[w][i]) return false;
  return true;
}

std::size_t Cgf::grandIndex(StateId w, const GrandMove& s) const {
  if (!admissible(w, s)) {
    std::string key;
    for (std::size_t i = 0; i < s.size(); ++i) key += (i ? "," : "") + std::to_string(s[i]);
    throw ValidationError("inadmissible grand move " + key + " at state " +
                          (w < states.size() ? states[w] : std::to_string(w)));
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    index = index * static_cast<std::size_t>(moves_[w][i]) + static_cast<std::size_t>(s[i] - 1);
  return index;
}

GrandMove Cgf::grandMoveAt(StateId w, std::size_t index) const {
  GrandMove s(static_cast<std::size_t>(agents));
  for (std::size_t i = s.size(); i-- > 0;) {
    auto m = static_cast<std::size_t>(moves_[w][i]);
    s[i] = static_cast<int>(index % m) + 1;
    index /= m;
  }
  return s;
}

std::size_t Cgf::stride(StateId w, AgentId a) const {
  std::size_t st = 1;
  for (int i = agents; i > a; --i) st *= static_cast<std::size_t>(moves_[w][i - 1]);
  return st;
}

std::size_t Cgf::maxGrandMoveCount() const {
  std::size_t m = 0;
  for (const auto& t : table_) m = std::max(m, t.size());
  return m;
}

void Cgf::setOutcome(StateId w, const GrandMove& s, StateId target) {
  if (w >= states.size()) throw ValidationError("setOutcome: unknown state");
  if (!admissible(w, s)) {
    stray_.push_back({w, s, target});
    return;
  }
  table_[w][grandIndex(w, s)] = target;
}

// ---------------------------------------------------------------------------
// Ef

StateId Ef::addState(std::string name) {
  states.push_back(std::move(name));
  effectivity_.emplace_back();
  return static_cast<StateId>(states.size() - 1);
}

void Ef::setFamily(StateId w, Coalition c, Family f) {
  if (w >= states.size()) throw ValidationError("setFamily: unknown state");
  for (auto& u : f) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  effectivity_[w][c] = std::move(f);
}

const Family* Ef::family(StateId w, Coalition c) const {
  const auto& m = effectivity_[w];
  auto it = m.find(c);
  return it == m.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Validation and move enumeration

namespace {

std::string moveKey(const GrandMove& s) {
  std::string key;
  for (std::size_t i = 0; i < s.size(); ++i) key += (i ? "," : "") + std::to_string(s[i]);
  return key;
}

void checkValuation(const FrameBase& f, std::vector<std::string>& errors) {
  for (const auto& [atom, set] : f.valuation.atoms())
    for (StateId w : set)
      if (w >= f.states.size()) errors.push_back("valuation of '" + atom + "' names unknown state " + std::to_string(w));
}

void checkCoalition(const Cgf& g, StateId w, Coalition c) {
  if (w >= g.states.size()) throw ValidationError("unknown state " + std::to_string(w));
  if (!c.empty() && c.maxAgent() > g.agents)
    throw ValidationError("coalition " + c.toString() + " names an agent beyond " + std::to_string(g.agents));
}

// Rank contributions of the joint moves of `members`, in lexicographic order.
std::vector<std::uint32_t> offsets(const Cgf& g, StateId w, const std::vector<AgentId>& members) {
  std::vector<std::uint32_t> out{0};
  for (AgentId a : members) {
    auto st = static_cast<std::uint32_t>(g.stride(w, a));
    int m = g.moveCount(w, a);
    std::vector<std::uint32_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(m));
    for (std::uint32_t base : out)
      for (int k = 0; k < m; ++k) next.push_back(base + static_cast<std::uint32_t>(k) * st);
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::string> validateCgf(const Cgf& g) {
  std::vector<std::string> errors;
  if (g.states.empty()) errors.push_back("frame has no states");
  if (g.agents < 1) errors.push_back("frame needs at least one agent");
  if (g.agents > kMaxAgents) errors.push_back("at most " + std::to_string(kMaxAgents) + " agents are supported");
  for (StateId w = 0; w < g.states.size(); ++w) {
    bool movesOk = true;
    for (AgentId a = 1; a <= g.agents; ++a) {
      if (g.moveCount(w, a) < 1) {
        errors.push_back("state " + g.states[w] + ", agent " + std::to_string(a) + ": move count must be >= 1");
        movesOk = false;
      }
    }
    if (!movesOk) continue;
    for (std::size_t i = 0; i < g.grandMoveCount(w); ++i) {
      StateId t = g.outcomeAt(w, i);
      if (t == kNoState)
        errors.push_back("state " + g.states[w] + ": outcome undefined for admissible grand move " +
                         moveKey(g.grandMoveAt(w, i)));
      else if (t >= g.states.size())
        errors.push_back("state " + g.states[w] + ": outcome of " + moveKey(g.grandMoveAt(w, i)) +
                         " is not a state");
    }
  }
  for (const auto& s : g.stray())
    errors.push_back("state " + g.states[s.state] + ": inadmissible grand move " + moveKey(s.move) +
                     " has an outcome");
  if (g.initial && *g.initial >= g.states.size()) errors.push_back("initial state out of range");
  checkValuation(g, errors);
  return errors;
}

std::vector<std::string> validateEf(const Ef& e) {
  std::vector<std::string> errors;
  if (e.states.empty()) errors.push_back("frame has no states");
  if (e.agents < 1) errors.push_back("frame needs at least one agent");
  for (StateId w = 0; w < e.states.size(); ++w) {
    for (const auto& [c, fam] : e.families(w)) {
      std::string where = "state " + e.states[w] + ", coalition " + c.toString();
      if (!c.empty() && c.maxAgent() > e.agents) errors.push_back(where + ": agent beyond " + std::to_string(e.agents));
      if (fam.empty()) errors.push_back(where + ": empty effectivity family");
      for (const auto& u : fam) {
        if (u.empty()) errors.push_back(where + ": empty effectivity set");
        for (StateId v : u)
          if (v >= e.states.size()) errors.push_back(where + ": unknown state " + std::to_string(v));
      }
    }
  }
  if (e.initial && *e.initial >= e.states.size()) errors.push_back("initial state out of range");
  checkValuation(e, errors);
  return errors;
}

std::vector<JointMove> admissibleJointMoves(const Cgf& g, StateId w, Coalition c) {
  checkCoalition(g, w, c);
  std::vector<AgentId> members = c.members();
  std::vector<JointMove> out{JointMove{c, {}}};
  for (AgentId a : members) {
    std::vector<JointMove> next;
    for (const auto& jm : out) {
      for (int k = 1; k <= g.moveCount(w, a); ++k) {
        JointMove ext = jm;
        ext.moves.push_back(k);
        next.push_back(std::move(ext));
      }
    }
    out = std::move(next);
  }
  return out;
}

StateId outcome(const Cgf& g, StateId w, const GrandMove& s) {
  StateId t = g.outcomeAt(w, g.grandIndex(w, s));
  if (t == kNoState) throw ValidationError("outcome undefined for grand move " + moveKey(s));
  return t;
}

MoveSplit splitMoves(const Cgf& g, StateId w, Coalition c) {
  checkCoalition(g, w, c);
  return {offsets(g, w, c.members()), offsets(g, w, c.complement(g.agents).members())};
}

}  // namespace amc
