#include <fstream>
#include <sstream>

#include <json.hpp>

#include "amc/error.hpp"
#include "amc/model.hpp"

namespace amc {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw ParseError("model: " + what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string str(const json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

void readStates(const json& root, FrameBase& f) {
  const json& agents = field(root, "agents");
  if (!agents.is_number_integer()) bad("\"agents\" must be an integer");
  f.agents = agents.get<int>();
  if (f.agents < 1 || f.agents > kMaxAgents) bad("\"agents\" must be in 1.." + std::to_string(kMaxAgents));
  const json& states = field(root, "states");
  if (!states.is_array() || states.empty()) bad("\"states\" must be a nonempty array");
}

StateId lookupState(const FrameBase& f, const json& j, const std::string& where) {
  std::string name = str(j, where);
  auto it = std::find(f.states.begin(), f.states.end(), name);
  if (it == f.states.end()) throw ValidationError(where + ": unknown state '" + name + "'");
  return static_cast<StateId>(it - f.states.begin());
}

void readTail(const json& root, FrameBase& f) {
  if (auto it = root.find("valuation"); it != root.end()) {
    if (!it->is_object()) bad("\"valuation\" must be an object");
    for (const auto& [atom, states] : it->items()) {
      if (!states.is_array()) bad("valuation of '" + atom + "' must be an array");
      StateSet set;
      for (const auto& s : states) set.push_back(lookupState(f, s, "valuation of '" + atom + "'"));
      f.valuation.set(atom, std::move(set));
    }
  }
  if (auto it = root.find("initial"); it != root.end()) f.initial = lookupState(f, *it, "initial");
}

GrandMove parseMoveKey(const std::string& key, const std::string& where) {
  GrandMove s;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789 ") != std::string::npos)
      bad(where + ": malformed grand move key '" + key + "'");
    s.push_back(std::stoi(part));
  }
  return s;
}

Cgf readCgf(const json& root) {
  Cgf g;
  readStates(root, g);
  for (const auto& s : field(root, "states")) {
    std::string name = str(s, "state name");
    if (std::find(g.states.begin(), g.states.end(), name) != g.states.end())
      throw ValidationError("duplicate state '" + name + "'");
    g.addState(name);
  }
  const json& moves = field(root, "moves");
  if (!moves.is_object()) bad("\"moves\" must be an object");
  for (StateId w = 0; w < g.stateCount(); ++w) {
    auto it = moves.find(g.states[w]);
    if (it == moves.end()) throw ValidationError("state " + g.states[w] + ": missing move counts");
    if (!it->is_array()) bad("moves of " + g.states[w] + " must be an array");
    std::vector<int> counts;
    for (const auto& m : *it) {
      if (!m.is_number_integer()) bad("move counts must be integers");
      counts.push_back(m.get<int>());
    }
    g.setMoves(w, std::move(counts));
  }
  for (const auto& [name, _] : moves.items()) lookupState(g, json(name), "moves");

  const json& transitions = field(root, "transitions");
  if (!transitions.is_object()) bad("\"transitions\" must be an object");
  for (const auto& [name, table] : transitions.items()) {
    StateId w = lookupState(g, json(name), "transitions");
    if (!table.is_object()) bad("transitions of " + name + " must be an object");
    for (const auto& [key, target] : table.items()) {
      GrandMove s = parseMoveKey(key, "transitions of " + name);
      if (s.size() != static_cast<std::size_t>(g.agents))
        throw ValidationError("state " + name + ": grand move '" + key + "' has wrong arity");
      g.setOutcome(w, s, lookupState(g, target, "transition target"));
    }
  }
  readTail(root, g);
  return g;
}

Ef readEf(const json& root) {
  Ef e;
  readStates(root, e);
  for (const auto& s : field(root, "states")) {
    std::string name = str(s, "state name");
    if (std::find(e.states.begin(), e.states.end(), name) != e.states.end())
      throw ValidationError("duplicate state '" + name + "'");
    e.addState(name);
  }
  const json& eff = field(root, "effectivity");
  if (!eff.is_object()) bad("\"effectivity\" must be an object");
  for (const auto& [name, perCoalition] : eff.items()) {
    StateId w = lookupState(e, json(name), "effectivity");
    if (!perCoalition.is_object()) bad("effectivity of " + name + " must be an object");
    for (const auto& [key, family] : perCoalition.items()) {
      Coalition c = Coalition::parse(key);
      if (!family.is_array()) bad("effectivity family must be an array");
      Family fam;
      for (const auto& u : family) {
        if (!u.is_array()) bad("effectivity set must be an array");
        StateSet set;
        for (const auto& v : u) set.push_back(lookupState(e, v, "effectivity set"));
        fam.push_back(std::move(set));
      }
      e.setFamily(w, c, std::move(fam));
    }
  }
  readTail(root, e);
  return e;
}

void raiseIfInvalid(const std::vector<std::string>& errors) {
  if (errors.empty()) return;
  std::string msg = errors.front();
  for (std::size_t i = 1; i < errors.size(); ++i) msg += "; " + errors[i];
  throw ValidationError(msg);
}

ordered_json writeBase(const FrameBase& f, const char* kind) {
  ordered_json j;
  j["kind"] = kind;
  j["agents"] = f.agents;
  j["states"] = f.states;
  if (f.initial) j["initial"] = f.states[*f.initial];
  ordered_json val = ordered_json::object();
  for (const auto& [atom, set] : f.valuation.atoms()) {
    ordered_json names = ordered_json::array();
    for (StateId w : set) names.push_back(f.states[w]);
    val[atom] = std::move(names);
  }
  j["valuation"] = std::move(val);
  return j;
}

}  // namespace

Model parseModel(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what(), e.byte);
  }
  if (!root.is_object()) bad("top level must be an object");
  std::string kind = str(field(root, "kind"), "\"kind\"");
  if (kind == "cgf") {
    Cgf g = readCgf(root);
    raiseIfInvalid(validateCgf(g));
    return Model(std::move(g));
  }
  if (kind == "ef") {
    Ef e = readEf(root);
    raiseIfInvalid(validateEf(e));
    return Model(std::move(e));
  }
  bad("\"kind\" must be \"cgf\" or \"ef\"");
}

Model loadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseModel(buf.str());
}

std::string toJson(const Model& m) {
  ordered_json j;
  if (m.isCgf()) {
    const Cgf& g = m.cgf();
    j = writeBase(g, "cgf");
    ordered_json moves = ordered_json::object();
    ordered_json transitions = ordered_json::object();
    for (StateId w = 0; w < g.stateCount(); ++w) {
      moves[g.states[w]] = g.moveCounts(w);
      ordered_json table = ordered_json::object();
      for (std::size_t i = 0; i < g.grandMoveCount(w); ++i) {
        StateId t = g.outcomeAt(w, i);
        if (t == kNoState) continue;
        GrandMove s = g.grandMoveAt(w, i);
        std::string key;
        for (std::size_t k = 0; k < s.size(); ++k) key += (k ? "," : "") + std::to_string(s[k]);
        table[key] = g.states[t];
      }
      transitions[g.states[w]] = std::move(table);
    }
    j["moves"] = std::move(moves);
    j["transitions"] = std::move(transitions);
  } else {
    const Ef& e = m.ef();
    j = writeBase(e, "ef");
    ordered_json eff = ordered_json::object();
    for (StateId w = 0; w < e.stateCount(); ++w) {
      ordered_json perCoalition = ordered_json::object();
      for (const auto& [c, fam] : e.families(w)) {
        ordered_json sets = ordered_json::array();
        for (const auto& u : fam) {
          ordered_json names = ordered_json::array();
          for (StateId v : u) names.push_back(e.states[v]);
          sets.push_back(std::move(names));
        }
        perCoalition[c.toString()] = std::move(sets);
      }
      eff[e.states[w]] = std::move(perCoalition);
    }
    j["effectivity"] = std::move(eff);
  }
  return j.dump(1) + "\n";
}

void saveModel(const Model& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  out << toJson(m);
}

}  // namespace amc
