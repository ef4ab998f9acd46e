#include "amc/closure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "amc/error.hpp"

namespace amc {

namespace {

// Fixpoint subformulas below some point, each with the variables occurring in it.
struct FixpointInfo {
  int priority;
  std::set<std::string> vars;
};

struct SubtreeInfo {
  std::set<std::string> vars;
  std::vector<FixpointInfo> fixpoints;
};

int leastWithParity(int atLeast, bool even) {
  int p = std::max(atLeast, 0);
  if ((p % 2 == 0) != even) ++p;
  return p;
}

SubtreeInfo analyse(const Formula& f, std::map<std::string, int>& priorities,
                    std::vector<std::string>& preorder) {
  SubtreeInfo info;
  if (f.kind() == FormulaKind::Var) {
    info.vars.insert(f.name());
    return info;
  }
  if (f.isFixpoint()) preorder.push_back(f.name());
  for (const FormulaPtr* child : {&f.left(), &f.right()}) {
    if (!*child) continue;
    SubtreeInfo sub = analyse(**child, priorities, preorder);
    info.vars.insert(sub.vars.begin(), sub.vars.end());
    for (auto& fp : sub.fixpoints) info.fixpoints.push_back(std::move(fp));
  }
  if (f.isFixpoint()) {
    int floor = 0;
    for (const auto& fp : info.fixpoints)
      if (fp.vars.contains(f.name())) floor = std::max(floor, fp.priority);
    int p = leastWithParity(floor, f.kind() == FormulaKind::Nu);
    priorities[f.name()] = p;
    info.fixpoints.push_back({p, info.vars});
  }
  return info;
}

using Key = std::tuple<FormulaKind, std::string, std::uint64_t, NodeId, NodeId>;

class Interner {
 public:
  NodeId intern(const Formula& f) {
    NodeId l = 0, r = 0;
    if (f.left()) l = intern(*f.left());
    if (f.right()) r = intern(*f.right());
    Key key{f.kind(), f.name(), f.coalition().mask(), l, r};
    auto [it, fresh] = ids_.try_emplace(key, static_cast<NodeId>(nodes_.size()));
    if (fresh) {
      ClosureNode n;
      n.kind = f.kind();
      n.name = f.name();
      n.coalition = f.coalition();
      n.left = l;
      n.right = r;
      nodes_.push_back(std::move(n));
    }
    return it->second;
  }

  std::vector<ClosureNode>& nodes() { return nodes_; }

 private:
  std::map<Key, NodeId> ids_;
  std::vector<ClosureNode> nodes_;
};

FormulaPtr toFormula(const ClosureGraph& g, NodeId n, std::vector<NodeId>& open) {
  const ClosureNode& c = g.node(n);
  switch (c.kind) {
    case FormulaKind::Top: return Formula::top();
    case FormulaKind::Bot: return Formula::bot();
    case FormulaKind::Atom: return Formula::atom(c.name);
    case FormulaKind::NegAtom: return Formula::negAtom(c.name);
    case FormulaKind::And: return Formula::conj(toFormula(g, c.left, open), toFormula(g, c.right, open));
    case FormulaKind::Or: return Formula::disj(toFormula(g, c.left, open), toFormula(g, c.right, open));
    case FormulaKind::Enforce: return Formula::enforce(c.coalition, toFormula(g, c.left, open));
    case FormulaKind::Allows: return Formula::allows(c.coalition, toFormula(g, c.left, open));
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      if (std::find(open.begin(), open.end(), n) != open.end()) return Formula::var(c.name);
      open.push_back(n);
      FormulaPtr body = toFormula(g, c.left, open);
      open.pop_back();
      return c.kind == FormulaKind::Mu ? Formula::mu(c.name, body) : Formula::nu(c.name, body);
    }
    case FormulaKind::Var: break;
  }
  throw std::logic_error("variable node in closure graph");
}

}  // namespace

std::vector<int> fixpointPriorities(const Formula& f) {
  std::map<std::string, int> priorities;
  std::vector<std::string> preorder;
  analyse(f, priorities, preorder);
  std::vector<int> out;
  out.reserve(preorder.size());
  for (const auto& v : preorder) out.push_back(priorities.at(v));
  return out;
}

ClosureGraph ClosureGraph::build(const Formula& f) {
  checkClosedAndClean(f);

  std::map<std::string, int> priorities;
  std::vector<std::string> preorder;
  analyse(f, priorities, preorder);

  Interner interner;
  NodeId tmpRoot = interner.intern(f);
  std::vector<ClosureNode>& tmp = interner.nodes();

  std::map<std::string, NodeId> binder;
  for (NodeId i = 0; i < tmp.size(); ++i)
    if (tmp[i].kind == FormulaKind::Mu || tmp[i].kind == FormulaKind::Nu) binder[tmp[i].name] = i;

  // Redirect variable occurrences to their binders, then drop the variable nodes.
  auto resolve = [&](NodeId i) { return tmp[i].kind == FormulaKind::Var ? binder.at(tmp[i].name) : i; };
  std::vector<NodeId> renumber(tmp.size(), 0);
  NodeId next = 0;
  for (NodeId i = 0; i < tmp.size(); ++i)
    if (tmp[i].kind != FormulaKind::Var) renumber[i] = next++;

  ClosureGraph g;
  g.nodes_.reserve(next);
  for (NodeId i = 0; i < tmp.size(); ++i) {
    ClosureNode n = tmp[i];
    if (n.kind == FormulaKind::Var) continue;
    bool hasLeft = n.kind == FormulaKind::And || n.kind == FormulaKind::Or || n.kind == FormulaKind::Enforce ||
                   n.kind == FormulaKind::Allows || n.kind == FormulaKind::Mu || n.kind == FormulaKind::Nu;
    bool hasRight = n.kind == FormulaKind::And || n.kind == FormulaKind::Or;
    n.left = hasLeft ? renumber[resolve(n.left)] : 0;
    n.right = hasRight ? renumber[resolve(n.right)] : 0;
    if (n.kind == FormulaKind::Mu || n.kind == FormulaKind::Nu) {
      n.priority = priorities.at(n.name);
      g.maxPriority_ = std::max(g.maxPriority_, n.priority);
    }
    g.nodes_.push_back(std::move(n));
  }
  g.root_ = renumber[tmpRoot];
  return g;
}

NodeId ClosureGraph::unfold(NodeId n) const {
  const ClosureNode& c = nodes_.at(n);
  if (c.kind != FormulaKind::Mu && c.kind != FormulaKind::Nu)
    throw std::invalid_argument("unfold: node is not a fixpoint");
  return c.left;
}

std::vector<Coalition> ClosureGraph::coalitions() const {
  std::set<Coalition> cs;
  for (const auto& n : nodes_)
    if (n.kind == FormulaKind::Enforce || n.kind == FormulaKind::Allows) cs.insert(n.coalition);
  return {cs.begin(), cs.end()};
}

std::string ClosureGraph::label(NodeId n) const {
  std::vector<NodeId> open;
  return print(*toFormula(*this, n, open));
}

}  // namespace amc
