#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amc/formula.hpp"

namespace amc {

using NodeId = std::uint32_t;

/// One member of the closure. Variable occurrences do not appear as nodes:
/// edges that would lead to a variable lead to its binder instead.
struct ClosureNode {
  FormulaKind kind = FormulaKind::Top;
  std::string name;      // atom name, or bound variable for Mu/Nu
  Coalition coalition;   // modalities only
  NodeId left = 0;       // And/Or left, modal argument, binder body
  NodeId right = 0;      // And/Or right
  int priority = 0;      // nonzero only on fixpoint nodes
};

/// Closure of a closed, clean formula as a graph with fixpoint back-edges.
/// Immutable once built.
class ClosureGraph {
 public:
  /// Builds the closure and assigns priorities. Structurally identical
  /// subformulas share one node. Throws ValidationError if `f` is not closed
  /// and clean.
  static ClosureGraph build(const Formula& f);

  std::size_t size() const { return nodes_.size(); }
  const ClosureNode& node(NodeId n) const { return nodes_[n]; }
  const std::vector<ClosureNode>& nodes() const { return nodes_; }
  NodeId root() const { return root_; }
  int maxPriority() const { return maxPriority_; }

  /// Successor of a fixpoint node, i.e. the node of psi[eta X.psi / X].
  /// Throws std::invalid_argument for other nodes.
  NodeId unfold(NodeId n) const;

  /// Distinct coalitions of modal nodes, ascending.
  std::vector<Coalition> coalitions() const;

  /// Human-readable rendering of a node; fixpoint back-edges print as the
  /// bound variable.
  std::string label(NodeId n) const;

 private:
  std::vector<ClosureNode> nodes_;
  NodeId root_ = 0;
  int maxPriority_ = 0;
};

/// Priority rule used by ClosureGraph::build, exposed for testing on raw
/// syntax trees: returns, in pre-order of fixpoint binders, the least
/// priority of the right parity (even for nu, odd for mu) dominating every
/// fixpoint subformula of the body in which the bound variable occurs.
std::vector<int> fixpointPriorities(const Formula& f);

}  // namespace amc
