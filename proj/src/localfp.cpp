#include "amc/localfp.hpp"

#include <algorithm>
#include <bit>

#include "amc/error.hpp"

namespace amc {

// ---------------------------------------------------------------------------
// EvalSet

EvalSet::EvalSet(std::size_t states, std::size_t nodes)
    : states_(states), nodes_(nodes), stride_((states + 63) / 64), words_(stride_ * nodes, 0) {}

EvalSet EvalSet::full(std::size_t states, std::size_t nodes) {
  EvalSet s(states, nodes);
  for (NodeId n = 0; n < nodes; ++n) {
    auto r = s.row(n);
    std::fill(r.begin(), r.end(), ~std::uint64_t{0});
    if (states % 64 != 0) r.back() = (std::uint64_t{1} << (states % 64)) - 1;
  }
  return s;
}

void EvalSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool EvalSet::subsetOf(const EvalSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

std::size_t EvalSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// ---------------------------------------------------------------------------
// One-step functions

struct OneStep::Impl {
  Impl(const Model& m, const ClosureGraph& cl, const WorkingSet& v)
      : cgf(m.isCgf() ? &m.cgf() : nullptr), ef(m.isEf() ? &m.ef() : nullptr), frame(m.base()), cl(cl) {
    init(v);
  }
  Impl(const FrameBase& f, const Cgf* g, const Ef* e, const ClosureGraph& cl, const WorkingSet& v)
      : cgf(g), ef(e), frame(f), cl(cl) {
    init(v);
  }

  void init(const WorkingSet& v) {
    const std::size_t states = frame.stateCount();
    if (!v.empty() && v.size() != states) throw CheckError("working set size does not match the state count");
    EvalSet scratch(states, 1);
    stride = scratch.wordsPerNode();
    working.assign(stride, 0);
    for (StateId w = 0; w < states; ++w)
      if (v.empty() || v[w]) working[w >> 6] |= std::uint64_t{1} << (w & 63);

    atomRows.resize(cl.size());
    for (NodeId n = 0; n < cl.size(); ++n) {
      const ClosureNode& c = cl.node(n);
      if (c.kind == FormulaKind::Enforce || c.kind == FormulaKind::Allows) modal.push_back(n);
      if (c.kind != FormulaKind::Atom && c.kind != FormulaKind::NegAtom) continue;
      std::vector<std::uint64_t> row(stride, 0);
      for (StateId w : frame.valuation.lookup(c.name))
        if (w < states) row[w >> 6] |= std::uint64_t{1} << (w & 63);
      if (c.kind == FormulaKind::NegAtom)
        for (std::size_t i = 0; i < stride; ++i) row[i] = ~row[i];
      for (std::size_t i = 0; i < stride; ++i) row[i] &= working[i];
      atomRows[n] = std::move(row);
    }

    coalitions = cl.coalitions();
    coalitionIndex.resize(cl.size(), 0);
    for (NodeId n : modal) {
      auto it = std::lower_bound(coalitions.begin(), coalitions.end(), cl.node(n).coalition);
      coalitionIndex[n] = static_cast<std::size_t>(it - coalitions.begin());
    }
    if (cgf) {
      for (Coalition c : coalitions)
        if (!c.empty() && c.maxAgent() > cgf->agents)
          throw CheckError("coalition " + c.toString() + " names an agent beyond " + std::to_string(cgf->agents));
      splits.resize(states * coalitions.size());
      splitReady.assign(states * coalitions.size(), false);
    }
    if (ef) {
      families.assign(states * coalitions.size(), nullptr);
      for (StateId w = 0; w < states; ++w)
        for (std::size_t ci = 0; ci < coalitions.size(); ++ci)
          families[w * coalitions.size() + ci] = ef->family(w, coalitions[ci]);
    }
  }

  void prop(std::span<const EvalSet> xs, EvalSet& out) const {
    const EvalSet& x0 = xs[0];
    for (NodeId n = 0; n < cl.size(); ++n) {
      const ClosureNode& c = cl.node(n);
      auto dst = out.row(n);
      switch (c.kind) {
        case FormulaKind::Top: std::copy(working.begin(), working.end(), dst.begin()); break;
        case FormulaKind::Bot: std::fill(dst.begin(), dst.end(), 0); break;
        case FormulaKind::Atom:
        case FormulaKind::NegAtom: std::copy(atomRows[n].begin(), atomRows[n].end(), dst.begin()); break;
        case FormulaKind::And: {
          auto l = x0.row(c.left);
          auto r = x0.row(c.right);
          for (std::size_t i = 0; i < stride; ++i) dst[i] = l[i] & r[i] & working[i];
          break;
        }
        case FormulaKind::Or: {
          auto l = x0.row(c.left);
          auto r = x0.row(c.right);
          for (std::size_t i = 0; i < stride; ++i) dst[i] = (l[i] | r[i]) & working[i];
          break;
        }
        case FormulaKind::Mu:
        case FormulaKind::Nu: {
          auto src = xs[static_cast<std::size_t>(c.priority)].row(c.left);
          for (std::size_t i = 0; i < stride; ++i) dst[i] = src[i] & working[i];
          break;
        }
        case FormulaKind::Enforce:
        case FormulaKind::Allows:
        case FormulaKind::Var: std::fill(dst.begin(), dst.end(), 0); break;
      }
    }
  }

  bool inWorking(StateId w) const { return (working[w >> 6] >> (w & 63)) & 1U; }

  const MoveSplit& split(StateId w, std::size_t ci) const {
    std::size_t slot = w * coalitions.size() + ci;
    if (!splitReady[slot]) {
      splits[slot] = splitMoves(*cgf, w, coalitions[ci]);
      splitReady[slot] = true;
    }
    return splits[slot];
  }

  void modalCgf(const EvalSet& x0, EvalSet& out) const {
    for (NodeId n : modal) {
      const ClosureNode& c = cl.node(n);
      const bool enforce = c.kind == FormulaKind::Enforce;
      for (StateId w = 0; w < frame.stateCount(); ++w) {
        if (!inWorking(w)) continue;
        const MoveSplit& s = split(w, coalitionIndex[n]);
        // [C]: some coalition move all of whose completions land in psi.
        // <C>: every coalition move has a completion landing in psi.
        bool holds = !enforce;
        for (std::uint32_t base : s.coalition) {
          bool forced = enforce;
          for (std::uint32_t off : s.counter) {
            bool hit = x0.contains(cgf->outcomeAt(w, base + off), c.left);
            if (enforce ? !hit : hit) {
              forced = !enforce;
              break;
            }
          }
          if (enforce ? forced : !forced) {
            holds = enforce;
            break;
          }
        }
        if (holds) out.insert(w, n);
      }
    }
  }

  void modalEf(const EvalSet& x0, EvalSet& out) const {
    for (NodeId n : modal) {
      const ClosureNode& c = cl.node(n);
      const bool enforce = c.kind == FormulaKind::Enforce;
      for (StateId w = 0; w < frame.stateCount(); ++w) {
        if (!inWorking(w)) continue;
        const Family* fam = families[w * coalitions.size() + coalitionIndex[n]];
        if (!fam)
          throw CheckError("effectivity of coalition " + c.coalition.toString() + " at state " + frame.states[w] +
                           " is not listed");
        bool holds;
        if (enforce) {
          holds = std::any_of(fam->begin(), fam->end(), [&](const StateSet& u) {
            return std::all_of(u.begin(), u.end(), [&](StateId v) { return x0.contains(v, c.left); });
          });
        } else {
          holds = std::all_of(fam->begin(), fam->end(), [&](const StateSet& u) {
            return std::any_of(u.begin(), u.end(), [&](StateId v) { return x0.contains(v, c.left); });
          });
        }
        if (holds) out.insert(w, n);
      }
    }
  }

  void apply(std::span<const EvalSet> xs, EvalSet& out) const {
    if (xs.empty()) throw CheckError("one-step function needs at least X_0");
    if (static_cast<int>(xs.size()) <= cl.maxPriority())
      throw CheckError("one-step function needs X_0..X_" + std::to_string(cl.maxPriority()));
    if (out.states() != frame.stateCount() || out.nodes() != cl.size()) out = EvalSet(frame.stateCount(), cl.size());
    prop(xs, out);
    if (cgf) modalCgf(xs[0], out);
    if (ef) modalEf(xs[0], out);
  }

  const Cgf* cgf;
  const Ef* ef;
  const FrameBase& frame;
  const ClosureGraph& cl;
  std::size_t stride = 0;
  std::vector<std::uint64_t> working;
  std::vector<std::vector<std::uint64_t>> atomRows;
  std::vector<NodeId> modal;
  std::vector<Coalition> coalitions;
  std::vector<std::size_t> coalitionIndex;
  mutable std::vector<MoveSplit> splits;
  mutable std::vector<bool> splitReady;
  std::vector<const Family*> families;
};

void propStep(const FrameBase& frame, const ClosureGraph& cl, const WorkingSet& v, std::span<const EvalSet> xs,
              EvalSet& out) {
  OneStep::Impl impl(frame, nullptr, nullptr, cl, v);
  if (out.states() != frame.stateCount() || out.nodes() != cl.size()) out = EvalSet(frame.stateCount(), cl.size());
  impl.prop(xs, out);
}

void oneStepCgf(const Cgf& g, const ClosureGraph& cl, const WorkingSet& v, std::span<const EvalSet> xs,
                EvalSet& out) {
  OneStep::Impl(g, &g, nullptr, cl, v).apply(xs, out);
}

void oneStepEf(const Ef& e, const ClosureGraph& cl, const WorkingSet& v, std::span<const EvalSet> xs,
               EvalSet& out) {
  OneStep::Impl(e, nullptr, &e, cl, v).apply(xs, out);
}

OneStep::OneStep(const Model& m, const ClosureGraph& cl) : impl_(std::make_unique<Impl>(m, cl, WorkingSet{})) {}
OneStep::~OneStep() = default;
OneStep::OneStep(OneStep&&) noexcept = default;
OneStep& OneStep::operator=(OneStep&&) noexcept = default;

void OneStep::operator()(std::span<const EvalSet> xs, EvalSet& out) const { impl_->apply(xs, out); }

StepFunction OneStep::function() const {
  const Impl* impl = impl_.get();
  return [impl](std::span<const EvalSet> xs, EvalSet& out) { impl->apply(xs, out); };
}

// ---------------------------------------------------------------------------
// Nested fixpoint

namespace {

class NestedIteration {
 public:
  NestedIteration(const StepFunction& step, std::size_t states, std::size_t nodes, int k, const Deadline& deadline)
      : step_(step), states_(states), nodes_(nodes), xs_(static_cast<std::size_t>(k) + 1), deadline_(deadline) {}

  EvalSet run() { return level(static_cast<int>(xs_.size()) - 1); }

 private:
  // Value of eta_i X_i. eta_{i-1} X_{i-1}. ... step(X) for the current X_{i+1..k}.
  EvalSet level(int i) {
    if (i < 0) {
      EvalSet out(states_, nodes_);
      step_(xs_, out);
      return out;
    }
    auto& x = xs_[static_cast<std::size_t>(i)];
    x = i % 2 == 0 ? EvalSet::full(states_, nodes_) : EvalSet(states_, nodes_);
    for (;;) {
      deadline_.check();
      EvalSet next = level(i - 1);
      if (next == x) return next;
      x = std::move(next);
    }
  }

  const StepFunction& step_;
  std::size_t states_;
  std::size_t nodes_;
  std::vector<EvalSet> xs_;
  const Deadline& deadline_;
};

}  // namespace

EvalSet nestedFixpoint(const StepFunction& step, std::size_t states, std::size_t nodes, int k,
                       const Deadline& deadline) {
  if (k < 0) throw CheckError("nestedFixpoint: negative priority bound");
  return NestedIteration(step, states, nodes, k, deadline).run();
}

std::vector<bool> checkAllViaFixpoint(const Model& m, const ClosureGraph& cl, const Deadline& deadline) {
  OneStep step(m, cl);
  const std::size_t states = m.base().stateCount();
  EvalSet result = nestedFixpoint(step.function(), states, cl.size(), cl.maxPriority(), deadline);
  std::vector<bool> out(states);
  for (StateId w = 0; w < states; ++w) out[w] = result.contains(w, cl.root());
  return out;
}

bool checkViaFixpoint(const Model& m, const Formula& f, StateId w) {
  ClosureGraph cl = ClosureGraph::build(f);
  if (w >= m.base().stateCount()) throw CheckError("query state out of range");
  return checkAllViaFixpoint(m, cl)[w];
}

}  // namespace amc
