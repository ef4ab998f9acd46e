#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "amc/closure.hpp"
#include "amc/deadline.hpp"
#include "amc/model.hpp"

namespace amc {

/// A set of (state, closure node) pairs over a fixed state count and
/// closure size. Each node owns a word-aligned row of state bits.
class EvalSet {
 public:
  EvalSet() = default;
  EvalSet(std::size_t states, std::size_t nodes);

  static EvalSet full(std::size_t states, std::size_t nodes);

  std::size_t states() const { return states_; }
  std::size_t nodes() const { return nodes_; }
  std::size_t wordsPerNode() const { return stride_; }

  bool contains(StateId w, NodeId n) const {
    return (words_[n * stride_ + (w >> 6)] >> (w & 63)) & 1U;
  }
  void insert(StateId w, NodeId n) { words_[n * stride_ + (w >> 6)] |= std::uint64_t{1} << (w & 63); }
  void erase(StateId w, NodeId n) { words_[n * stride_ + (w >> 6)] &= ~(std::uint64_t{1} << (w & 63)); }
  void clear();

  std::span<std::uint64_t> row(NodeId n) { return {words_.data() + n * stride_, stride_}; }
  std::span<const std::uint64_t> row(NodeId n) const { return {words_.data() + n * stride_, stride_}; }

  bool subsetOf(const EvalSet& other) const;
  std::size_t count() const;

  friend bool operator==(const EvalSet&, const EvalSet&) = default;

 private:
  std::size_t states_ = 0;
  std::size_t nodes_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Argument vector X_0..X_k of a one-step function.
using FixpointState = std::vector<EvalSet>;

/// A monotone function from FixpointState to EvalSet writing into `out`.
using StepFunction = std::function<void(std::span<const EvalSet> xs, EvalSet& out)>;

/// Which states are in play. The engines below always pass the full state
/// set; smaller sets restrict the output only.
using WorkingSet = std::vector<bool>;

/// Propositional part of the one-step function: top, literals, and/or from
/// X_0, and each fixpoint node from X_{priority}. Modal nodes are left out.
void propStep(const FrameBase& frame, const ClosureGraph& cl, const WorkingSet& v,
              std::span<const EvalSet> xs, EvalSet& out);

/// propStep plus CGF modalities: [C]psi holds if some joint move of C forces
/// psi (w.r.t. X_0) against every completion, <C>psi if every joint move of C
/// has a completion reaching psi.
void oneStepCgf(const Cgf& g, const ClosureGraph& cl, const WorkingSet& v,
                std::span<const EvalSet> xs, EvalSet& out);

/// propStep plus EF modalities: [C]psi holds if some U in e(w,C) lies inside
/// psi's X_0 extension, <C>psi if every U meets it. Throws CheckError for a
/// coalition missing at a working state.
void oneStepEf(const Ef& e, const ClosureGraph& cl, const WorkingSet& v,
               std::span<const EvalSet> xs, EvalSet& out);

/// Reusable one-step evaluator for a fixed model and closure. Caches move
/// splits (CGF) or family lookups (EF) between calls.
class OneStep {
 public:
  OneStep(const Model& m, const ClosureGraph& cl);
  ~OneStep();
  OneStep(OneStep&&) noexcept;
  OneStep& operator=(OneStep&&) noexcept;

  void operator()(std::span<const EvalSet> xs, EvalSet& out) const;
  StepFunction function() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

/// eta_k X_k. ... nu X_0. step(X_0, ..., X_k) with eta_i = nu for even i and
/// mu for odd i, by nested Kleene iteration. Inner levels restart from their
/// initial value whenever an outer level changes.
EvalSet nestedFixpoint(const StepFunction& step, std::size_t states, std::size_t nodes, int k,
                       const Deadline& deadline = {});

/// Whether (w, root) lies in the nested fixpoint of m's one-step function.
bool checkViaFixpoint(const Model& m, const Formula& f, StateId w);
/// Verdict for every state.
std::vector<bool> checkAllViaFixpoint(const Model& m, const ClosureGraph& cl,
                                      const Deadline& deadline = {});

}  // namespace amc
