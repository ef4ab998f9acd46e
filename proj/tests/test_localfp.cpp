#include <doctest.h>

#include <random>

#include "amc/benchgen.hpp"
#include "amc/convert.hpp"
#include "amc/error.hpp"
#include "amc/game.hpp"
#include "amc/localfp.hpp"
#include "oracle.hpp"

using namespace amc;

namespace {

const Model& fig1() {
  static const Model m = loadModel(AMC_FIXTURES "/fig1.cgf.json");
  return m;
}

const Model& fig1Ef() {
  static const Model m = loadModel(AMC_FIXTURES "/fig1.ef.json");
  return m;
}

NodeId find(const ClosureGraph& cl, FormulaKind kind, const std::string& name = {}) {
  for (NodeId n = 0; n < cl.size(); ++n)
    if (cl.node(n).kind == kind && (name.empty() || cl.node(n).name == name)) return n;
  FAIL("node not found");
  return 0;
}

FixpointState emptyArgs(const Model& m, const ClosureGraph& cl) {
  return FixpointState(static_cast<std::size_t>(cl.maxPriority()) + 1, EvalSet(m.base().stateCount(), cl.size()));
}

EvalSet step(const Model& m, const ClosureGraph& cl, const FixpointState& xs) {
  EvalSet out;
  OneStep(m, cl)(xs, out);
  return out;
}

}  // namespace

TEST_CASE("EvalSet basics") {
  EvalSet s(70, 3);
  CHECK(s.wordsPerNode() == 2);
  CHECK(s.count() == 0);
  s.insert(69, 2);
  s.insert(0, 0);
  CHECK(s.contains(69, 2));
  CHECK_FALSE(s.contains(69, 1));
  CHECK(s.count() == 2);
  s.erase(69, 2);
  CHECK(s.count() == 1);
  EvalSet full = EvalSet::full(70, 3);
  CHECK(full.count() == 210);
  CHECK(s.subsetOf(full));
  CHECK_FALSE(full.subsetOf(s));
}

TEST_CASE("propositional step") {
  ClosureGraph cl = ClosureGraph::build(*parseFormula("(p | true) & (mu X. ~q | [{1}] X)"));
  FixpointState xs = emptyArgs(fig1(), cl);
  EvalSet out;
  propStep(fig1().base(), cl, {}, xs, out);
  NodeId top = find(cl, FormulaKind::Top);
  NodeId p = find(cl, FormulaKind::Atom, "p");
  NodeId notQ = find(cl, FormulaKind::NegAtom, "q");
  NodeId mu = find(cl, FormulaKind::Mu);
  for (StateId w = 0; w < 3; ++w) CHECK(out.contains(w, top));
  CHECK(out.contains(1, p));
  CHECK_FALSE(out.contains(2, p));
  CHECK(out.contains(0, notQ));
  CHECK_FALSE(out.contains(2, notQ));
  CHECK_FALSE(out.contains(0, cl.root()));
  CHECK_FALSE(out.contains(0, mu));

  // The mu node (priority 1) reads its unfolding from X_1, not X_0.
  xs[1].insert(0, cl.unfold(mu));
  xs[0].insert(1, cl.unfold(mu));
  propStep(fig1().base(), cl, {}, xs, out);
  CHECK(out.contains(0, mu));
  CHECK_FALSE(out.contains(1, mu));

  // And/Or read X_0.
  NodeId orNode = cl.node(cl.root()).left;
  xs[0].insert(2, top);
  propStep(fig1().base(), cl, {}, xs, out);
  CHECK(out.contains(2, orNode));
  CHECK_FALSE(out.contains(0, orNode));

  // A restricted working set limits the output.
  propStep(fig1().base(), cl, {false, true, false}, xs, out);
  CHECK_FALSE(out.contains(0, top));
  CHECK(out.contains(1, top));
}

TEST_CASE("CGF one-step modalities") {
  ClosureGraph cl = ClosureGraph::build(*parseFormula("(([{1,3}] q) & ([{1}] p)) & (([{1,2,3}] p) & <{1}> p)"));
  NodeId q = find(cl, FormulaKind::Atom, "q");
  NodeId p = find(cl, FormulaKind::Atom, "p");
  auto modal = [&](FormulaKind k, Coalition c) {
    for (NodeId n = 0; n < cl.size(); ++n)
      if (cl.node(n).kind == k && cl.node(n).coalition == c) return n;
    FAIL("modal node not found");
    return NodeId{0};
  };
  FixpointState xs = emptyArgs(fig1(), cl);
  xs[0].insert(2, q);
  EvalSet out = step(fig1(), cl, xs);
  CHECK(out.contains(0, modal(FormulaKind::Enforce, {1, 3})));
  CHECK(out.contains(2, modal(FormulaKind::Enforce, {1, 3})));
  CHECK_FALSE(out.contains(1, modal(FormulaKind::Enforce, {1, 3})));

  xs = emptyArgs(fig1(), cl);
  xs[0].insert(1, p);
  out = step(fig1(), cl, xs);
  CHECK_FALSE(out.contains(0, modal(FormulaKind::Enforce, {1})));
  CHECK(out.contains(0, modal(FormulaKind::Enforce, {1, 2, 3})));
  CHECK(out.contains(0, modal(FormulaKind::Allows, {1})));

  // The free functions agree with the cached evaluator.
  EvalSet direct;
  oneStepCgf(fig1().cgf(), cl, {}, xs, direct);
  CHECK(direct == out);
}

TEST_CASE("EF one-step modalities") {
  ClosureGraph cl = ClosureGraph::build(*parseFormula("([{1,3}] q) & [{1}] p"));
  NodeId q = find(cl, FormulaKind::Atom, "q");
  NodeId p = find(cl, FormulaKind::Atom, "p");
  NodeId enforce13 = cl.node(cl.root()).left;
  NodeId enforce1 = cl.node(cl.root()).right;
  REQUIRE(cl.node(enforce13).coalition == Coalition{1, 3});
  REQUIRE(cl.node(enforce1).coalition == Coalition{1});

  FixpointState xs = emptyArgs(fig1Ef(), cl);
  xs[0].insert(2, q);
  EvalSet out;
  oneStepEf(fig1Ef().ef(), cl, {}, xs, out);
  CHECK(out.contains(0, enforce13));

  xs = emptyArgs(fig1Ef(), cl);
  xs[0].insert(1, p);
  oneStepEf(fig1Ef().ef(), cl, {}, xs, out);
  CHECK_FALSE(out.contains(0, enforce1));

  // Singleton family {{w}}: <C> psi holds iff psi holds at w.
  Ef single;
  single.agents = 1;
  single.addState("a");
  single.addState("b");
  single.setFamily(0, {1}, {{0}});
  single.setFamily(1, {1}, {{1}});
  ClosureGraph allows = ClosureGraph::build(*parseFormula("<{1}> p"));
  FixpointState ys(1, EvalSet(2, allows.size()));
  NodeId pa = find(allows, FormulaKind::Atom, "p");
  ys[0].insert(1, pa);
  oneStepEf(single, allows, {}, ys, out);
  CHECK_FALSE(out.contains(0, allows.root()));
  CHECK(out.contains(1, allows.root()));

  // Missing coalitions are reported when evaluated.
  ClosureGraph other = ClosureGraph::build(*parseFormula("[{}] p"));
  FixpointState zs(1, EvalSet(2, other.size()));
  CHECK_THROWS_AS(oneStepEf(single, other, {}, zs, out), CheckError);
}

TEST_CASE("nested fixpoint: identity bodies") {
  Model m = fig1();
  ClosureGraph nu = ClosureGraph::build(*parseFormula("nu X. X"));
  EvalSet r = nestedFixpoint(OneStep(m, nu).function(), 3, nu.size(), nu.maxPriority());
  for (StateId w = 0; w < 3; ++w) CHECK(r.contains(w, nu.root()));

  ClosureGraph mu = ClosureGraph::build(*parseFormula("mu X. X"));
  r = nestedFixpoint(OneStep(m, mu).function(), 3, mu.size(), mu.maxPriority());
  for (StateId w = 0; w < 3; ++w) CHECK_FALSE(r.contains(w, mu.root()));
}

TEST_CASE("nested fixpoint: modulo reachability") {
  Benchmark b = moduloGame(2, 2, 10);
  Model m(b.model);
  CHECK(checkViaFixpoint(m, *parseFormula("mu X. p7 | [{1,2}] X"), 0));
  CHECK_FALSE(checkViaFixpoint(m, *parseFormula("mu X. p1 | [{}] X"), 0));
  // BFS oracle: states the grand coalition can reach from 0.
  std::vector<bool> seen(10, false);
  std::vector<int> frontier{0};
  seen[0] = true;
  while (!frontier.empty()) {
    int s = frontier.back();
    frontier.pop_back();
    for (int d = 2; d <= 4; ++d) {
      int t = (s + d) % 10;
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        frontier.push_back(t);
      }
    }
  }
  for (int i = 0; i < 10; ++i)
    CHECK(checkViaFixpoint(m, *parseFormula("mu X. p" + std::to_string(i) + " | [{1,2}] X"), 0) ==
          seen[static_cast<std::size_t>(i)]);
}

TEST_CASE("k = 0 is plain greatest-fixpoint iteration") {
  Model m(randomCgf(8, 2, 2, {"p0", "p1"}, 11));
  ClosureGraph cl = ClosureGraph::build(*parseFormula("nu X. p0 & [{1}] X | <{2}> (p1 & X)"));
  REQUIRE(cl.maxPriority() == 0);
  OneStep f(m, cl);
  EvalSet x = EvalSet::full(8, cl.size());
  for (;;) {
    EvalSet next;
    FixpointState args{x};
    f(args, next);
    if (next == x) break;
    x = next;
  }
  CHECK(nestedFixpoint(f.function(), 8, cl.size(), 0) == x);
}

namespace {

EvalSet randomSet(std::mt19937_64& rng, std::size_t states, std::size_t nodes, double density) {
  std::bernoulli_distribution coin(density);
  EvalSet s(states, nodes);
  for (NodeId n = 0; n < nodes; ++n)
    for (StateId w = 0; w < states; ++w)
      if (coin(rng)) s.insert(w, n);
  return s;
}

// X <= Y componentwise: Y random, X a random subset of Y.
std::pair<FixpointState, FixpointState> orderedPair(std::mt19937_64& rng, std::size_t states, std::size_t nodes,
                                                    int k) {
  FixpointState xs, ys;
  for (int i = 0; i <= k; ++i) {
    EvalSet y = randomSet(rng, states, nodes, 0.6);
    EvalSet x = randomSet(rng, states, nodes, 0.6);
    for (NodeId n = 0; n < nodes; ++n)
      for (StateId w = 0; w < states; ++w)
        if (!y.contains(w, n)) x.erase(w, n);
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  return {xs, ys};
}

}  // namespace

TEST_CASE("one-step functions are monotone") {
  std::mt19937_64 rng(99);
  RandomFormulaOptions opts;
  opts.agents = 3;
  opts.atoms = atomNames(3);
  for (int i = 0; i < 150; ++i) {
    Cgf g = randomCgf(6, 3, 2, opts.atoms, static_cast<std::uint64_t>(i));
    Model cgf(g);
    Model ef(inducedEffectivity(g));
    FormulaPtr f = randomFormula(10, opts, static_cast<std::uint64_t>(i));
    ClosureGraph cl = ClosureGraph::build(*f);
    auto [xs, ys] = orderedPair(rng, 6, cl.size(), cl.maxPriority());
    EvalSet a, b;
    propStep(g, cl, {}, xs, a);
    propStep(g, cl, {}, ys, b);
    CHECK(a.subsetOf(b));
    oneStepCgf(g, cl, {}, xs, a);
    oneStepCgf(g, cl, {}, ys, b);
    CHECK(a.subsetOf(b));
    oneStepEf(ef.ef(), cl, {}, xs, a);
    oneStepEf(ef.ef(), cl, {}, ys, b);
    CHECK(a.subsetOf(b));
  }
}

TEST_CASE("fixpoint engines agree with the game engines and direct semantics") {
  RandomFormulaOptions opts;
  opts.agents = 3;
  opts.atoms = atomNames(4);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Cgf g = randomCgf(7, 3, 2, opts.atoms, seed);
    Model cgf(g);
    Model ef(inducedEffectivity(g));
    Model efMin(minimize(inducedEffectivity(g)));
    FormulaPtr f = randomFormula(1 + static_cast<int>(seed % 12), opts, seed);
    CAPTURE(print(*f));
    ClosureGraph cl = ClosureGraph::build(*f);
    std::vector<bool> expected = oracle::eval(cgf, *f);
    CHECK(checkAllViaFixpoint(cgf, cl) == expected);
    CHECK(checkAllViaFixpoint(ef, cl) == expected);
    CHECK(checkAllViaFixpoint(efMin, cl) == expected);
    CHECK(checkAllViaGame(efMin, cl) == expected);
  }
}

TEST_CASE("EF one-step result is unchanged by minimization") {
  std::mt19937_64 rng(5);
  RandomFormulaOptions opts;
  opts.agents = 3;
  opts.atoms = atomNames(2);
  for (int i = 0; i < 100; ++i) {
    Cgf g = randomCgf(6, 3, 2, opts.atoms, static_cast<std::uint64_t>(i) + 500);
    Ef full = inducedEffectivity(g);
    Ef small = minimize(full);
    ClosureGraph cl = ClosureGraph::build(*randomFormula(8, opts, static_cast<std::uint64_t>(i)));
    auto [xs, ys] = orderedPair(rng, 6, cl.size(), cl.maxPriority());
    EvalSet a, b;
    oneStepEf(full, cl, {}, xs, a);
    oneStepEf(small, cl, {}, xs, b);
    CHECK(a == b);
  }
}

TEST_CASE("fixpoint iteration honours the deadline") {
  Benchmark b = moduloGame(2, 4, 10);
  ClosureGraph cl = ClosureGraph::build(*b.formulas[0].formula);
  Deadline past = Deadline::after(1e-9);
  while (!past.expired()) {
  }
  CHECK_THROWS_AS(checkAllViaFixpoint(Model(b.model), cl, past), TimeoutError);
}
