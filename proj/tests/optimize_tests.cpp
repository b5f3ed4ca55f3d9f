// Unit tests for the circulation solver and the min-max optimizers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "sinkstable/circulation.hpp"
#include "sinkstable/optimize.hpp"
#include "test_util.hpp"

using namespace sinkstable;
using test::dg;
using test::dicycle;

namespace {

long long weight_of(const NodeMultiset& x, const std::vector<long long>& w) {
  long long t = 0;
  for (size_t v = 0; v < x.size(); ++v) t += x[v] * w[v];
  return t;
}

void check_reduced_costs(const FlowNetwork& net, const Circulation& c) {
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    const Arc& a = net.arcs[i];
    long long rc = a.cost + c.potential[a.tail] - c.potential[a.head];
    if (c.flow[i] < a.upper) CHECK(rc >= 0);  // forward residual
    if (c.flow[i] > a.lower) CHECK(rc <= 0);  // backward residual
  }
}

}  // namespace

TEST_CASE("min-cost circulation with lower bounds") {
  FlowNetwork net;
  net.n = 2;
  net.arcs = {{0, 1, 1, 2, 5}, {1, 0, 0, 3, 2}};
  auto res = min_cost_circulation(net);
  REQUIRE(std::holds_alternative<Circulation>(res));
  const Circulation& c = std::get<Circulation>(res);
  CHECK(c.flow == std::vector<long long>{1, 1});
  CHECK(c.cost == 7);
  check_reduced_costs(net, c);
}

TEST_CASE("negative-cost arcs are saturated when profitable") {
  FlowNetwork net;
  net.n = 2;
  net.arcs = {{0, 1, 0, 2, -3}, {1, 0, 0, 2, 1}};
  auto res = min_cost_circulation(net);
  REQUIRE(std::holds_alternative<Circulation>(res));
  const Circulation& c = std::get<Circulation>(res);
  CHECK(c.cost == -4);
  CHECK(c.flow == std::vector<long long>{2, 2});
  check_reduced_costs(net, c);
}

TEST_CASE("infeasible lower bounds yield a cut witness") {
  FlowNetwork net;
  net.n = 3;
  // 2 units forced into node 1, but at most 1 can leave it
  net.arcs = {{0, 1, 2, 5, 0}, {1, 2, 0, 1, 0}, {2, 0, 0, 5, 0}};
  auto res = min_cost_circulation(net);
  REQUIRE(std::holds_alternative<InfeasibleCut>(res));
  const InfeasibleCut& cut = std::get<InfeasibleCut>(res);
  CHECK(cut.deficit >= 1);
  // recompute the deficit from the cut definition
  NodeSet r(net.n);
  for (NodeId v : cut.nodes) r.add(v);
  long long deficit = 0;
  for (const Arc& a : net.arcs) {
    if (!r.contains(a.tail) && r.contains(a.head)) deficit += a.lower;
    if (r.contains(a.tail) && !r.contains(a.head)) deficit -= a.upper;
  }
  CHECK(deficit == cut.deficit);
}

TEST_CASE("malformed networks are rejected") {
  FlowNetwork loop{1, {{0, 0, 0, 1, 0}}};
  CHECK_THROWS_AS(min_cost_circulation(loop), input_error);
  FlowNetwork bad_bounds{2, {{0, 1, 3, 1, 0}}};
  CHECK_THROWS_AS(min_cost_circulation(bad_bounds), input_error);
  FlowNetwork neg_unbounded{2, {{0, 1, 0, kUnbounded, -1}, {1, 0, 0, 1, 0}}};
  CHECK_THROWS_AS(min_cost_circulation(neg_unbounded), input_error);
}

TEST_CASE("circulation decomposition into di-circuits") {
  Digraph d = dicycle(3);
  auto parts = decompose_circulation(d, {2, 2, 2});
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].mult == 2);
  CHECK(parts[0].circuit.length() == 3);

  Digraph two = dg(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  auto both = decompose_circulation(two, {1, 1, 1, 3, 3, 3});
  CHECK(both.size() == 2);
  long long mults = 0;
  for (const auto& p : both) {
    validate_dicircuit(two, p.circuit);
    mults += p.mult;
  }
  CHECK(mults == 4);
  CHECK_THROWS_AS(decompose_circulation(d, {1, 0, 0}), input_error);
}

TEST_CASE("independent multisets against di-circuit covers") {
  Digraph d = dicycle(3);
  MinMaxResult r = gallai_min_max(d, {1, 1, 1}, {1, 1, 1});
  CHECK(r.value == 3);
  CHECK(multiset_total(r.primal) == 3);
  REQUIRE(r.dual.size() == 1);
  CHECK(r.dual[0].mult == 1);

  // tighter circuit budget caps the multiset
  CHECK(gallai_min_max(d, {0, 1, 1}, {1, 1, 1}).value == 2);
  // heavy node: the cover is repeated, the primal piles onto one node
  MinMaxResult h = gallai_min_max(d, {0, 1, 1}, {5, 0, 0});
  CHECK(h.value == 10);
  CHECK(h.primal[0] == 2);

  // zero-weight isolated-from-circuit nodes are fine; positive weight off
  // every di-circuit is rejected
  Digraph path = dg(2, {{0, 1}});
  CHECK_THROWS_AS(gallai_min_max(path, {1}, {1, 0}), input_error);
}

TEST_CASE("max weight sink-stable set on the two-fan") {
  // a -> b, c, d <- e
  Digraph d = dg(5, {{0, 1}, {0, 2}, {0, 3}, {4, 1}, {4, 2}, {4, 3}});
  std::vector<long long> unit(5, 1);
  MinMaxResult r = max_sink_stable(d, unit);
  CHECK(r.value == 3);
  CHECK(r.primal == NodeMultiset{0, 1, 1, 1, 0});
  long long dual_total = r.dual_penalty;
  for (const auto& c : r.dual_circuits) {
    CHECK(c.eta == c.circuit.eta());
    dual_total += c.mult * c.eta;
  }
  for (const auto& e : r.dual_edges) dual_total += e.mult;
  CHECK(r.dual.empty());
  CHECK(dual_total == 3);

  // {a, e} becomes all-sinks after reversing the one big dicut
  CHECK(max_sink_stable(d, {2, 1, 1, 1, 5}).value == 7);
  // disconnected: di-triangle contributes 0, each lone edge contributes 1
  Digraph dd = dg(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {5, 6}});
  CHECK(max_sink_stable(dd, std::vector<long long>(7, 1)).value == 2);
}

TEST_CASE("max weight F-stable set in a strong digraph") {
  Digraph d = dicycle(4);
  EdgeSet f = EdgeSet::of(4, {0});
  std::vector<long long> unit(4, 1);
  MinMaxResult r = max_F_stable(d, f, unit);
  CHECK(r.value == 1);
  CHECK(multiset_total(r.primal) == 1);
  long long dual_f = 0;
  for (const auto& k : r.dual) {
    int fc = 0;
    for (EdgeId e : k.circuit.edges)
      if (f.contains(e)) ++fc;
    dual_f += k.mult * fc;
  }
  CHECK(dual_f == r.value);
  CHECK_THROWS_AS(max_F_stable(dg(2, {{0, 1}}), EdgeSet(1), {1, 1}), input_error);
}

TEST_CASE("k-fold unions of F-stable and sink-stable sets") {
  Digraph d = dicycle(4);
  EdgeSet f = EdgeSet::of(4, {0});
  std::vector<long long> unit(4, 1);
  for (int k = 1; k <= 5; ++k) {
    auto [r, part] = k_union_max_F(d, f, unit, k);
    CHECK(r.value == std::min<long long>(k, 4));
    CHECK((int)part.classes.size() <= k);
    long long covered = 0;
    for (const NodeSet& cls : part.classes) covered += cls.count();
    CHECK(covered == r.value);
  }

  Digraph fan = dg(5, {{0, 1}, {0, 2}, {0, 3}, {4, 1}, {4, 2}, {4, 3}});
  auto [r2, part2] = k_union_max_sink(fan, std::vector<long long>(5, 1), 2);
  CHECK(r2.value == 5);
  long long covered = 0;
  for (const NodeSet& cls : part2.classes) covered += cls.count();
  CHECK(covered == 5);
  CHECK(r2.dual_edges.empty());  // the k >= 2 dual uses circuits only
}

TEST_CASE("di-circuit covers bounded by the stability number") {
  Digraph d = dicycle(3);
  NodeSet u = NodeSet::of(3, {0, 1, 2});
  DiCircuitCover c = cover_by_alpha_dicircuits(d, u);
  REQUIRE(c.family.size() == 1);
  CHECK(c.witness.count() >= (int)c.family.size());
  NodeSet covered(3);
  for (const DiCircuit& k : c.family) {
    validate_dicircuit(d, k);
    for (NodeId v : k.nodes)
      if (u.contains(v)) covered.add(v);
  }
  for (NodeId v : u.ids()) CHECK(covered.contains(v));

  // two triangles sharing one node: two circuits cover U, alpha(U) = 2
  Digraph two = dg(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  NodeSet u2 = NodeSet::of(5, {0, 1, 3, 4});
  CHECK(cover_by_alpha_dicircuits(two, u2).family.size() == 2);
  // disconnected inputs are outside the contract
  Digraph split = dg(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK_THROWS_AS(cover_by_alpha_dicircuits(split, NodeSet(6)), input_error);
}

TEST_CASE("antichain unions of small posets") {
  // chain 0 < 1 < 2
  Digraph chain = dg(3, {{0, 1}, {1, 2}, {0, 2}});
  for (int k = 1; k <= 3; ++k) {
    GreeneKleitman r = greene_kleitman(chain, k);
    CHECK(r.value == k);
    CHECK(r.antichain_union.count() == r.value);
  }
  GreeneKleitman c1 = greene_kleitman(chain, 1);
  REQUIRE(c1.chains.size() == 1);
  CHECK(c1.chains[0].size() == 3);

  // antichain of 3
  CHECK(greene_kleitman(Digraph(3, {}), 1).value == 3);

  // the "N" poset: 0 < 2, 1 < 2, 1 < 3
  Digraph nposet = dg(4, {{0, 2}, {1, 2}, {1, 3}});
  CHECK(greene_kleitman(nposet, 1).value == 2);
  CHECK(greene_kleitman(nposet, 2).value == 4);

  // non-transitive and cyclic comparability digraphs are rejected
  CHECK_THROWS_AS(greene_kleitman(dg(3, {{0, 1}, {1, 2}}), 1), input_error);
  CHECK_THROWS_AS(greene_kleitman(dicycle(3), 1), input_error);
}
