// Unit tests for sink-stability, F-stability, flat transversals, cyclic orders.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sinkstable/stability.hpp"
#include "test_util.hpp"

using namespace sinkstable;
using test::dg;
using test::dicycle;

namespace {

// a -> b -> c -> d plus the chord a -> d; single circuit of eta 1
Digraph four_path_chord() { return dg(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

void check_cert_makes_sinks(const Digraph& d, const NodeSet& s, const DicutFamily& fam) {
  Digraph flipped = reverse_edges(d, family_union(d, fam));
  for (NodeId v : s.ids()) CHECK(flipped.out_edges(v).empty());
}

}  // namespace

TEST_CASE("singletons of the 4-path with chord are sink-stable") {
  Digraph d = four_path_chord();
  for (NodeId v = 0; v < 4; ++v) {
    auto res = check_sink_stable(d, NodeSet::of(4, {v}));
    REQUIRE(std::holds_alternative<StableCert>(res));
    check_cert_makes_sinks(d, NodeSet::of(4, {v}), std::get<StableCert>(res).family);
  }
}

TEST_CASE("{a, c} of the 4-path with chord is not sink-stable") {
  Digraph d = four_path_chord();
  auto res = check_sink_stable(d, NodeSet::of(4, {0, 2}));
  REQUIRE(std::holds_alternative<CircuitViolation>(res));
  const CircuitViolation& v = std::get<CircuitViolation>(res);
  validate_circuit(d, v.circuit);
  CHECK(v.k == 1);
  CHECK(v.eta == 1);
  CHECK(v.intersection == 2);
  CHECK(v.circuit.eta() == 1);
}

TEST_CASE("adjacent pairs are rejected as unstable") {
  Digraph d = four_path_chord();
  CHECK_THROWS_AS(check_sink_stable(d, NodeSet::of(4, {0, 1})), not_stable_error);
  try {
    check_sink_stable(d, NodeSet::of(4, {0, 1}));
  } catch (const not_stable_error& e) {
    CHECK(e.witness_edge == 0);
  }
}

TEST_CASE("empty set and sinks are trivially sink-stable") {
  Digraph d = dg(2, {{0, 1}});
  CHECK(std::holds_alternative<StableCert>(check_sink_stable(d, NodeSet(2))));
  auto res = check_sink_stable(d, NodeSet::of(2, {1}));
  REQUIRE(std::holds_alternative<StableCert>(res));
  CHECK(std::get<StableCert>(res).family.empty());
}

TEST_CASE("partition into k sink-stable classes") {
  Digraph d = four_path_chord();
  // all four nodes sit on the eta-1 circuit: k = 2 cannot cover them
  auto bad = partition_k_sink_stable(d, NodeSet::of(4, {0, 1, 2, 3}), 2);
  REQUIRE(std::holds_alternative<CircuitViolation>(bad));
  const CircuitViolation& v = std::get<CircuitViolation>(bad);
  CHECK(v.intersection > v.k * v.eta);

  // two opposite nodes split fine
  auto ok = partition_k_sink_stable(d, NodeSet::of(4, {0, 2}), 2);
  REQUIRE(std::holds_alternative<Partition>(ok));
  const Partition& p = std::get<Partition>(ok);
  REQUIRE(p.classes.size() == 2);
  int covered = 0;
  for (size_t i = 0; i < p.classes.size(); ++i) {
    covered += p.classes[i].count();
    check_cert_makes_sinks(d, p.classes[i], p.families[i]);
  }
  CHECK(covered == 2);
  CHECK_THROWS_AS(partition_k_sink_stable(d, NodeSet(4), 1), input_error);
}

TEST_CASE("transversal and flatness predicates") {
  Digraph c3 = dicycle(3);
  CHECK(!is_transversal(c3, EdgeSet(3)));
  CHECK(is_transversal(c3, EdgeSet::of(3, {1})));
  CHECK(is_flat(c3, EdgeSet::of(3, {1})));
  CHECK(is_transversal(c3, EdgeSet::of(3, {0, 1})));
  // two marked edges on the only di-circuit: transversal but not flat
  CHECK(!is_flat(c3, EdgeSet::of(3, {0, 1})));
  // acyclic: anything is a transversal, flat holds vacuously
  Digraph p2 = dg(2, {{0, 1}});
  CHECK(is_transversal(p2, EdgeSet(1)));
  CHECK(is_flat(p2, EdgeSet(1)));
}

TEST_CASE("flat_transversal on assorted digraphs") {
  for (const Digraph& d :
       {dicycle(3), dicycle(6), dg(2, {{0, 1}, {1, 0}, {0, 1}, {1, 0}}),
        dg(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}, {1, 3}}),
        dg(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {2, 4}, {1, 3}}),
        dg(3, {{0, 1}, {1, 2}})}) {
    EdgeSet f = flat_transversal(d);
    CHECK(is_transversal(d, f));
    CHECK(is_flat(d, f));
  }
  CHECK(flat_transversal(dg(3, {{0, 1}, {1, 2}})).empty());
}

TEST_CASE("F-stable unions in a strong digraph") {
  Digraph d = dicycle(4);
  EdgeSet f = EdgeSet::of(4, {0});
  // every node alone is F-stable; any two nodes exceed |F ∩ K| = 1
  auto ok = check_F_stable_union(d, f, NodeSet::of(4, {2}), 1);
  REQUIRE(std::holds_alternative<Partition>(ok));
  auto no = check_F_stable_union(d, f, NodeSet::of(4, {1, 3}), 1);
  REQUIRE(std::holds_alternative<DiCircuitViolation>(no));
  const DiCircuitViolation& v = std::get<DiCircuitViolation>(no);
  validate_dicircuit(d, v.circuit);
  CHECK(v.intersection == 2);
  CHECK(v.f_count == 1);
  // with k = 2 the same pair splits
  auto two = check_F_stable_union(d, f, NodeSet::of(4, {1, 3}), 2);
  CHECK(std::holds_alternative<Partition>(two));
  // non-flat F is rejected up front
  CHECK_THROWS_AS(check_F_stable_union(d, EdgeSet::of(4, {0, 2}), NodeSet(4), 1), input_error);
}

TEST_CASE("minimum F-stable cover number") {
  Digraph d = dicycle(4);
  EdgeSet f = EdgeSet::of(4, {0});
  CoverNumber c0 = min_F_stable_cover_number(d, f, NodeSet(4));
  CHECK(c0.k_star == 0);
  CoverNumber c1 = min_F_stable_cover_number(d, f, NodeSet::of(4, {2}));
  CHECK(c1.k_star == 1);
  CoverNumber c3 = min_F_stable_cover_number(d, f, NodeSet::of(4, {1, 2, 3}));
  CHECK(c3.k_star == 3);
  REQUIRE(c3.witness.has_value());
  CHECK(c3.witness->intersection > (c3.k_star - 1) * c3.witness->f_count);
}

TEST_CASE("chromatic bound partitions into stable classes") {
  for (const Digraph& d : {dicycle(3), dicycle(5),
                           dg(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}})}) {
    std::vector<NodeSet> classes = bondy_chromatic_bound(d);
    int longest = 0;
    for (const DiCircuit& k : enumerate_dicircuits(d))
      longest = std::max(longest, k.length());
    CHECK((int)classes.size() <= longest);
    NodeSet seen(d.node_count());
    for (const NodeSet& cls : classes)
      for (NodeId v : cls.ids()) {
        CHECK(!seen.contains(v));
        seen.add(v);
        for (EdgeId e : d.out_edges(v)) CHECK(!cls.contains(d.edge(e).head));
      }
    CHECK(seen.count() == d.node_count());
  }
  CHECK_THROWS_AS(bondy_chromatic_bound(dg(2, {{0, 1}})), input_error);
}

TEST_CASE("coherent cyclic orders and the index") {
  for (int n : {3, 4, 5}) {
    Digraph d = dicycle(n);
    CyclicOrder order = coherent_cyclic_order(d);
    for (const DiCircuit& k : enumerate_dicircuits(d)) CHECK(index(d, order, k) == 1);
  }
  // denser strong digraph: every di-circuit winds at least once
  Digraph d = dg(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}, {1, 3}});
  CyclicOrder order = coherent_cyclic_order(d);
  for (const DiCircuit& k : enumerate_dicircuits(d)) CHECK(index(d, order, k) >= 1);
  CHECK_THROWS_AS(coherent_cyclic_order(dg(2, {{0, 1}})), input_error);
}

TEST_CASE("cyclic stability matches F-stability for the opening") {
  Digraph d = dicycle(4);
  CyclicOrder order = coherent_cyclic_order(d);
  // any single node is cyclically stable; the index-1 circuit blocks pairs
  for (NodeId v = 0; v < 4; ++v)
    CHECK(std::holds_alternative<Partition>(
        check_cyclic_stable(d, order, NodeSet::of(4, {v}), 1)));
  auto no = check_cyclic_stable(d, order, NodeSet::of(4, {0, 2}), 1);
  REQUIRE(std::holds_alternative<DiCircuitViolation>(no));
  CHECK(std::get<DiCircuitViolation>(no).intersection == 2);
}
