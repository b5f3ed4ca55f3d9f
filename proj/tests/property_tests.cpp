// Property suite: the constructive algorithms against independent
// brute-force oracles, exhaustively on tiny digraphs and on seeded random
// instances.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "sinkstable/optimize.hpp"
#include "sinkstable/oracle.hpp"
#include "sinkstable/potential.hpp"
#include "sinkstable/stability.hpp"
#include "test_util.hpp"

using namespace sinkstable;
using test::nth_digraph;
using test::nth_subset;
using test::ordered_pairs;
using test::random_digraph;
using test::random_weights;

namespace {

/// check_sink_stable against both the exhaustive circuit condition and the
/// definition-level reorientation search (when `by_search` is affordable).
void cross_check_sink_stable(const Digraph& d, const NodeSet& s, bool by_search) {
  if (!oracle::is_stable(d, s)) {
    CHECK_THROWS_AS(check_sink_stable(d, s), not_stable_error);
    return;
  }
  bool expected = oracle::condition_k_sink(d, s, 1);
  auto res = check_sink_stable(d, s);
  if (auto* cert = std::get_if<StableCert>(&res)) {
    CHECK(expected);
    Digraph flipped = reverse_edges(d, family_union(d, cert->family));
    for (NodeId v : s.ids()) CHECK(flipped.out_edges(v).empty());
  } else {
    CHECK(!expected);
    const CircuitViolation& v = std::get<CircuitViolation>(res);
    validate_circuit(d, v.circuit);
    int inter = 0;
    for (NodeId u : v.circuit.nodes)
      if (s.contains(u)) ++inter;
    CHECK(inter == v.intersection);
    CHECK(v.eta == v.circuit.eta());
    CHECK(v.intersection > v.k * v.eta);
  }
  if (by_search) CHECK(expected == oracle::sink_stable_by_search(d, s));
}

void cross_check_partition(const Digraph& d, const NodeSet& s, int k) {
  if (!oracle::is_stable(d, s)) return;
  bool expected = oracle::condition_k_sink(d, s, k);
  auto res = partition_k_sink_stable(d, s, k);
  if (auto* p = std::get_if<Partition>(&res)) {
    CHECK(expected);
    NodeSet covered(d.node_count());
    for (size_t i = 0; i < p->classes.size(); ++i) {
      Digraph flipped = reverse_edges(d, family_union(d, p->families[i]));
      for (NodeId v : p->classes[i].ids()) {
        CHECK(flipped.out_edges(v).empty());
        CHECK(!covered.contains(v));
        covered.add(v);
      }
    }
    CHECK(covered == s);
  } else {
    CHECK(!expected);
    const CircuitViolation& v = std::get<CircuitViolation>(res);
    CHECK(v.intersection > v.k * v.eta);
  }
}

void check_minmax_dual(const Digraph& d, const MinMaxResult& r, int k) {
  // dual objective recomputed from the certificates
  long long dual = r.dual_penalty;
  for (const auto& c : r.dual_circuits) {
    validate_circuit(d, c.circuit);
    CHECK(c.eta == c.circuit.eta());
    dual += k * c.mult * c.eta;
  }
  for (const auto& e : r.dual_edges) dual += k * e.mult;
  CHECK(dual == r.value);
}

bool has_isolated(const Digraph& d) {
  for (NodeId v = 0; v < d.node_count(); ++v)
    if (d.out_edges(v).empty() && d.in_edges(v).empty()) return true;
  return false;
}

void cross_check_max_sink(const Digraph& d, const std::vector<long long>& w,
                          bool against_oracle) {
  if (has_isolated(d)) {
    // no edge or circuit can cover an isolated node, so the min-max dual
    // cannot exist and the optimizer rejects the input
    CHECK_THROWS_AS(max_sink_stable(d, w), input_error);
    return;
  }
  MinMaxResult r = max_sink_stable(d, w);
  long long primal = 0;
  NodeSet s(d.node_count());
  for (NodeId v = 0; v < d.node_count(); ++v)
    if (r.primal[v] > 0) {
      CHECK(r.primal[v] == 1);
      s.add(v);
      primal += w[v];
    }
  CHECK(primal == r.value);
  CHECK(oracle::condition_k_sink(d, s, 1));
  check_minmax_dual(d, r, 1);
  if (against_oracle) CHECK(r.value == oracle::max_sink_stable_value(d, w));
}

void cross_check_k_union(const Digraph& d, const std::vector<long long>& w, int k,
                         bool against_oracle) {
  if (has_isolated(d)) {
    CHECK_THROWS_AS(k_union_max_sink(d, w, k), input_error);
    return;
  }
  auto [r, part] = k_union_max_sink(d, w, k);
  long long covered = 0;
  for (size_t i = 0; i < part.classes.size(); ++i) {
    Digraph flipped = reverse_edges(d, family_union(d, part.families[i]));
    for (NodeId v : part.classes[i].ids()) {
      CHECK(flipped.out_edges(v).empty());
      covered += w[v];
    }
  }
  CHECK(covered == r.value);
  CHECK(r.dual_edges.empty());
  check_minmax_dual(d, r, k);
  if (against_oracle) CHECK(r.value == oracle::k_union_max_sink_value(d, w, k));
}

}  // namespace

TEST_CASE("exhaustive n = 3: stability, partitions, optima, dicut unions") {
  const std::vector<long long> unit(3, 1);
  for (unsigned long long mask = 0; mask < (1ULL << ordered_pairs(3)); ++mask) {
    Digraph d = nth_digraph(3, mask);
    for (unsigned sm = 0; sm < 8; ++sm) {
      NodeSet s = nth_subset(3, sm);
      cross_check_sink_stable(d, s, /*by_search=*/true);
      cross_check_partition(d, s, 2);
      cross_check_partition(d, s, 3);
    }
    cross_check_max_sink(d, unit, true);
    for (unsigned fm = 0; fm < (1U << d.edge_count()); ++fm) {
      EdgeSet f(d.edge_count());
      for (int e = 0; e < d.edge_count(); ++e)
        if (fm >> e & 1) f.add(e);
      bool expected = oracle::dicut_union_by_search(d, f);
      auto res = recognize_dicut_union(d, f);
      if (auto* fam = std::get_if<DicutFamily>(&res)) {
        CHECK(expected);
        CHECK(family_union(d, *fam) == f);
      } else {
        CHECK(!expected);
        const FViolation& v = std::get<FViolation>(res);
        validate_circuit(d, v.circuit);
        CHECK(restrict_counts(v.circuit, f) == std::pair<int, int>{v.phi_F, v.beta_F});
        CHECK(v.phi_F != v.beta_F);
      }
    }
  }
}

TEST_CASE("exhaustive n = 4: stability condition, partitions, max sink-stable") {
  const std::vector<long long> unit(4, 1);
  for (unsigned long long mask = 0; mask < (1ULL << ordered_pairs(4)); ++mask) {
    Digraph d = nth_digraph(4, mask);
    for (unsigned sm = 0; sm < 16; ++sm)
      cross_check_sink_stable(d, nth_subset(4, sm), /*by_search=*/false);
    // sampled subsets for the heavier k = 2 cross-check
    cross_check_partition(d, nth_subset(4, static_cast<unsigned>(mask % 16)), 2);
    cross_check_max_sink(d, unit, true);
    EdgeSet f = flat_transversal(d);
    CHECK(is_transversal(d, f));
    CHECK(is_flat(d, f));
  }
}

TEST_CASE("random n <= 6: weighted optima and k-unions vs oracles") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> nd(2, 6);
  for (int it = 0; it < 500; ++it) {
    int n = nd(rng);
    Digraph d = random_digraph(rng, n, 0.35);
    std::vector<long long> w = random_weights(rng, n, 0, 4);
    cross_check_max_sink(d, w, true);
    if (it % 3 == 0) {
      cross_check_k_union(d, w, 2, true);
      cross_check_k_union(d, w, 3, it % 9 == 0);
    }
  }
}

TEST_CASE("random strong digraphs: F-stability, Gallai, covers, cyclic orders") {
  std::mt19937 rng(911);
  int done = 0;
  while (done < 120) {
    int n = 2 + static_cast<int>(rng() % 5);
    Digraph d = random_digraph(rng, n, 0.5);
    if (!is_strongly_connected(d) || d.edge_count() == 0) continue;
    ++done;
    EdgeSet f = flat_transversal(d);
    std::vector<long long> w = random_weights(rng, n, 0, 3);

    MinMaxResult r = max_F_stable(d, f, w);
    CHECK(r.value == oracle::max_F_stable_value(d, f, w));
    long long dual_f = 0;
    for (const auto& k : r.dual) {
      validate_dicircuit(d, k.circuit);
      long long fc = 0;
      for (EdgeId e : k.circuit.edges)
        if (f.contains(e)) ++fc;
      dual_f += k.mult * fc;
    }
    CHECK(dual_f == r.value);

    int k = 1 + static_cast<int>(rng() % 3);
    auto [ru, part] = k_union_max_F(d, f, w, k);
    CHECK(ru.value == oracle::k_union_max_F_value(d, f, w, k));
    NodeSet su(n);
    for (const NodeSet& cls : part.classes)
      for (NodeId v : cls.ids()) su.add(v);
    CHECK(oracle::f_stable_union_by_search(d, f, su, k));

    // membership answers on random stable sets
    NodeSet s = nth_subset(n, rng() % (1U << n));
    if (oracle::is_stable(d, s)) {
      auto mem = check_F_stable_union(d, f, s, k);
      CHECK(std::holds_alternative<Partition>(mem) ==
            oracle::f_stable_union_by_search(d, f, s, k));

      // cover number is consistent with the membership test
      CoverNumber cn = min_F_stable_cover_number(d, f, s);
      if (s.empty()) {
        CHECK(cn.k_star == 0);
      } else {
        CHECK(
            std::holds_alternative<Partition>(check_F_stable_union(d, f, s, cn.k_star)));
        if (cn.k_star > 1)
          CHECK(!std::holds_alternative<Partition>(
              check_F_stable_union(d, f, s, cn.k_star - 1)));
      }
    }

    // di-circuit covers bounded by the stability number
    NodeSet u = nth_subset(n, rng() % (1U << n));
    bool u_on_circuit = true;
    for (NodeId v : u.ids()) {
      bool on = false;
      for (const DiCircuit& kc : enumerate_dicircuits(d))
        if (kc.node_set(n).contains(v)) on = true;
      if (!on) u_on_circuit = false;
    }
    if (u_on_circuit) {
      DiCircuitCover cover = cover_by_alpha_dicircuits(d, u);
      CHECK((long long)cover.family.size() <= oracle::max_stable_value(d, u));
      NodeSet hit(n);
      for (const DiCircuit& kc : cover.family)
        for (NodeId v : kc.nodes)
          if (u.contains(v)) hit.add(v);
      CHECK(hit == u);
    }

    // chromatic bound against the longest enumerated di-circuit
    if (n >= 2) {
      std::vector<NodeSet> classes = bondy_chromatic_bound(d);
      int longest = 0;
      for (const DiCircuit& kc : enumerate_dicircuits(d))
        longest = std::max(longest, kc.length());
      CHECK((int)classes.size() <= longest);
    }

    // coherent cyclic order: every di-circuit winds, every edge on an
    // index-1 di-circuit
    CyclicOrder order = coherent_cyclic_order(d);
    std::vector<char> edge_ok(d.edge_count(), 0);
    for (const DiCircuit& kc : enumerate_dicircuits(d)) {
      int ind = index(d, order, kc);
      CHECK(ind >= 1);
      if (ind == 1)
        for (EdgeId e : kc.edges) edge_ok[e] = 1;
    }
    for (EdgeId e = 0; e < d.edge_count(); ++e) CHECK(edge_ok[e]);
  }
}

TEST_CASE("random small strong digraphs: Gallai min-max vs odometer") {
  std::mt19937 rng(7);
  int done = 0;
  while (done < 60) {
    int n = 2 + static_cast<int>(rng() % 3);
    Digraph d = random_digraph(rng, n, 0.6);
    if (!is_strongly_connected(d) || d.edge_count() == 0) continue;
    ++done;
    std::vector<long long> c = random_weights(rng, d.edge_count(), 0, 2);
    std::vector<long long> w = random_weights(rng, n, 0, 3);
    long long cap = 0;
    for (const DiCircuit& k : enumerate_dicircuits(d))
      cap = std::max(cap, total_cost(c, k));
    MinMaxResult r = gallai_min_max(d, c, w);
    CHECK(r.value == oracle::gallai_max_value(d, c, w, cap));
    long long dual_cost = 0;
    for (const auto& k : r.dual) {
      validate_dicircuit(d, k.circuit);
      dual_cost += k.mult * total_cost(c, k.circuit);
    }
    CHECK(dual_cost == r.value);
  }
}

TEST_CASE("random n <= 8: certificates stay consistent at larger sizes") {
  std::mt19937 rng(424242);
  for (int it = 0; it < 200; ++it) {
    int n = 7 + static_cast<int>(rng() % 2);
    Digraph d = random_digraph(rng, n, 0.18);
    std::vector<long long> w = random_weights(rng, n, 0, 3);
    bool small_enough = n <= 7 && it % 4 == 0;
    cross_check_max_sink(d, w, small_enough);
    if (it % 5 == 0) cross_check_k_union(d, w, 2, small_enough);
    for (unsigned sm : {rng() % (1U << n), rng() % (1U << n)})
      cross_check_sink_stable(d, nth_subset(n, sm), false);
  }
}

TEST_CASE("random posets: antichain unions vs exhaustive coloring") {
  std::mt19937 rng(5150);
  int done = 0;
  while (done < 60) {
    int n = 3 + static_cast<int>(rng() % 4);
    // random relation on i < j, then transitive closure
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) rel[i][j] = rng() % 3 == 0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (rel[i][k] && rel[k][j]) rel[i][j] = 1;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][j]) edges.push_back({i, j});
    Digraph poset(n, std::move(edges));
    ++done;
    for (int k = 1; k <= 3; ++k) {
      GreeneKleitman r = greene_kleitman(poset, k);
      CHECK(r.value == oracle::greene_kleitman_value(poset, k));
      // chains are disjoint and totally ordered; the dual identity holds
      std::vector<char> used(n, 0);
      long long chain_sum = 0;
      for (const std::vector<NodeId>& chain : r.chains) {
        CHECK((int)chain.size() >= k);
        for (size_t i = 0; i < chain.size(); ++i) {
          CHECK(!used[chain[i]]);
          used[chain[i]] = 1;
          if (i + 1 < chain.size()) CHECK(rel[chain[i]][chain[i + 1]]);
        }
        chain_sum += std::min<long long>(k, chain.size());
      }
      long long uncovered = 0;
      for (int v = 0; v < n; ++v)
        if (!used[v]) ++uncovered;
      CHECK(chain_sum + uncovered == r.value);
    }
  }
}
