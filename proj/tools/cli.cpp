#include "cli.hpp"

#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "sinkstable/json_io.hpp"
#include "sinkstable/oracle.hpp"

namespace sinkstable::cli {

namespace {

using io::json;

struct Opts {
  std::string input;
  std::string input2;
  std::string set;
  std::string edge_set;
  std::string weights;
  std::string check;
  std::string format = "json";
  int k = 1;
  int oracle_max_n = 10;
  bool verify = false;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  return json::parse(in);  // parse_error reports the byte offset
}

std::vector<long long> weights_for(const Opts& o, int n,
                                   const std::vector<std::string>& names) {
  if (o.weights.empty()) return std::vector<long long>(n, 1);
  return io::parse_weights(json::parse(o.weights), n, names);
}

json with_kind(const char* kind, json j) {
  j["kind"] = kind;
  return j;
}

void emit(const Opts& o, std::ostream& out, json j, const std::string& text) {
  if (o.format == "text") {
    out << text << "\n";
    return;
  }
  json envelope = {{"schema", io::kSchema}};
  envelope.update(j);
  out << envelope.dump(2) << "\n";
}

std::string plural(long long n, const std::string& word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

void verify_sinks(const Digraph& d, const NodeSet& s, const DicutFamily& fam) {
  Digraph flipped = reverse_edges(d, family_union(d, fam));
  for (int v : s.ids())
    if (!flipped.out_edges(v).empty())
      throw std::logic_error("certificate does not make the set all-sink");
}

json minmax_payload(const Digraph& d, const MinMaxResult& r, const Opts& o,
                    const std::vector<long long>& w) {
  json j = io::minmax_json(d, r);
  if (o.verify) {
    long long primal = 0;
    for (NodeId v = 0; v < d.node_count(); ++v) primal += w[v] * r.primal[v];
    if (primal != r.value) throw std::logic_error("primal value mismatch");
    j["verified"] = true;
  }
  return j;
}

int dispatch(const std::string& verb, const Opts& o, std::ostream& out) {
  if (verb == "check-sink-stable" || verb == "partition-k") {
    Digraph d = io::parse_digraph(load_json(o.input));
    NodeSet s = io::parse_node_csv(o.set, d.node_count(), d.names);
    int k = verb == "partition-k" ? o.k : 1;
    std::optional<CircuitViolation> bad;
    if (k <= 1) {
      try {
        auto res = check_sink_stable(d, s);
        if (auto* cert = std::get_if<StableCert>(&res)) {
          if (o.verify) verify_sinks(d, s, cert->family);
          emit(o, out,
               {{"kind", "dicut_family"},
                {"stable", true},
                {"set", io::node_set_json(s, d.names)},
                {"family", io::dicut_family_json(d, cert->family)}},
               "sink-stable via " + plural(cert->family.levels.size(), "dicut"));
          return 0;
        }
        bad = std::get<CircuitViolation>(res);
      } catch (const not_stable_error& e) {
        emit(o, out,
             {{"kind", "not_stable"},
              {"edge", io::edge_json(d, e.witness_edge)},
              {"stable", false}},
             std::string("not stable: ") + e.what());
        return 0;
      }
    } else {
      auto res = partition_k_sink_stable(d, s, k);
      if (auto* p = std::get_if<Partition>(&res)) {
        if (o.verify)
          for (size_t i = 0; i < p->classes.size(); ++i)
            verify_sinks(d, p->classes[i], p->families[i]);
        emit(o, out,
             {{"kind", "partition"}, {"k", k}, {"classes", io::partition_json(d, *p)}},
             "partitioned into " + plural(k, "sink-stable class"));
        return 0;
      }
      bad = std::get<CircuitViolation>(res);
    }
    if (o.verify) {
      int inter = 0;
      for (NodeId v : bad->circuit.nodes)
        if (s.contains(v)) ++inter;
      if (inter != bad->intersection || inter <= bad->k * bad->circuit.eta())
        throw std::logic_error("violation certificate mismatch");
    }
    emit(o, out,
         with_kind("violating_circuit", io::circuit_violation_json(d, *bad)),
         "violating circuit: intersection " + std::to_string(bad->intersection) + " > " +
             std::to_string(bad->k) + " * eta " + std::to_string(bad->eta));
    return 0;
  }

  if (verb == "check-f-stable") {
    Digraph d = io::parse_digraph(load_json(o.input));
    EdgeSet f = io::parse_edge_csv(o.edge_set, d);
    NodeSet s = io::parse_node_csv(o.set, d.node_count(), d.names);
    auto res = check_F_stable_union(d, f, s, o.k);
    if (auto* p = std::get_if<Partition>(&res)) {
      Digraph df = reverse_edges(d, f);
      if (o.verify)
        for (size_t i = 0; i < p->classes.size(); ++i)
          verify_sinks(df, p->classes[i], p->families[i]);
      emit(o, out,
           {{"kind", "partition"}, {"k", o.k}, {"classes", io::partition_json(df, *p)}},
           "union of " + plural(o.k, "F-stable set"));
    } else {
      const auto& v = std::get<DiCircuitViolation>(res);
      emit(o, out,
           with_kind("violating_dicircuit", io::dicircuit_violation_json(d, v)),
           "violating di-circuit: intersection " + std::to_string(v.intersection) + " > " +
               std::to_string(v.k) + " * |F∩K| " + std::to_string(v.f_count));
    }
    return 0;
  }

  if (verb == "flat-transversal") {
    Digraph d = io::parse_digraph(load_json(o.input));
    EdgeSet f = flat_transversal(d);
    if (o.verify && !(is_transversal(d, f) && is_flat(d, f)))
      throw std::logic_error("transversal verification failed");
    emit(o, out, {{"kind", "edge_set"}, {"edges", io::edge_set_json(d, f)}},
         "flat transversal of " + plural(f.count(), "edge"));
    return 0;
  }

  if (verb == "dicut-union" || verb == "dicut-equiv" || verb == "source-sequence") {
    Digraph d = io::parse_digraph(load_json(o.input));
    std::variant<DicutFamily, FViolation> res;
    if (verb == "dicut-equiv") {
      Digraph d2 = io::parse_digraph(load_json(o.input2));
      res = dicut_equivalent(d, d2);
    } else {
      res = recognize_dicut_union(d, io::parse_edge_csv(o.edge_set, d));
    }
    if (auto* fam = std::get_if<DicutFamily>(&res)) {
      if (verb == "source-sequence") {
        std::vector<NodeId> seq = source_sequence(d, *fam);
        if (o.verify &&
            !(replay_source_sequence(d, seq) == reverse_edges(d, family_union(d, *fam))))
          throw std::logic_error("sequence replay mismatch");
        emit(o, out,
             {{"kind", "source_sequence"},
              {"sequence", io::node_list_json(seq, d.names)},
              {"length", seq.size()}},
             "source sequence of length " + std::to_string(seq.size()));
      } else {
        if (o.verify) family_union(d, *fam);
        emit(o, out,
             {{"kind", "dicut_family"}, {"family", io::dicut_family_json(d, *fam)}},
             "union of " + plural(fam->levels.size(), "disjoint dicut"));
      }
    } else {
      const auto& v = std::get<FViolation>(res);
      emit(o, out,
           {{"kind", "violating_circuit"},
            {"circuit", io::circuit_json(d, v.circuit)},
            {"phi_F", v.phi_F},
            {"beta_F", v.beta_F}},
           "violating circuit: phi_F " + std::to_string(v.phi_F) + " != beta_F " +
               std::to_string(v.beta_F));
    }
    return 0;
  }

  if (verb == "cyclic-order" || verb == "check-cyclic-stable") {
    Digraph d = io::parse_digraph(load_json(o.input));
    CyclicOrder order = coherent_cyclic_order(d);
    if (verb == "cyclic-order") {
      emit(o, out,
           with_kind("cyclic_order", io::cyclic_order_json(d, order)),
           "coherent cyclic order with " + plural(order.backward.count(), "backward edge"));
      return 0;
    }
    NodeSet s = io::parse_node_csv(o.set, d.node_count(), d.names);
    auto res = check_cyclic_stable(d, order, s, o.k);
    json payload = {{"kind", res.index() == 0 ? "partition" : "violating_dicircuit"},
                    {"order", io::cyclic_order_json(d, order)}};
    if (auto* p = std::get_if<Partition>(&res)) {
      payload["classes"] = io::partition_json(reverse_edges(d, order.backward), *p);
      emit(o, out, payload, "cyclically " + std::to_string(o.k) + "-stable");
    } else {
      payload.update(io::dicircuit_violation_json(d, std::get<DiCircuitViolation>(res)));
      emit(o, out, payload, "not cyclically " + std::to_string(o.k) + "-stable");
    }
    return 0;
  }

  if (verb == "max-sink-stable" || verb == "max-f-stable" || verb == "k-union-max") {
    Digraph d = io::parse_digraph(load_json(o.input));
    std::vector<long long> w = weights_for(o, d.node_count(), d.names);
    if (verb == "max-sink-stable") {
      MinMaxResult r = max_sink_stable(d, w);
      emit(o, out, with_kind("minmax", minmax_payload(d, r, o, w)),
           "max sink-stable value " + std::to_string(r.value));
    } else if (verb == "max-f-stable") {
      EdgeSet f = io::parse_edge_csv(o.edge_set, d);
      MinMaxResult r = max_F_stable(d, f, w);
      emit(o, out, with_kind("minmax", minmax_payload(d, r, o, w)),
           "max F-stable value " + std::to_string(r.value));
    } else {
      std::pair<MinMaxResult, Partition> res =
          o.edge_set.empty()
              ? k_union_max_sink(d, w, o.k)
              : k_union_max_F(d, io::parse_edge_csv(o.edge_set, d), w, o.k);
      json payload = with_kind("minmax", minmax_payload(d, res.first, o, w));
      payload["partition"] = io::partition_json(d, res.second);
      emit(o, out, payload,
           "max " + std::to_string(o.k) + "-union value " + std::to_string(res.first.value));
    }
    return 0;
  }

  if (verb == "cover-dicircuits") {
    Digraph d = io::parse_digraph(load_json(o.input));
    NodeSet u(d.node_count());
    if (o.set.empty())
      for (NodeId v = 0; v < d.node_count(); ++v) u.add(v);
    else
      u = io::parse_node_csv(o.set, d.node_count(), d.names);
    DiCircuitCover cover = cover_by_alpha_dicircuits(d, u);
    json fam = json::array();
    for (const DiCircuit& k : cover.family) fam.push_back(io::dicircuit_json(d, k));
    emit(o, out,
         {{"kind", "dicircuit_cover"},
          {"family", fam},
          {"witness", io::node_set_json(cover.witness, d.names)}},
         plural(cover.family.size(), "di-circuit") + " covering U, witness stable set of " +
             std::to_string(cover.witness.count()));
    return 0;
  }

  if (verb == "chromatic-bound") {
    Digraph d = io::parse_digraph(load_json(o.input));
    std::vector<NodeSet> classes = bondy_chromatic_bound(d);
    json cls = json::array();
    for (const NodeSet& c : classes) cls.push_back(io::node_set_json(c, d.names));
    emit(o, out, {{"kind", "coloring"}, {"classes", cls}},
         "proper coloring with " + plural(classes.size(), "stable class"));
    return 0;
  }

  if (verb == "clar" || verb == "k-resonant") {
    PlaneBipartiteGraph g = io::parse_plane_graph(load_json(o.input));
    if (verb == "clar") {
      ClarResult r = clar_number(g);
      json j = io::clar_json(g, r);
      if (o.verify) {
        if (!check_resonant(g, r.resonant)) throw std::logic_error("resonant re-check failed");
        j["verified"] = true;
      }
      emit(o, out, with_kind("clar", j),
           "Clar number " + std::to_string(r.value));
    } else {
      KResonant r = k_resonant_max(g, o.k);
      emit(o, out, with_kind("k_resonant", io::k_resonant_json(g, r)),
           "max " + std::to_string(o.k) + "-resonant family of " + plural(r.value, "face"));
    }
    return 0;
  }

  if (verb == "greene-kleitman") {
    Digraph d = io::parse_digraph(load_json(o.input));
    GreeneKleitman r = greene_kleitman(d, o.k);
    json j = io::greene_kleitman_json(d, r);
    if (o.verify) {
      std::vector<char> used(d.node_count(), 0);
      long long covered = 0;
      for (const std::vector<NodeId>& chain : r.chains)
        for (NodeId v : chain) {
          if (used[v]) throw std::logic_error("chains are not disjoint");
          used[v] = 1;
          ++covered;
        }
      if (static_cast<long long>(o.k) * static_cast<long long>(r.chains.size()) +
              (d.node_count() - covered) !=
          r.value)
        throw std::logic_error("chain value formula mismatch");
      j["verified"] = true;
    }
    emit(o, out, with_kind("greene_kleitman", j),
         "max " + std::to_string(o.k) + "-antichain union of size " + std::to_string(r.value));
    return 0;
  }

  if (verb == "oracle") {
    json j = load_json(o.input);
    json payload = {{"kind", "oracle"}, {"check", o.check}};
    std::string text;
    if (o.check == "clar" || o.check == "k-resonant") {
      PlaneBipartiteGraph g = io::parse_plane_graph(j);
      if (g.n > 2 * o.oracle_max_n) throw input_error("instance exceeds --oracle-max-n");
      long long val = o.check == "clar" ? oracle::clar_value(g)
                                        : oracle::k_resonant_value(g, o.k);
      payload["value"] = val;
      text = o.check + " = " + std::to_string(val);
    } else {
      Digraph d = io::parse_digraph(j);
      if (d.node_count() > o.oracle_max_n) throw input_error("instance exceeds --oracle-max-n");
      auto node_set = [&] { return io::parse_node_csv(o.set, d.node_count(), d.names); };
      std::vector<long long> w = weights_for(o, d.node_count(), d.names);
      if (o.check == "sink-stable") {
        if (d.edge_count() > 20) throw input_error("too many edges for the search oracle");
        payload["result"] = oracle::sink_stable_by_search(d, node_set());
      } else if (o.check == "condition") {
        payload["result"] = oracle::condition_k_sink(d, node_set(), o.k);
      } else if (o.check == "partition-k") {
        payload["result"] = oracle::partition_k_by_search(d, node_set(), o.k);
      } else if (o.check == "max-sink") {
        payload["value"] = oracle::max_sink_stable_value(d, w);
      } else if (o.check == "max-f") {
        payload["value"] = oracle::max_F_stable_value(d, io::parse_edge_csv(o.edge_set, d), w);
      } else if (o.check == "k-union-max") {
        payload["value"] =
            o.edge_set.empty()
                ? oracle::k_union_max_sink_value(d, w, o.k)
                : oracle::k_union_max_F_value(d, io::parse_edge_csv(o.edge_set, d), w, o.k);
      } else if (o.check == "alpha") {
        NodeSet u(d.node_count());
        if (o.set.empty())
          for (NodeId v = 0; v < d.node_count(); ++v) u.add(v);
        else
          u = node_set();
        payload["value"] = oracle::max_stable_value(d, u);
      } else if (o.check == "greene-kleitman") {
        payload["value"] = oracle::greene_kleitman_value(d, o.k);
      } else {
        throw input_error("unknown oracle check: " + o.check);
      }
      text = "oracle " + o.check + ": " +
             (payload.contains("value") ? payload["value"].dump() : payload["result"].dump());
    }
    emit(o, out, payload, text);
    return 0;
  }

  throw input_error("unknown verb: " + verb);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certifying toolkit for sink-stable and F-stable sets"};
  app.require_subcommand(1);
  Opts o;
  const std::vector<std::string> verbs = {
      "check-sink-stable", "partition-k",    "check-f-stable",  "flat-transversal",
      "dicut-union",       "dicut-equiv",    "source-sequence", "cyclic-order",
      "check-cyclic-stable", "max-sink-stable", "max-f-stable", "k-union-max",
      "cover-dicircuits",  "chromatic-bound", "clar",           "k-resonant",
      "greene-kleitman",   "oracle"};
  for (const std::string& verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb);
    sub->add_option("input", o.input, "graph JSON file")->required();
    if (verb == "dicut-equiv")
      sub->add_option("input2", o.input2, "second orientation JSON file")->required();
    sub->add_option("--set", o.set, "node set (comma-separated ids or names)");
    sub->add_option("--edge-set", o.edge_set, "edge set (ids or name pairs)");
    sub->add_option("--k", o.k, "number of classes");
    sub->add_option("--weights", o.weights, "node weights as inline JSON");
    sub->add_option("--check", o.check, "oracle check name");
    sub->add_option("--oracle-max-n", o.oracle_max_n, "size guard for the oracle");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--verify", o.verify, "re-validate the emitted certificate");
  }

  std::vector<const char*> argv = {"sinkstable"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o, out);
  } catch (const json::parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace sinkstable::cli
