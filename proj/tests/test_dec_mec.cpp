#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "streett/dec_mec.hpp"
#include "streett/gen.hpp"
#include "streett/oracles.hpp"
#include "test_util.hpp"

using namespace streett;
using namespace streett::testutil;

namespace {

Instance random_mdp(std::mt19937_64& seeds, Vertex max_n) {
  GenParams p;
  p.kind = GenParams::Kind::Mdp;
  p.n = 2 + static_cast<Vertex>(seeds() % (max_n - 1));
  p.m = std::min<long long>(seeds() % (3 * p.n + 1), static_cast<long long>(p.n) * p.n);
  p.k = 0;
  p.seed = seeds();
  p.p_random = 0.2 + 0.4 * static_cast<double>(seeds() % 100) / 100.0;
  return generate_instance(p);
}

MDPModel residual(const MDPModel& m, const std::set<Edge>& deleted) {
  std::vector<Edge> edges;
  for (const Edge& e : m.edges())
    if (!deleted.count(e)) edges.push_back(e);
  return MDPModel(m.vertex_count(), m.owners(), std::move(edges));
}

std::vector<Edge> player_edges(const MDPModel& m) {
  std::vector<Edge> out;
  for (const Edge& e : m.edges())
    if (m.is_player(e.from)) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("init: pure graph keeps exactly the MEC-internal edges") {
  MDPModel sc = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  DecMecEngine e1(sc);
  CHECK(e1.scc().live_edge_count() == 3);

  MDPModel m1 = make_mdp("RPP", {{0, 1}, {0, 2}, {1, 1}, {2, 2}});
  DecMecEngine e2(m1);
  CHECK(e2.scc().live_edge_count() == 2);
  CHECK(e2.scc().has_live_edge(1, 1));
  CHECK(e2.scc().has_live_edge(2, 2));

  MDPModel acyc = make_mdp("PP", {{0, 1}});
  DecMecEngine e3(acyc);
  CHECK(e3.scc().live_edge_count() == 0);
}

TEST_CASE("delete_player_edge: spec walkthrough") {
  MDPModel m = make_mdp("PPR", {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {2, 1}});
  DecMecEngine e(m);
  CHECK(e.current_mecs() == std::vector<VertexSet>{{0, 1, 2}});
  auto res = e.delete_player_edge(0, 2);
  REQUIRE(res.new_mecs.size() == 1);
  CHECK(e.members_sorted(res.new_mecs[0]) == VertexSet{0, 1});
  CHECK(res.orphaned == VertexSet{2});
  CHECK(e.current_mecs() == std::vector<VertexSet>{{0, 1}});
  CHECK(e.same_mec(0, 1));
  CHECK_FALSE(e.same_mec(0, 2));
}

TEST_CASE("delete_player_edge: edge outside every MEC is a no-op") {
  MDPModel m = make_mdp("RPP", {{0, 1}, {0, 2}, {1, 1}, {2, 2}, {1, 2}});
  DecMecEngine e(m);
  auto res = e.delete_player_edge(1, 2);
  CHECK(res.new_mecs.empty());
  CHECK(res.orphaned.empty());
  CHECK(e.deletion_trace().empty());
  CHECK(e.current_mecs() == std::vector<VertexSet>{{1}, {2}});
}

TEST_CASE("delete_player_edge: MEC that stays strongly connected is unchanged") {
  MDPModel m = make_graph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  DecMecEngine e(m);
  auto res = e.delete_player_edge(0, 2);
  CHECK(res.new_mecs.empty());
  CHECK(res.orphaned.empty());
  CHECK(e.current_mecs() == std::vector<VertexSet>{{0, 1, 2}});
}

TEST_CASE("delete_player_edge: singleton MEC dissolves when its self-loop goes") {
  MDPModel m = make_graph(1, {{0, 0}});
  DecMecEngine e(m);
  auto res = e.delete_player_edge(0, 0);
  CHECK(res.new_mecs.empty());
  CHECK(res.orphaned == VertexSet{0});
  CHECK(e.current_mecs().empty());
}

TEST_CASE("delete_player_edge: error paths") {
  MDPModel m = make_mdp("PR", {{0, 1}, {1, 0}});
  DecMecEngine e(m);
  CHECK_THROWS_AS(e.delete_player_edge(1, 0), std::invalid_argument);  // random source
  CHECK_THROWS_AS(e.delete_player_edge(0, 0), std::invalid_argument);  // unknown edge
  e.delete_player_edge(0, 1);
  CHECK_THROWS_AS(e.delete_player_edge(0, 1), std::invalid_argument);  // already deleted

  DecMecEngine r(m, 0, DecMecEngine::DeleteMode::Replay);
  r.delete_player_edge(0, 1);
  auto res = r.delete_player_edge(0, 1);
  CHECK(res.new_mecs.empty());
}

TEST_CASE("differential: full random deletion sequences against the static oracle") {
  std::mt19937_64 seeds(8088);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_mdp(seeds, 40);
    const MDPModel& m = inst.model;
    DecMecEngine e(m);
    std::vector<Edge> order = player_edges(m);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[seeds() % i]);

    std::set<Edge> deleted;
    VertexSet orphans_ever;
    std::set<VertexSet> announced_ever;
    for (const Edge& del : order) {
      size_t trace_before = e.deletion_trace().size();
      auto res = e.delete_player_edge(del.from, del.to);
      deleted.insert(del);
      MDPModel res_model = residual(m, deleted);
      MecDecomposition oracle = oracle_mec(res_model);

      CHECK(e.current_mecs() == oracle.mecs);

      // same-MEC queries agree with the oracle partition
      std::vector<int32_t> mec_of(m.vertex_count(), -1);
      for (size_t i = 0; i < oracle.mecs.size(); ++i)
        for (Vertex v : oracle.mecs[i]) mec_of[v] = static_cast<int32_t>(i);
      for (Vertex a = 0; a < m.vertex_count(); ++a)
        for (Vertex b = a + 1; b < m.vertex_count(); ++b)
          CHECK(e.same_mec(a, b) == (mec_of[a] != -1 && mec_of[a] == mec_of[b]));

      // announced new MECs are current MECs, never announced twice
      for (SccId h : res.new_mecs) {
        VertexSet ms = e.members_sorted(h);
        CHECK(std::find(oracle.mecs.begin(), oracle.mecs.end(), ms) != oracle.mecs.end());
        CHECK_FALSE(announced_ever.count(ms));
        announced_ever.insert(ms);
      }

      // no edge inside a MEC of the current MDP was deleted in this update
      for (size_t i = trace_before; i < e.deletion_trace().size(); ++i) {
        const Edge& de = e.deletion_trace()[i];
        if (de == del) continue;
        for (const VertexSet& mec : oracle.mecs)
          CHECK_FALSE((set_contains(mec, de.from) && set_contains(mec, de.to)));
      }

      // orphaned vertices never reappear in any later MEC
      orphans_ever = set_union(orphans_ever, res.orphaned);
      for (const VertexSet& mec : oracle.mecs)
        CHECK(set_intersection(mec, orphans_ever).empty());
    }
    // only random-edge MECs can survive the deletion of every player edge
    for (const VertexSet& mec : e.current_mecs())
      for (Vertex v : mec) CHECK(m.is_random(v));
  }
}

TEST_CASE("worklist invariants on small instances") {
  std::mt19937_64 seeds(1234);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_mdp(seeds, 12);
    const MDPModel& m = inst.model;
    DecMecEngine e(m);
    std::vector<Edge> order = player_edges(m);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[seeds() % i]);

    std::set<Edge> deleted;
    for (const Edge& del : order) {
      deleted.insert(del);
      MDPModel res_model = residual(m, deleted);
      std::vector<VertexSet> oracle_mecs = oracle_mec(res_model).mecs;
      e.set_observer([&](const DecMecEngine& eng,
                         const std::deque<std::vector<SccId>>& pending) {
        // (b) every non-trivial SCC of the pure graph that is not a MEC of
        //     the current MDP sits in the worklist
        std::set<SccId> pending_ids;
        for (const auto& lst : pending)
          for (SccId h : lst) pending_ids.insert(h);
        for (SccId c = 0; c < static_cast<SccId>(eng.scc().component_count()); ++c) {
          if (eng.scc().is_trivial(c)) continue;
          VertexSet ms = eng.scc().members_sorted(c);
          bool is_mec =
              std::find(oracle_mecs.begin(), oracle_mecs.end(), ms) != oracle_mecs.end();
          if (!is_mec) CHECK(pending_ids.count(c));
        }
        // (c) edges from the listed SCCs stay within the listed SCCs
        for (const auto& lst : pending) {
          std::set<SccId> in_list(lst.begin(), lst.end());
          for (SccId h : lst)
            for (Vertex v : eng.scc().members(h))
              for (const auto& he : eng.scc().live_out(v))
                CHECK(in_list.count(eng.scc().rep(he.other)));
        }
      });
      e.delete_player_edge(del.from, del.to);
      e.set_observer({});
      CHECK(e.current_mecs() == oracle_mecs);
    }
  }
}

TEST_CASE("differential at larger scale: long deletion sequences") {
  std::mt19937_64 seeds(50505);
  for (int trial = 0; trial < 5; ++trial) {
    GenParams p;
    p.kind = GenParams::Kind::Mdp;
    p.n = 80 + static_cast<Vertex>(seeds() % 80);
    p.m = 3 * p.n;
    p.k = 0;
    p.seed = seeds();
    p.p_random = 0.35;
    Instance inst = generate_instance(p);
    const MDPModel& m = inst.model;
    DecMecEngine e(m);
    std::vector<Edge> order = player_edges(m);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[seeds() % i]);
    std::set<Edge> deleted;
    int checked = 0;
    for (const Edge& del : order) {
      e.delete_player_edge(del.from, del.to);
      deleted.insert(del);
      // full oracle comparison every few steps keeps this fast
      if (++checked % 5 != 0 && deleted.size() != order.size()) continue;
      CHECK(e.current_mecs() == oracle_mec(residual(m, deleted)).mecs);
    }
  }
}

TEST_CASE("determinism: traces and announcements identical across seeds") {
  std::mt19937_64 seeds(777);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_mdp(seeds, 25);
    std::vector<Edge> order = player_edges(inst.model);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[seeds() % i]);
    DecMecEngine a(inst.model, 1);
    DecMecEngine b(inst.model, 424242);
    for (const Edge& del : order) {
      auto ra = a.delete_player_edge(del.from, del.to);
      auto rb = b.delete_player_edge(del.from, del.to);
      CHECK(ra.orphaned == rb.orphaned);
      std::vector<VertexSet> ma, mb;
      for (SccId h : ra.new_mecs) ma.push_back(a.members_sorted(h));
      for (SccId h : rb.new_mecs) mb.push_back(b.members_sorted(h));
      CHECK(ma == mb);
    }
    CHECK(a.deletion_trace() == b.deletion_trace());
    // every edge appears at most once in the trace
    auto trace = a.deletion_trace();
    std::sort(trace.begin(), trace.end());
    CHECK(std::adjacent_find(trace.begin(), trace.end()) == trace.end());
  }
}
