#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "streett/gen.hpp"
#include "streett/good_component.hpp"
#include "streett/mdp_streett.hpp"
#include "streett/oracles.hpp"
#include "test_util.hpp"

using namespace streett;
using namespace streett::testutil;

namespace {

Instance random_mdp(std::mt19937_64& seeds, Vertex max_n, int max_k, bool graph = false) {
  GenParams p;
  p.kind = graph ? GenParams::Kind::Graph : GenParams::Kind::Mdp;
  p.n = 1 + static_cast<Vertex>(seeds() % max_n);
  p.m = std::min<long long>(seeds() % (3 * p.n + 1), static_cast<long long>(p.n) * p.n);
  p.k = static_cast<int>(seeds() % (max_k + 1));
  p.seed = seeds();
  p.p_random = 0.35;
  return generate_instance(p);
}

std::optional<VertexSet> gec_on_whole(const MDPModel& m, const StreettSpec& spec,
                                      const VertexSet& mec) {
  SplitInstance s = split_vertices(m, spec);
  VertexSet image;
  for (Vertex v : mec) {
    image.push_back(split_in(v));
    image.push_back(split_out(v));
  }
  return good_end_component(s.model, s.spec, image);
}

}  // namespace

TEST_CASE("good_end_component: two-vertex player cycle") {
  MDPModel m = make_graph(2, {{0, 1}, {1, 0}});
  auto x = gec_on_whole(m, make_spec({{0}}, {{1}}), {0, 1});
  CHECK(x == VertexSet{0, 1});
}

TEST_CASE("good_end_component: vacuous pair on an isolated self-loop MEC") {
  MDPModel m = make_mdp("PRP", {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
  StreettSpec spec = make_spec({{0}}, {{1}});
  MecDecomposition dec = mec_decomposition(m);
  REQUIRE(dec.mecs == std::vector<VertexSet>{{2}});
  auto x = gec_on_whole(m, spec, {2});
  CHECK(x == VertexSet{2});
}

TEST_CASE("good_end_component: none when every candidate hits a grant-free request") {
  MDPModel m = make_graph(2, {{0, 1}, {1, 0}});
  StreettSpec spec = make_spec({{0}, {1}}, {{}, {}});
  CHECK_FALSE(gec_on_whole(m, spec, {0, 1}).has_value());
  std::mt19937_64 seeds(99);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 60; ++t) {
    Instance inst = random_mdp(seeds, 9, 3);
    if (exhaustive_good_ec_exists(inst.model, inst.spec)) continue;
    ++checked;
    for (const VertexSet& mec : mec_decomposition(inst.model).mecs)
      CHECK_FALSE(gec_on_whole(inst.model, inst.spec, mec).has_value());
  }
  CHECK(checked > 0);
}

TEST_CASE("winning_set_mdp: examples") {
  // pure-graph input agrees with the graph algorithm
  MDPModel g = make_graph(3, {{0, 1}, {1, 0}, {2, 2}});
  StreettSpec spec = make_spec({{0}, {2}}, {{1}, {}});
  CHECK(winning_set_mdp(g, spec) == winning_set_graph(g, spec));

  // k = 0 on the two self-loop MECs: everything wins
  MDPModel m1 = make_mdp("RPP", {{0, 1}, {0, 2}, {1, 1}, {2, 2}});
  CHECK(winning_set_mdp(m1, StreettSpec{}) == VertexSet{0, 1, 2});

  // no satisfying MEC
  MDPModel bad = make_graph(1, {{0, 0}});
  CHECK(winning_set_mdp(bad, make_spec({{0}}, {{}})) == VertexSet{});
}

TEST_CASE("differential: winning_set_mdp equals the oracle") {
  std::mt19937_64 seeds(321);
  for (int t = 0; t < 250; ++t) {
    Instance inst = random_mdp(seeds, 30, 3);
    CHECK(winning_set_mdp(inst.model, inst.spec) ==
          oracle_mdp_streett(inst.model, inst.spec));
  }
}

TEST_CASE("differential: graph inputs also match winning_set_graph") {
  std::mt19937_64 seeds(654);
  for (int t = 0; t < 120; ++t) {
    Instance inst = random_mdp(seeds, 25, 3, true);
    VertexSet fast = winning_set_mdp(inst.model, inst.spec);
    CHECK(fast == winning_set_graph(inst.model, inst.spec));
    CHECK(fast == oracle_mdp_streett(inst.model, inst.spec));
  }
}

TEST_CASE("split-coordinate coherence and witness structure") {
  std::mt19937_64 seeds(987);
  for (int t = 0; t < 80; ++t) {
    Instance inst = random_mdp(seeds, 14, 3);
    MdpSolveResult res = winning_set_mdp_full(inst.model, inst.spec);
    for (size_t i = 0; i < res.witnesses.size(); ++i) {
      const VertexSet& x = res.witnesses[i];
      CHECK(!x.empty());
      CHECK(is_subset(x, res.satisfying_mecs[i]));
      // the witness is a non-trivial end-component satisfying every pair
      CHECK(tarjan_sccs(inst.model, x).size() == 1);
      bool has_edge = x.size() > 1;
      for (Vertex v : x) {
        if (inst.model.has_edge(v, v)) has_edge = true;
        if (!inst.model.is_random(v)) continue;
        for (Vertex w : inst.model.out(v)) CHECK(set_contains(x, w));
      }
      CHECK(has_edge);
      for (int j = 0; j < inst.spec.pair_count(); ++j) {
        if (set_intersection(inst.spec.L[j], x).empty()) continue;
        CHECK(!set_intersection(inst.spec.U[j], x).empty());
      }
    }
  }
}

TEST_CASE("requested deletions are player-1 edges only; determinism across seeds") {
  std::mt19937_64 seeds(111);
  for (int t = 0; t < 60; ++t) {
    Instance inst = random_mdp(seeds, 20, 3);
    MdpSolveResult a = winning_set_mdp_full(inst.model, inst.spec, 3);
    MdpSolveResult b = winning_set_mdp_full(inst.model, inst.spec, 888);
    CHECK(a.winning == b.winning);
    CHECK(a.deletion_trace == b.deletion_trace);
    // every (v_in, v_out) deletion in the trace stems from a bad-vertex
    // request; such edges always have a player-1 source in a split instance
    SplitInstance split = split_vertices(inst.model, inst.spec);
    for (const Edge& e : a.deletion_trace) {
      CHECK(split.model.has_edge(e.from, e.to));
      if (e.from % 2 == 0) {
        CHECK(e.to == e.from + 1);
        CHECK(split.model.is_player(e.from));
      }
    }
  }
}

TEST_CASE("equivalence_check_split agrees on random instances") {
  MDPModel loop = make_graph(1, {{0, 0}});
  CHECK(equivalence_check_split(loop, make_spec({{0}}, {{0}})));
  CHECK(equivalence_check_split(loop, make_spec({{0}}, {{}})));
  std::mt19937_64 seeds(246);
  for (int t = 0; t < 150; ++t) {
    Instance inst = random_mdp(seeds, 12, 3);
    CHECK(equivalence_check_split(inst.model, inst.spec));
  }
}
