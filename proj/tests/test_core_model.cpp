#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "streett/attractor.hpp"
#include "streett/gen.hpp"
#include "streett/model.hpp"
#include "streett/parse.hpp"
#include "streett/scc.hpp"
#include "test_util.hpp"

using namespace streett;
using namespace streett::testutil;

namespace {

/// Exponential pairwise-reachability check used as the SCC oracle on tiny
/// instances: u,v strongly connected iff paths u->v and v->u exist.
bool reaches(const MDPModel& m, Vertex from, Vertex to) {
  return set_contains(graph_reach(m, {to}), from);
}

std::vector<VertexSet> scc_by_pairwise_reachability(const MDPModel& m) {
  std::vector<VertexSet> comps;
  std::vector<char> done(m.vertex_count(), 0);
  for (Vertex v = 0; v < m.vertex_count(); ++v) {
    if (done[v]) continue;
    VertexSet c;
    for (Vertex w = 0; w < m.vertex_count(); ++w)
      if (reaches(m, v, w) && reaches(m, w, v)) {
        c.push_back(w);
        done[w] = 1;
      }
    comps.push_back(c);
  }
  std::sort(comps.begin(), comps.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return comps;
}

/// Literal inductive definition of the random attractor, iterated to a
/// fixpoint, seeded from T (worklist semantics: no spontaneous stuck joins).
VertexSet attractor_by_iteration(const MDPModel& m, const VertexSet& working, VertexSet a) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : working) {
      if (set_contains(a, v)) continue;
      bool join = false;
      if (m.is_random(v)) {
        for (Vertex w : m.out(v))
          if (set_contains(working, w) && set_contains(a, w)) join = true;
      } else {
        join = false;
        bool any = false, all = true;
        for (Vertex w : m.out(v)) {
          if (!set_contains(working, w)) continue;
          any = true;
          if (!set_contains(a, w)) all = false;
        }
        join = any && all;
      }
      if (join) {
        a = set_union(a, {v});
        changed = true;
      }
    }
  }
  return a;
}

}  // namespace

TEST_CASE("parse: smallest well-formed instance") {
  Instance inst = parse_instance("MDP 1 1 1\nV 0 P\nE 0 0\nL 1 1 0\nU 1 1 0\n");
  CHECK(inst.model.vertex_count() == 1);
  CHECK(inst.model.edge_count() == 1);
  CHECK(inst.model.has_edge(0, 0));
  CHECK(inst.spec.L[0] == VertexSet{0});
  CHECK(inst.spec.U[0] == VertexSet{0});
}

TEST_CASE("parse: duplicate edge rejected") {
  CHECK_THROWS_WITH_AS(parse_instance("MDP 1 2 0\nV 0 P\nE 0 0\nE 0 0\n"),
                       doctest::Contains("duplicate edge"), ParseError);
}

TEST_CASE("parse: random sink rejected") {
  CHECK_THROWS_WITH_AS(parse_instance("MDP 2 1 0\nV 0 R\nV 1 P\nE 1 0\n"),
                       doctest::Contains("out-degree 0"), std::invalid_argument);
}

TEST_CASE("parse: further diagnostics") {
  CHECK_THROWS_WITH_AS(parse_instance("MDP 2 0 0\nV 0 P\nV 0 P\n"),
                       doctest::Contains("duplicate vertex"), ParseError);
  CHECK_THROWS_WITH_AS(parse_instance("MDP 1 1 0\nV 0 P\nE 0 3\n"),
                       doctest::Contains("out of range"), ParseError);
  CHECK_THROWS_WITH_AS(parse_instance("MDP 1 0 1\nV 0 P\nL 1 2 0\nU 1 0\n"),
                       doctest::Contains("count mismatch"), ParseError);
  CHECK_THROWS_AS(parse_instance("MDP 2 0 0\nV 0 P\n"), ParseError);
  CHECK_NOTHROW(parse_instance("# comment\nMDP 1 0 0\n# another\nV 0 P\n"));
}

TEST_CASE("parse/serialize round-trip is identity on canonical instances") {
  std::mt19937_64 seeds(7);
  for (int t = 0; t < 50; ++t) {
    GenParams p;
    p.kind = t % 2 ? GenParams::Kind::Mdp : GenParams::Kind::Graph;
    p.n = 1 + static_cast<Vertex>(seeds() % 20);
    p.m = std::min<long long>(seeds() % (p.n * 2 + 1), static_cast<long long>(p.n) * p.n);
    p.k = static_cast<int>(seeds() % 4);
    p.seed = seeds();
    Instance a = generate_instance(p);
    std::string text = serialize_instance(a.model, a.spec);
    Instance b = parse_instance(text);
    CHECK(serialize_instance(b.model, b.spec) == text);
  }
}

TEST_CASE("tarjan: single cycle and acyclic path") {
  MDPModel tri = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(tarjan_sccs(tri) == std::vector<VertexSet>{{0, 1, 2}});
  MDPModel path = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(tarjan_sccs(path) == std::vector<VertexSet>{{0}, {1}, {2}});
}

TEST_CASE("tarjan: two 2-cycles joined by an edge") {
  MDPModel m = make_graph(4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}});
  auto got = tarjan_sccs(m);
  CHECK(got == scc_by_pairwise_reachability(m));
  CHECK(got == std::vector<VertexSet>{{0, 1}, {2, 3}});
}

TEST_CASE("tarjan: partition and mutual reachability on random instances") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    GenParams p;
    p.n = 2 + static_cast<Vertex>(seed % 11);
    p.m = static_cast<long long>((seed * 7) % (2 * p.n));
    p.k = 0;
    p.seed = seed * 31 + 5;
    MDPModel m = generate_instance(p).model;
    auto sccs = tarjan_sccs(m);
    std::vector<int> count(m.vertex_count(), 0);
    for (const auto& c : sccs)
      for (Vertex v : c) ++count[v];
    for (Vertex v = 0; v < m.vertex_count(); ++v) CHECK(count[v] == 1);
    CHECK(sccs == scc_by_pairwise_reachability(m));
  }
}

TEST_CASE("tarjan: restriction considers only inside edges") {
  MDPModel m = make_graph(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}});
  CHECK(tarjan_sccs(m, {0, 1, 2}) == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(tarjan_sccs(m, {0, 2}) == std::vector<VertexSet>{{0}, {2}});
}

TEST_CASE("graph_reach basics") {
  MDPModel path = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(graph_reach(path, {}) == VertexSet{});
  CHECK(graph_reach(path, {2}) == VertexSet{0, 1, 2});
  MDPModel m = make_graph(3, {{0, 1}, {2, 2}});
  CHECK(graph_reach(m, {1}) == VertexSet{0, 1});
}

TEST_CASE("graph_reach equals pairwise reachability to some target") {
  std::mt19937_64 seeds(90);
  for (int t = 0; t < 40; ++t) {
    GenParams p;
    p.n = 1 + static_cast<Vertex>(seeds() % 10);
    p.m = std::min<long long>(seeds() % (2 * p.n + 1), static_cast<long long>(p.n) * p.n);
    p.k = 0;
    p.seed = seeds();
    MDPModel m = generate_instance(p).model;
    VertexSet targets;
    for (Vertex v = 0; v < p.n; ++v)
      if (seeds() % 3 == 0) targets.push_back(v);
    VertexSet expect;
    for (Vertex v = 0; v < p.n; ++v)
      for (Vertex t2 : targets)
        if (reaches(m, v, t2)) {
          expect.push_back(v);
          break;
        }
    CHECK(graph_reach(m, targets) == expect);
  }
}

TEST_CASE("random_attractor examples") {
  MDPModel m1 = make_mdp("RPP", {{0, 1}, {0, 2}, {1, 1}, {2, 2}});
  VertexSet all{0, 1, 2};
  CHECK(random_attractor(m1, all, {}) == VertexSet{});
  VertexSet expect = attractor_by_iteration(m1, all, {1});
  CHECK(expect == VertexSet{0, 1});
  CHECK(random_attractor(m1, all, {1}) == expect);

  MDPModel m2 = make_graph(3, {{0, 1}, {0, 2}});
  CHECK(random_attractor(m2, {0, 1, 2}, {1}) == VertexSet{1});
}

TEST_CASE("random_attractor is monotone and idempotent") {
  std::mt19937_64 seeds(42);
  for (int t = 0; t < 40; ++t) {
    GenParams p;
    p.kind = GenParams::Kind::Mdp;
    p.n = 2 + static_cast<Vertex>(seeds() % 9);
    p.m = static_cast<long long>(seeds() % (2 * p.n + 1));
    p.seed = seeds();
    p.k = 0;
    MDPModel m = generate_instance(p).model;
    VertexSet working;
    for (Vertex v = 0; v < m.vertex_count(); ++v)
      if (seeds() % 4) working.push_back(v);
    VertexSet t1, t2;
    for (Vertex v : working) {
      if (seeds() % 3 == 0) t1.push_back(v);
      if (seeds() % 2 == 0) t2.push_back(v);
    }
    VertexSet tsmall = set_intersection(t1, t2);
    VertexSet a_small = random_attractor(m, working, tsmall);
    VertexSet a_big = random_attractor(m, working, set_union(t1, t2));
    CHECK(is_subset(a_small, a_big));
    CHECK(random_attractor(m, working, a_small) == a_small);
    CHECK(a_small == attractor_by_iteration(m, working, tsmall));
  }
}

TEST_CASE("condense") {
  MDPModel cyc = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  Condensation c = condense(cyc);
  CHECK(c.graph.vertex_count() == 1);
  CHECK(c.graph.edge_count() == 0);

  MDPModel m = make_graph(3, {{0, 1}, {1, 0}, {1, 2}});
  c = condense(m);
  CHECK(c.graph.vertex_count() == 2);
  CHECK(c.graph.edges() == std::vector<Edge>{{0, 1}});
  CHECK(c.node_of[0] == c.node_of[1]);
  CHECK(c.node_of[2] == 1);

  MDPModel dag = make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  c = condense(dag);
  CHECK(c.graph.vertex_count() == 4);
  CHECK(c.graph.edges() == dag.edges());
}

TEST_CASE("split_vertices structure") {
  MDPModel loop = make_graph(1, {{0, 0}});
  StreettSpec spec = make_spec({{0}}, {{0}});
  SplitInstance s = split_vertices(loop, spec);
  CHECK(s.model.vertex_count() == 2);
  CHECK(s.model.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
  CHECK(tarjan_sccs(s.model) == std::vector<VertexSet>{{0, 1}});
  CHECK(s.spec.L[0] == VertexSet{0});
  CHECK(s.spec.U[0] == VertexSet{1});

  // counting identity: 2n vertices, m+n edges
  MDPModel m = make_mdp("PRP", {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
  SplitInstance sp = split_vertices(m, StreettSpec{});
  CHECK(sp.model.vertex_count() == 6);
  CHECK(sp.model.edge_count() == 4 + 3);
  CHECK(sp.model.owner(split_in(1)) == Owner::Player1);
  CHECK(sp.model.owner(split_out(1)) == Owner::Random);
}

TEST_CASE("split_vertices: in/out coherence of non-trivial SCCs") {
  std::mt19937_64 seeds(11);
  for (int t = 0; t < 40; ++t) {
    GenParams p;
    p.kind = GenParams::Kind::Mdp;
    p.n = 1 + static_cast<Vertex>(seeds() % 10);
    p.m = std::min<long long>(seeds() % (2 * p.n + 1), static_cast<long long>(p.n) * p.n);
    p.k = 0;
    p.seed = seeds();
    MDPModel m = generate_instance(p).model;
    SplitInstance s = split_vertices(m, StreettSpec{});
    for (const VertexSet& c : tarjan_sccs(s.model)) {
      if (c.size() < 2) continue;
      for (Vertex v : c) {
        Vertex partner = (v % 2 == 0) ? v + 1 : v - 1;
        CHECK(set_contains(c, partner));
      }
    }
  }
}
