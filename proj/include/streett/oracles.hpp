#pragma once

#include <vector>

#include "streett/attractor.hpp"
#include "streett/model.hpp"
#include "streett/scc.hpp"

// Brute-force reference implementations used by the property and acceptance
// suites. They share the static core primitives but never touch the dynamic
// engines, so agreement with the fast paths is independent evidence.

namespace streett {

struct MecDecomposition {
  std::vector<VertexSet> mecs;  // sorted by smallest member
  VertexSet residue;            // vertices in no reported MEC
};

namespace detail {

inline bool nontrivial_set(const MDPModel& m, const VertexSet& s) {
  if (s.size() > 1) return true;
  return s.size() == 1 && m.has_edge(s[0], s[0]);
}

inline VertexSet bad_vertices_in(const StreettSpec& spec, const VertexSet& s) {
  VertexSet bad;
  for (int j = 0; j < spec.pair_count(); ++j) {
    if (!set_intersection(spec.U[j], s).empty()) continue;
    for (Vertex v : set_intersection(spec.L[j], s)) bad.push_back(v);
  }
  return canonical(std::move(bad));
}

inline void sort_by_min(std::vector<VertexSet>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
}

}  // namespace detail

/// Winning set for a Streett objective on a graph by repeated static SCC
/// computation: per SCC, drop vertices of request sets with no grant in the
/// SCC and recurse; surviving non-trivial bad-free SCCs are good.
inline VertexSet oracle_streett_graph(const MDPModel& m, const StreettSpec& spec) {
  if (!m.is_graph()) throw std::invalid_argument("oracle_streett_graph: model has random vertices");
  VertexSet good_union;
  std::vector<VertexSet> work = tarjan_sccs(m);
  while (!work.empty()) {
    VertexSet c = std::move(work.back());
    work.pop_back();
    VertexSet bad = detail::bad_vertices_in(spec, c);
    if (bad.empty()) {
      bool nontrivial = c.size() > 1;
      if (!nontrivial && m.has_edge(c[0], c[0])) nontrivial = true;
      if (nontrivial) good_union = set_union(good_union, c);
      continue;
    }
    VertexSet rest = set_difference(c, bad);
    if (rest.empty()) continue;
    InducedModel sub = induced_model(m, rest);
    for (const VertexSet& piece : tarjan_sccs(sub.model)) {
      VertexSet orig;
      orig.reserve(piece.size());
      for (Vertex v : piece) orig.push_back(sub.members[v]);
      work.push_back(std::move(orig));
    }
  }
  return graph_reach(m, good_union);
}

/// MEC decomposition by repeated full SCC recomputation: mark bottom SCCs,
/// remove their random attractor, loop until nothing remains. Trivial MECs
/// (player vertices with no edges) are reported only when requested.
inline MecDecomposition oracle_mec(const MDPModel& m, bool include_trivial = false) {
  MecDecomposition out;
  VertexSet working(m.vertex_count());
  for (Vertex v = 0; v < m.vertex_count(); ++v) working[v] = v;
  while (!working.empty()) {
    InducedModel sub = induced_model(m, working);
    VertexSet bottoms_local;
    for (const VertexSet& c : tarjan_sccs(sub.model)) {
      bool bottom = true;
      for (Vertex v : c)
        for (Vertex w : sub.model.out(v))
          if (!set_contains(c, w)) {
            bottom = false;
            break;
          }
      if (!bottom) continue;
      VertexSet orig;
      for (Vertex v : c) orig.push_back(sub.members[v]);
      if (detail::nontrivial_set(m, orig)) out.mecs.push_back(orig);
      for (Vertex v : c) bottoms_local.push_back(v);
    }
    bottoms_local = canonical(std::move(bottoms_local));
    VertexSet attr_local = random_attractor(sub.model, bottoms_local);
    VertexSet removed;
    for (Vertex v : attr_local) removed.push_back(sub.members[v]);
    working = set_difference(working, canonical(std::move(removed)));
  }
  detail::sort_by_min(out.mecs);
  VertexSet covered;
  for (const VertexSet& mec : out.mecs) covered = set_union(covered, mec);
  out.residue.clear();
  for (Vertex v = 0; v < m.vertex_count(); ++v)
    if (!set_contains(covered, v)) out.residue.push_back(v);
  if (include_trivial) {
    VertexSet random_residue;
    for (Vertex v : out.residue) {
      if (m.is_player(v))
        out.mecs.push_back({v});
      else
        random_residue.push_back(v);
    }
    out.residue = std::move(random_residue);
    detail::sort_by_min(out.mecs);
  }
  return out;
}

/// Almost-sure reachability by the direct fixpoint: make T absorbing, then
/// repeatedly delete the random attractor of the vertices that cannot reach T.
inline VertexSet oracle_asw_reach(const MDPModel& m, const VertexSet& T) {
  MDPModel abs = make_absorbing(m, T);
  VertexSet working(m.vertex_count());
  for (Vertex v = 0; v < m.vertex_count(); ++v) working[v] = v;
  while (true) {
    std::vector<char> mask(m.vertex_count(), 0);
    for (Vertex v : working) mask[v] = 1;
    VertexSet reach = graph_reach_within(abs, mask, set_intersection(T, working));
    VertexSet blocked = set_difference(working, reach);
    if (blocked.empty()) break;
    working = set_difference(working, random_attractor(abs, working, blocked));
  }
  return working;
}

/// Maximal end-components of the original model that lie inside `subset`.
/// Random vertices with an original out-edge leaving the subset cannot belong
/// to any such end-component, so they are pruned iteratively before the
/// restricted decomposition; afterwards the induced model preserves random
/// out-edges and its MECs are end-components of the original model.
inline std::vector<VertexSet> oracle_mecs_within(const MDPModel& m, VertexSet subset) {
  while (true) {
    VertexSet escapers;
    for (Vertex v : subset) {
      if (!m.is_random(v)) continue;
      for (Vertex w : m.out(v))
        if (!set_contains(subset, w)) {
          escapers.push_back(v);
          break;
        }
    }
    if (escapers.empty()) break;
    subset = set_difference(subset, escapers);
  }
  if (subset.empty()) return {};
  InducedModel sub = induced_model(m, subset);
  std::vector<VertexSet> out;
  for (const VertexSet& mec : oracle_mec(sub.model).mecs) {
    VertexSet orig;
    for (Vertex v : mec) orig.push_back(sub.members[v]);
    out.push_back(std::move(orig));
  }
  return out;
}

/// True iff the model contains a good end-component: a non-trivial
/// end-component X with L[j] disjoint from X or U[j] meeting X for every j.
/// Recursive static search: start from the MECs and repeatedly strip bad
/// vertices, re-decomposing what is left.
inline bool oracle_has_good_end_component(const MDPModel& m, const StreettSpec& spec) {
  std::vector<VertexSet> work = oracle_mec(m).mecs;
  while (!work.empty()) {
    VertexSet x = std::move(work.back());
    work.pop_back();
    VertexSet bad = detail::bad_vertices_in(spec, x);
    if (bad.empty()) return true;  // x is a non-trivial EC by construction
    VertexSet rest = set_difference(x, bad);
    if (rest.empty()) continue;
    for (VertexSet& sub_mec : oracle_mecs_within(m, rest)) work.push_back(std::move(sub_mec));
  }
  return false;
}

/// Winning set for a Streett objective on an MDP: MECs with a good
/// end-component inside are satisfying; the answer is almost-sure
/// reachability of their union.
inline VertexSet oracle_mdp_streett(const MDPModel& m, const StreettSpec& spec) {
  VertexSet targets;
  for (const VertexSet& mec : oracle_mec(m).mecs) {
    InducedModel sub = induced_model(m, mec);
    if (oracle_has_good_end_component(sub.model, restrict_spec(spec, mec)))
      targets = set_union(targets, mec);
  }
  return oracle_asw_reach(m, targets);
}

/// All non-trivial end-components by subset enumeration; ground truth for
/// maximality and good-end-component checks. Exponential, guarded to n <= 14.
inline std::vector<VertexSet> enumerate_end_components(const MDPModel& m) {
  const Vertex n = m.vertex_count();
  if (n > 14) throw std::invalid_argument("enumerate_end_components: n too large");
  std::vector<VertexSet> out;
  for (uint32_t bits = 1; bits < (1u << n); ++bits) {
    VertexSet x;
    for (Vertex v = 0; v < n; ++v)
      if (bits & (1u << v)) x.push_back(v);
    bool closed = true;
    for (Vertex v : x) {
      if (!m.is_random(v)) continue;
      for (Vertex w : m.out(v))
        if (!set_contains(x, w)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (!closed) continue;
    InducedModel sub = induced_model(m, x);
    if (sub.model.edge_count() == 0) continue;
    if (tarjan_sccs(sub.model).size() != 1) continue;
    out.push_back(std::move(x));
  }
  return out;
}

/// Subset-enumeration ground truth for the graph winning set: reachability of
/// the union of all non-trivial SCSs satisfying the pair condition.
inline VertexSet exhaustive_winning_graph(const MDPModel& m, const StreettSpec& spec) {
  const Vertex n = m.vertex_count();
  if (n > 14) throw std::invalid_argument("exhaustive_winning_graph: n too large");
  if (!m.is_graph()) throw std::invalid_argument("exhaustive_winning_graph: not a graph");
  VertexSet good_union;
  for (uint32_t bits = 1; bits < (1u << n); ++bits) {
    VertexSet x;
    for (Vertex v = 0; v < n; ++v)
      if (bits & (1u << v)) x.push_back(v);
    InducedModel sub = induced_model(m, x);
    if (sub.model.edge_count() == 0) continue;
    if (tarjan_sccs(sub.model).size() != 1) continue;
    if (!detail::bad_vertices_in(spec, x).empty()) continue;
    good_union = set_union(good_union, x);
  }
  return graph_reach(m, good_union);
}

/// Subset-enumeration ground truth for the MDP winning set: almost-sure
/// reachability of the union of all good end-components.
inline VertexSet exhaustive_winning_mdp(const MDPModel& m, const StreettSpec& spec) {
  VertexSet good_union;
  for (const VertexSet& x : enumerate_end_components(m))
    if (detail::bad_vertices_in(spec, x).empty()) good_union = set_union(good_union, x);
  return oracle_asw_reach(m, good_union);
}

inline bool exhaustive_good_ec_exists(const MDPModel& m, const StreettSpec& spec) {
  for (const VertexSet& x : enumerate_end_components(m))
    if (detail::bad_vertices_in(spec, x).empty()) return true;
  return false;
}

}  // namespace streett
