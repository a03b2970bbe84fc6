#pragma once

#include "streett/attractor.hpp"
#include "streett/dec_scc.hpp"
#include "streett/model.hpp"
#include "streett/oracles.hpp"
#include "streett/scc.hpp"

namespace streett {

struct MecStats {
  long long deletions = 0;
  long long rounds = 0;
  long long fixpoint_iterations = 0;  // asw_reach only
  std::vector<int32_t> small_appearances;
};

/// MEC decomposition via bottom-SCC announcements: mark the bottom SCCs,
/// delete the edges of their random attractor, and continue with the SCCs the
/// engine reports as newly outgoing-free. Only non-trivial MECs are reported
/// unless include_trivial is set, in which case isolated player vertices are
/// added as singleton MECs.
inline MecDecomposition mec_decomposition_full(const MDPModel& model,
                                               bool include_trivial = false,
                                               MecStats* stats = nullptr, uint64_t seed = 0) {
  model.validate_input();
  const Vertex n = model.vertex_count();
  DecSccEngine engine(model, seed);

  MecDecomposition out;
  std::vector<char> removed(n, 0);
  std::vector<long long> counter(n, 0);
  std::vector<int32_t> stamp(n, 0);
  int32_t round = 0;

  std::vector<SccId> bottoms;
  for (SccId c = 0; c < static_cast<SccId>(engine.component_count()); ++c)
    if (engine.out_counter(c) == 0) bottoms.push_back(c);

  while (!bottoms.empty()) {
    ++round;
    if (stats) ++stats->rounds;
    VertexSet attractor;
    std::vector<Vertex> queue;
    for (SccId c : bottoms) {
      VertexSet members = engine.members_sorted(c);
      bool nontrivial = members.size() > 1 || engine.internal_edge_count(c) > 0;
      if (nontrivial) out.mecs.push_back(members);
      // trivial bottoms are player sinks of the input; they are removed with
      // the attractor and land in the residue (or as trivial MECs below)
      for (Vertex v : members) {
        removed[v] = 1;
        queue.push_back(v);
      }
    }
    for (size_t i = 0; i < queue.size(); ++i) {
      for (const auto& he : engine.live_in(queue[i])) {
        Vertex u = he.other;
        if (removed[u]) continue;
        bool attract;
        if (model.is_random(u)) {
          attract = true;
        } else {
          if (stamp[u] != round) {
            stamp[u] = round;
            counter[u] = engine.out_degree(u);
          }
          attract = --counter[u] == 0;
        }
        if (attract) {
          removed[u] = 1;
          queue.push_back(u);
        }
      }
    }
    attractor = canonical(std::move(queue));
    std::vector<Edge> edges = engine.incident_edges(attractor);
    if (stats) stats->deletions += static_cast<long long>(edges.size());
    bottoms.clear();
    for (SccId c : engine.delete_announce_no_outgoing(edges))
      if (!removed[engine.members(c).front()]) bottoms.push_back(c);
  }

  detail::sort_by_min(out.mecs);
  std::vector<char> in_mec(n, 0);
  for (const VertexSet& mec : out.mecs)
    for (Vertex v : mec) in_mec[v] = 1;
  for (Vertex v = 0; v < n; ++v)
    if (!in_mec[v]) out.residue.push_back(v);
  if (include_trivial) {
    VertexSet random_residue;
    for (Vertex v : out.residue) {
      if (model.is_player(v))
        out.mecs.push_back({v});
      else
        random_residue.push_back(v);
    }
    out.residue = std::move(random_residue);
    detail::sort_by_min(out.mecs);
  }
  if (stats) stats->small_appearances = engine.stats().small_appearances;
  return out;
}

inline MecDecomposition mec_decomposition(const MDPModel& model, bool include_trivial = false) {
  return mec_decomposition_full(model, include_trivial);
}

/// Quotient that collapses every MEC disjoint from T into one player-1 node.
/// Nodes are numbered by smallest original member; self-loops inside
/// collapsed MECs are dropped and parallel edges deduplicated.
struct MecQuotient {
  MDPModel model;
  std::vector<int32_t> node_of;      // vertex -> node
  std::vector<VertexSet> node_members;
};

inline MecQuotient mec_quotient(const MDPModel& m, const MecDecomposition& dec,
                                const VertexSet& T) {
  const Vertex n = m.vertex_count();
  MecQuotient q;
  q.node_of.assign(n, -1);
  std::vector<char> in_t(n, 0);
  for (Vertex v : T) in_t[v] = 1;
  std::vector<int32_t> mec_of(n, -1);
  for (size_t i = 0; i < dec.mecs.size(); ++i) {
    bool meets_t = false;
    for (Vertex v : dec.mecs[i]) meets_t |= static_cast<bool>(in_t[v]);
    if (meets_t) continue;  // not collapsed
    for (Vertex v : dec.mecs[i]) mec_of[v] = static_cast<int32_t>(i);
  }
  std::vector<Owner> owners;
  std::vector<char> collapsed;
  for (Vertex v = 0; v < n; ++v) {
    if (q.node_of[v] != -1) continue;
    int32_t node = static_cast<int32_t>(q.node_members.size());
    if (mec_of[v] != -1) {
      for (Vertex w : dec.mecs[mec_of[v]]) q.node_of[w] = node;
      q.node_members.push_back(dec.mecs[mec_of[v]]);
      owners.push_back(Owner::Player1);
      collapsed.push_back(1);
    } else {
      q.node_of[v] = node;
      q.node_members.push_back({v});
      owners.push_back(m.owner(v));
      collapsed.push_back(0);
    }
  }
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> seen;
  for (const Edge& e : m.edges()) {
    int32_t a = q.node_of[e.from], b = q.node_of[e.to];
    if (a == b && collapsed[a]) continue;
    if (seen.insert((static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b)).second)
      edges.push_back({a, b});
  }
  q.model = MDPModel(static_cast<Vertex>(q.node_members.size()), std::move(owners),
                     std::move(edges));
  return q;
}

/// Almost-sure reachability winning set ASW(Reach(T)): make T absorbing,
/// collapse the MEC decomposition into a quotient, and run the safety-style
/// fixpoint (delete the random attractor of the non-reaching part until it is
/// empty). The fixpoint iteration count is reported via stats.
inline VertexSet asw_reach_full(const MDPModel& model, const VertexSet& T,
                                MecStats* stats = nullptr) {
  assert(is_canonical(T));
  if (!T.empty() && (T.front() < 0 || T.back() >= model.vertex_count()))
    throw std::invalid_argument("asw_reach: target out of range");
  MDPModel absorbed = make_absorbing(model, T);
  MecDecomposition dec = mec_decomposition_full(absorbed, false, stats);
  MecQuotient q = mec_quotient(absorbed, dec, T);

  VertexSet t_nodes;
  for (Vertex v : T) t_nodes.push_back(q.node_of[v]);
  t_nodes = canonical(std::move(t_nodes));

  const Vertex qn = q.model.vertex_count();
  std::vector<char> working(qn, 1);
  while (true) {
    if (stats) ++stats->fixpoint_iterations;
    VertexSet reach = graph_reach_within(q.model, working, t_nodes);
    VertexSet blocked;
    for (Vertex v = 0; v < qn; ++v)
      if (working[v] && !set_contains(reach, v)) blocked.push_back(v);
    if (blocked.empty()) break;
    VertexSet working_set;
    for (Vertex v = 0; v < qn; ++v)
      if (working[v]) working_set.push_back(v);
    for (Vertex v : random_attractor(q.model, working_set, blocked)) working[v] = 0;
  }

  VertexSet out;
  for (Vertex v = 0; v < model.vertex_count(); ++v)
    if (working[q.node_of[v]]) out.push_back(v);
  return out;
}

inline VertexSet asw_reach(const MDPModel& model, const VertexSet& T) {
  return asw_reach_full(model, T);
}

}  // namespace streett
