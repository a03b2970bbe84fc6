#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace streett {

using Vertex = int32_t;

/// A set of vertex ids. Canonical form is sorted ascending without duplicates;
/// all functions in this library return canonical sets.
using VertexSet = std::vector<Vertex>;

enum class Owner : uint8_t { Player1, Random };

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline VertexSet canonical(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool is_canonical(const VertexSet& s) {
  return std::adjacent_find(s.begin(), s.end(),
                            [](Vertex a, Vertex b) { return a >= b; }) == s.end();
}

inline bool set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Explicit-state MDP: a directed graph whose vertices are partitioned into
/// player-1 and random vertices. Probabilities are kept as edge support only;
/// a graph is the special case with no random vertices. Immutable after
/// construction and safe to share across threads.
class MDPModel {
 public:
  MDPModel() = default;

  MDPModel(Vertex n, std::vector<Owner> owners, std::vector<Edge> edges)
      : n_(n), owners_(std::move(owners)), edges_(std::move(edges)) {
    if (static_cast<Vertex>(owners_.size()) != n_)
      throw std::invalid_argument("MDPModel: owner list size mismatch");
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.from < 0 || e.from >= n_ || e.to < 0 || e.to >= n_)
        throw std::invalid_argument("MDPModel: edge endpoint out of range");
      if (i > 0 && edges_[i - 1] == e)
        throw std::invalid_argument("MDPModel: duplicate edge");
    }
    build_adjacency();
  }

  static MDPModel graph(Vertex n, std::vector<Edge> edges) {
    return MDPModel(n, std::vector<Owner>(n, Owner::Player1), std::move(edges));
  }

  Vertex vertex_count() const { return n_; }
  size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  Owner owner(Vertex v) const { return owners_[v]; }
  bool is_random(Vertex v) const { return owners_[v] == Owner::Random; }
  bool is_player(Vertex v) const { return owners_[v] == Owner::Player1; }
  const std::vector<Owner>& owners() const { return owners_; }

  bool is_graph() const {
    return std::none_of(owners_.begin(), owners_.end(),
                        [](Owner o) { return o == Owner::Random; });
  }

  /// Successors of v, sorted ascending.
  std::span<const Vertex> out(Vertex v) const {
    return {out_targets_.data() + out_off_[v],
            out_targets_.data() + out_off_[v + 1]};
  }

  /// Predecessors of v, sorted ascending.
  std::span<const Vertex> in(Vertex v) const {
    return {in_sources_.data() + in_off_[v], in_sources_.data() + in_off_[v + 1]};
  }

  Vertex out_degree(Vertex v) const { return out_off_[v + 1] - out_off_[v]; }
  Vertex in_degree(Vertex v) const { return in_off_[v + 1] - in_off_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    auto o = out(u);
    return std::binary_search(o.begin(), o.end(), v);
  }

  /// Input validation beyond structural well-formedness: random vertices must
  /// have at least one outgoing edge (otherwise their distribution is
  /// undefined). Working copies produced by algorithms skip this check.
  void validate_input() const {
    for (Vertex v = 0; v < n_; ++v)
      if (is_random(v) && out_degree(v) == 0)
        throw std::invalid_argument("random vertex " + std::to_string(v) +
                                    " has out-degree 0");
  }

 private:
  void build_adjacency() {
    out_off_.assign(n_ + 1, 0);
    in_off_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++out_off_[e.from + 1];
      ++in_off_[e.to + 1];
    }
    for (Vertex v = 0; v < n_; ++v) {
      out_off_[v + 1] += out_off_[v];
      in_off_[v + 1] += in_off_[v];
    }
    out_targets_.resize(edges_.size());
    in_sources_.resize(edges_.size());
    std::vector<int32_t> ocur(out_off_.begin(), out_off_.end() - 1);
    std::vector<int32_t> icur(in_off_.begin(), in_off_.end() - 1);
    for (const Edge& e : edges_) {
      out_targets_[ocur[e.from]++] = e.to;
      in_sources_[icur[e.to]++] = e.from;
    }
    // edges_ is sorted by (from, to), so per-vertex out lists are sorted; the
    // in lists come out sorted as well since sources appear in ascending order.
  }

  Vertex n_ = 0;
  std::vector<Owner> owners_;
  std::vector<Edge> edges_;
  std::vector<int32_t> out_off_, in_off_;
  std::vector<Vertex> out_targets_, in_sources_;
};

/// k-pair strong-fairness objective: if some vertex of L[j] is visited
/// infinitely often then some vertex of U[j] must be visited infinitely often.
struct StreettSpec {
  std::vector<VertexSet> L;
  std::vector<VertexSet> U;

  int pair_count() const { return static_cast<int>(L.size()); }

  /// Total description size b = sum of all set sizes.
  long long bits() const {
    long long b = 0;
    for (const auto& s : L) b += static_cast<long long>(s.size());
    for (const auto& s : U) b += static_cast<long long>(s.size());
    return b;
  }

  void validate(Vertex n) const {
    if (L.size() != U.size())
      throw std::invalid_argument("StreettSpec: L/U pair count mismatch");
    auto check = [n](const VertexSet& s) {
      if (!is_canonical(s))
        throw std::invalid_argument("StreettSpec: set not sorted/distinct");
      if (!s.empty() && (s.front() < 0 || s.back() >= n))
        throw std::invalid_argument("StreettSpec: member id out of range");
    };
    for (const auto& s : L) check(s);
    for (const auto& s : U) check(s);
  }
};

struct Instance {
  MDPModel model;
  StreettSpec spec;
};

/// Submodel induced by a canonical vertex set: vertex i of the result is
/// members[i]; only edges with both endpoints inside survive.
struct InducedModel {
  MDPModel model;
  VertexSet members;  // local id -> original id
};

inline InducedModel induced_model(const MDPModel& m, const VertexSet& members) {
  assert(is_canonical(members));
  std::vector<Vertex> local(m.vertex_count(), -1);
  for (size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);
  std::vector<Owner> owners(members.size());
  for (size_t i = 0; i < members.size(); ++i) owners[i] = m.owner(members[i]);
  std::vector<Edge> edges;
  for (Vertex v : members)
    for (Vertex w : m.out(v))
      if (local[w] >= 0) edges.push_back({local[v], local[w]});
  return {MDPModel(static_cast<Vertex>(members.size()), std::move(owners), std::move(edges)),
          members};
}

/// Restriction of a Streett spec to a canonical vertex subset, remapped to the
/// subset's local ids.
inline StreettSpec restrict_spec(const StreettSpec& spec, const VertexSet& members) {
  StreettSpec out;
  out.L.resize(spec.L.size());
  out.U.resize(spec.U.size());
  auto remap = [&members](const VertexSet& s) {
    VertexSet r;
    size_t i = 0;
    for (Vertex v : s) {
      while (i < members.size() && members[i] < v) ++i;
      if (i < members.size() && members[i] == v) r.push_back(static_cast<Vertex>(i));
    }
    return r;
  };
  for (size_t j = 0; j < spec.L.size(); ++j) {
    out.L[j] = remap(spec.L[j]);
    out.U[j] = remap(spec.U[j]);
  }
  return out;
}

/// Vertex-splitting reduction: every vertex v becomes v_in = 2v (player 1) and
/// v_out = 2v+1 (v's owner); every edge (u,v) becomes (u_out, v_in) and each
/// vertex contributes (v_in, v_out). L sets move to in-vertices, U sets to
/// out-vertices. Removing a vertex then amounts to deleting the single
/// player-1 edge (v_in, v_out).
struct SplitInstance {
  MDPModel model;
  StreettSpec spec;
};

inline Vertex split_in(Vertex v) { return 2 * v; }
inline Vertex split_out(Vertex v) { return 2 * v + 1; }

inline SplitInstance split_vertices(const MDPModel& m, const StreettSpec& spec) {
  const Vertex n = m.vertex_count();
  std::vector<Owner> owners(2 * n);
  for (Vertex v = 0; v < n; ++v) {
    owners[split_in(v)] = Owner::Player1;
    owners[split_out(v)] = m.owner(v);
  }
  std::vector<Edge> edges;
  edges.reserve(m.edge_count() + n);
  for (Vertex v = 0; v < n; ++v) edges.push_back({split_in(v), split_out(v)});
  for (const Edge& e : m.edges()) edges.push_back({split_out(e.from), split_in(e.to)});
  SplitInstance out;
  out.model = MDPModel(2 * n, std::move(owners), std::move(edges));
  out.spec.L.resize(spec.L.size());
  out.spec.U.resize(spec.U.size());
  for (size_t j = 0; j < spec.L.size(); ++j) {
    for (Vertex v : spec.L[j]) out.spec.L[j].push_back(split_in(v));
    for (Vertex v : spec.U[j]) out.spec.U[j].push_back(split_out(v));
  }
  return out;
}

/// Copy of the model where every vertex of T keeps a self-loop as its only
/// outgoing edge. Reachability of T is a prefix property, so this preserves
/// almost-sure reachability winning sets while making T trivially winning.
inline MDPModel make_absorbing(const MDPModel& m, const VertexSet& T) {
  assert(is_canonical(T));
  std::vector<char> in_t(m.vertex_count(), 0);
  for (Vertex v : T) in_t[v] = 1;
  std::vector<Edge> edges;
  edges.reserve(m.edge_count() + T.size());
  for (const Edge& e : m.edges())
    if (!in_t[e.from]) edges.push_back(e);
  for (Vertex v : T) edges.push_back({v, v});
  return MDPModel(m.vertex_count(), m.owners(), std::move(edges));
}

}  // namespace streett
