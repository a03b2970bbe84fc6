#pragma once

#include <optional>
#include <vector>

#include "streett/model.hpp"

namespace streett {

namespace detail {

/// Iterative Tarjan over an adjacency callback. `next(v, cursor)` yields the
/// cursor-th admissible successor of v or -1 when exhausted. Components are
/// emitted with members sorted ascending, the whole list sorted by smallest
/// member.
template <typename Roots, typename NextFn>
std::vector<VertexSet> tarjan_generic(Vertex n, const Roots& roots, NextFn&& next) {
  std::vector<int32_t> index(n, -1), lowlink(n, 0), stack_pos(n, -1);
  std::vector<Vertex> stack;
  std::vector<VertexSet> sccs;
  int32_t counter = 0;

  struct Frame {
    Vertex v;
    int32_t cursor;
  };
  std::vector<Frame> frames;

  for (Vertex root : roots) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      Vertex v = f.v;
      if (f.cursor == 0) {
        index[v] = lowlink[v] = counter++;
        stack_pos[v] = static_cast<int32_t>(stack.size());
        stack.push_back(v);
      }
      Vertex w = next(v, f.cursor);
      if (w >= 0) {
        ++f.cursor;
        if (index[w] == -1) {
          frames.push_back({w, 0});
        } else if (stack_pos[w] != -1) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        if (lowlink[v] == index[v]) {
          VertexSet comp;
          while (true) {
            Vertex u = stack.back();
            stack.pop_back();
            stack_pos[u] = -1;
            comp.push_back(u);
            if (u == v) break;
          }
          std::sort(comp.begin(), comp.end());
          sccs.push_back(std::move(comp));
        }
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
      }
    }
  }
  std::sort(sccs.begin(), sccs.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return sccs;
}

}  // namespace detail

/// Exact SCC partition of the model's graph. With a restriction, only the
/// restricted vertices and the edges between them are considered.
inline std::vector<VertexSet> tarjan_sccs(const MDPModel& m) {
  std::vector<Vertex> roots(m.vertex_count());
  for (Vertex v = 0; v < m.vertex_count(); ++v) roots[v] = v;
  return detail::tarjan_generic(m.vertex_count(), roots, [&m](Vertex v, int32_t c) -> Vertex {
    auto o = m.out(v);
    return c < static_cast<int32_t>(o.size()) ? o[c] : -1;
  });
}

inline std::vector<VertexSet> tarjan_sccs(const MDPModel& m, const VertexSet& restriction) {
  assert(is_canonical(restriction));
  std::vector<char> mask(m.vertex_count(), 0);
  for (Vertex v : restriction) mask[v] = 1;
  return detail::tarjan_generic(
      m.vertex_count(), restriction, [&m, &mask](Vertex v, int32_t c) -> Vertex {
        auto o = m.out(v);
        int32_t seen = 0;
        for (Vertex w : o) {
          if (!mask[w]) continue;
          if (seen == c) return w;
          ++seen;
        }
        return -1;
      });
}

/// Condensation: one node per SCC (numbered by smallest member, ascending),
/// cross-SCC edges deduplicated. Nodes carry no ownership semantics and are
/// tagged player-1.
struct Condensation {
  MDPModel graph;
  std::vector<int32_t> node_of;      // vertex -> node
  std::vector<VertexSet> members;    // node -> vertices
};

inline Condensation condense(const MDPModel& m) {
  Condensation c;
  c.members = tarjan_sccs(m);
  c.node_of.assign(m.vertex_count(), -1);
  for (size_t i = 0; i < c.members.size(); ++i)
    for (Vertex v : c.members[i]) c.node_of[v] = static_cast<int32_t>(i);
  std::vector<Edge> edges;
  for (const Edge& e : m.edges()) {
    int32_t a = c.node_of[e.from], b = c.node_of[e.to];
    if (a != b) edges.push_back({a, b});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  c.graph = MDPModel(static_cast<Vertex>(c.members.size()),
                     std::vector<Owner>(c.members.size(), Owner::Player1), std::move(edges));
  return c;
}

/// All vertices that can reach some target (targets included), via backward
/// search over predecessor lists.
inline VertexSet graph_reach(const MDPModel& m, const VertexSet& targets) {
  assert(is_canonical(targets));
  std::vector<char> seen(m.vertex_count(), 0);
  std::vector<Vertex> queue;
  for (Vertex v : targets) {
    seen[v] = 1;
    queue.push_back(v);
  }
  for (size_t i = 0; i < queue.size(); ++i)
    for (Vertex u : m.in(queue[i]))
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
  return canonical(std::move(queue));
}

/// Backward reachability restricted to a working set; targets outside the
/// working set are ignored.
inline VertexSet graph_reach_within(const MDPModel& m, const std::vector<char>& working,
                                    const VertexSet& targets) {
  std::vector<char> seen(m.vertex_count(), 0);
  std::vector<Vertex> queue;
  for (Vertex v : targets)
    if (working[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  for (size_t i = 0; i < queue.size(); ++i)
    for (Vertex u : m.in(queue[i]))
      if (working[u] && !seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
  return canonical(std::move(queue));
}

}  // namespace streett
