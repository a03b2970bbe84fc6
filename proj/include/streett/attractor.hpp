#pragma once

#include <vector>

#include "streett/model.hpp"

namespace streett {

/// Random attractor of T within a working vertex set: the least set grown from
/// T by adding random vertices with an edge into it and player-1 vertices all
/// of whose (working) edges lead into it. Only edges with both endpoints in
/// the working set count. Implemented as a worklist seeded from T over
/// per-vertex out-degree counters, so vertices with no working out-edges join
/// only when reached from T.
inline VertexSet random_attractor(const MDPModel& m, const VertexSet& working,
                                  const VertexSet& T) {
  assert(is_canonical(working) && is_canonical(T));
  assert(is_subset(T, working));
  std::vector<char> in_working(m.vertex_count(), 0);
  for (Vertex v : working) in_working[v] = 1;
  std::vector<int32_t> count(m.vertex_count(), 0);
  for (Vertex v : working) {
    if (m.is_random(v)) continue;
    int32_t d = 0;
    for (Vertex w : m.out(v)) d += in_working[w];
    count[v] = d;
  }
  std::vector<char> attracted(m.vertex_count(), 0);
  std::vector<Vertex> queue;
  for (Vertex v : T) {
    attracted[v] = 1;
    queue.push_back(v);
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    for (Vertex u : m.in(queue[i])) {
      if (!in_working[u] || attracted[u]) continue;
      if (m.is_random(u) || --count[u] == 0) {
        attracted[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return canonical(std::move(queue));
}

inline VertexSet random_attractor(const MDPModel& m, const VertexSet& T) {
  VertexSet working(m.vertex_count());
  for (Vertex v = 0; v < m.vertex_count(); ++v) working[v] = v;
  return random_attractor(m, working, T);
}

}  // namespace streett
