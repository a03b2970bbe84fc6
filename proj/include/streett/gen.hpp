#pragma once

#include <random>
#include <unordered_set>

#include "streett/model.hpp"

namespace streett {

struct GenParams {
  enum class Kind { Graph, Mdp };
  Kind kind = Kind::Graph;
  Vertex n = 10;
  long long m = 20;
  int k = 1;
  uint64_t seed = 0;
  double p_random = 0.3;  // probability that a vertex is random (Mdp only)
};

namespace detail {

inline uint64_t rand_below(std::mt19937_64& rng, uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

/// Geometric with mean 1: P(s) = 2^-(s+1).
inline int small_geometric(std::mt19937_64& rng) {
  int s = 0;
  while (rng() & 1) ++s;
  return s;
}

inline VertexSet sample_distinct(std::mt19937_64& rng, Vertex n, int count) {
  VertexSet out;
  std::unordered_set<Vertex> seen;
  count = std::min<int>(count, n);
  while (static_cast<int>(out.size()) < count) {
    Vertex v = static_cast<Vertex>(rand_below(rng, n));
    if (seen.insert(v).second) out.push_back(v);
  }
  return canonical(std::move(out));
}

}  // namespace detail

/// Deterministic-under-seed random instance: m distinct edges (self-loops
/// allowed), random sinks repaired by one extra out-edge, pair sets sampled
/// with small geometric sizes.
inline Instance generate_instance(const GenParams& p) {
  if (p.n < 1) throw std::invalid_argument("generate_instance: n must be positive");
  if (p.m > static_cast<long long>(p.n) * p.n)
    throw std::invalid_argument("generate_instance: m exceeds n^2");
  std::mt19937_64 rng(p.seed);

  std::vector<Owner> owners(p.n, Owner::Player1);
  if (p.kind == GenParams::Kind::Mdp) {
    const uint64_t threshold = static_cast<uint64_t>(p.p_random * 1e9);
    for (Vertex v = 0; v < p.n; ++v)
      if (detail::rand_below(rng, 1000000000ull) < threshold) owners[v] = Owner::Random;
  }

  std::unordered_set<uint64_t> keys;
  keys.reserve(2 * p.m);
  std::vector<Edge> edges;
  edges.reserve(p.m);
  auto try_add = [&](Vertex u, Vertex v) {
    if (keys.insert((static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v)).second) {
      edges.push_back({u, v});
      return true;
    }
    return false;
  };
  if (p.m > static_cast<long long>(p.n) * p.n * 3 / 4 &&
      static_cast<long long>(p.n) * p.n < (1ll << 24)) {
    // dense: enumerate all pairs and take a shuffled prefix
    std::vector<Edge> all;
    all.reserve(static_cast<size_t>(p.n) * p.n);
    for (Vertex u = 0; u < p.n; ++u)
      for (Vertex v = 0; v < p.n; ++v) all.push_back({u, v});
    for (size_t i = all.size(); i > 1; --i)
      std::swap(all[i - 1], all[detail::rand_below(rng, i)]);
    for (long long i = 0; i < p.m; ++i) try_add(all[i].from, all[i].to);
  } else {
    while (static_cast<long long>(edges.size()) < p.m)
      try_add(static_cast<Vertex>(detail::rand_below(rng, p.n)),
              static_cast<Vertex>(detail::rand_below(rng, p.n)));
  }
  // repair random sinks so the instance validates
  std::vector<int32_t> outdeg(p.n, 0);
  for (const Edge& e : edges) ++outdeg[e.from];
  for (Vertex v = 0; v < p.n; ++v) {
    if (owners[v] != Owner::Random || outdeg[v] > 0) continue;
    while (true) {
      Vertex t = static_cast<Vertex>(detail::rand_below(rng, p.n));
      if (try_add(v, t)) break;
    }
    ++outdeg[v];
  }

  StreettSpec spec;
  spec.L.resize(p.k);
  spec.U.resize(p.k);
  for (int j = 0; j < p.k; ++j) {
    spec.L[j] = detail::sample_distinct(rng, p.n, detail::small_geometric(rng));
    spec.U[j] = detail::sample_distinct(rng, p.n, detail::small_geometric(rng));
  }

  Instance inst{MDPModel(p.n, std::move(owners), std::move(edges)), std::move(spec)};
  inst.model.validate_input();
  return inst;
}

/// Benchmark workload for the graph Streett suite: n = m/4, k pairs with
/// b ~ m/10 where the last pair has an empty grant set, so its request
/// vertices are bad and force genuine deletion cascades.
inline Instance generate_bench_graph(long long m, int k, uint64_t seed) {
  GenParams p;
  p.kind = GenParams::Kind::Graph;
  p.n = static_cast<Vertex>(std::max<long long>(8, m / 4));
  p.m = m;
  p.k = 0;
  p.seed = seed;
  Instance inst = generate_instance(p);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const long long b_target = std::max<long long>(2 * k, m / 10);
  const int per_set = static_cast<int>(std::max<long long>(1, b_target / (2 * k - 1)));
  inst.spec.L.assign(k, {});
  inst.spec.U.assign(k, {});
  for (int j = 0; j < k; ++j) {
    inst.spec.L[j] = detail::sample_distinct(rng, inst.model.vertex_count(), per_set);
    if (j + 1 < k)
      inst.spec.U[j] = detail::sample_distinct(rng, inst.model.vertex_count(), per_set);
  }
  return inst;
}

/// Benchmark workload for the MEC suite: a sparse MDP (n = m/2) with a large
/// random-vertex share, which yields many bottom-SCC / attractor rounds.
inline Instance generate_bench_mdp(long long m, uint64_t seed) {
  GenParams p;
  p.kind = GenParams::Kind::Mdp;
  p.n = static_cast<Vertex>(std::max<long long>(8, m / 2));
  p.m = m;
  p.k = 0;
  p.seed = seed;
  p.p_random = 0.4;
  return generate_instance(p);
}

}  // namespace streett
