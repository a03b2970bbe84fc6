#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <optional>

#include "streett/dec_scc.hpp"
#include "streett/model.hpp"
#include "streett/scc.hpp"
#include "streett/streett_ds.hpp"

namespace streett {

struct GraphSolveStats {
  std::vector<int32_t> k_entries;  // per vertex: times it entered the K list
  long long outer_iterations = 0;
  long long ds_cost = 0;
  long long edges_deleted = 0;
  std::vector<int32_t> small_appearances;  // engine counters, per vertex
};

/// Test-only observation point: queue contents after each completed outer
/// iteration (the terminating iteration that outputs a component does not
/// notify).
struct QueueSnapshot {
  const DecSccEngine* engine = nullptr;
  std::vector<VertexSet> sets;
  std::vector<std::vector<VertexSet>> scc_lists;
};

struct GoodCompHooks {
  std::function<void(const QueueSnapshot&)> after_iteration;
};

struct GraphSolveResult {
  VertexSet winning;
  std::vector<VertexSet> satisfying_sccs;
  std::vector<VertexSet> witnesses;  // one good component per satisfying SCC
  std::vector<Edge> deletion_trace;
  GraphSolveStats stats;
};

namespace detail {

/// Good-component detection on the SCCs of one graph, all runs sharing a
/// single decremental SCC engine. Maintains a queue of sets S with their
/// D(S) structures; repeatedly drains bad vertices (removing a vertex =
/// deleting its incident edges), then either reports S as a good component,
/// or splits off every SCC of G[S] at most half the size of S.
class GoodCompRunner {
 public:
  GoodCompRunner(const MDPModel& model, const StreettSpec& spec, uint64_t seed,
                 GoodCompHooks hooks = {})
      : engine_(model, seed),
        index_(model.vertex_count(), spec),
        scratch_(model.vertex_count()),
        hooks_(std::move(hooks)) {
    stats_.k_entries.assign(model.vertex_count(), 0);
  }

  DecSccEngine& engine() { return engine_; }

  GraphSolveStats stats() const {
    GraphSolveStats s = stats_;
    s.ds_cost = scratch_.ds_cost;
    s.edges_deleted = engine_.stats().edges_deleted;
    s.small_appearances = engine_.stats().small_appearances;
    return s;
  }

  /// One invocation of the good-component search on an SCC of the input
  /// graph. Returns the first good component found, if any.
  std::optional<VertexSet> run_on_scc(const VertexSet& scc) {
    std::deque<std::unique_ptr<StreettSet>> queue;
    {
      SccId root = engine_.rep(scc.front());
      assert(engine_.size(root) == scc.size());
      auto d0 = std::make_unique<StreettSet>(index_, scratch_, scc,
                                             engine_.internal_edge_count(root));
      d0->sccs().insert(root, engine_.min_member(root));
      queue.push_back(std::move(d0));
    }
    std::optional<VertexSet> found;

    while (!queue.empty()) {
      std::unique_ptr<StreettSet> d = std::move(queue.front());
      queue.pop_front();
      ++stats_.outer_iterations;

      while (!d->bad().empty()) {
        VertexSet b = d->bad();
        std::sort(b.begin(), b.end());
        std::vector<Edge> edges = engine_.incident_edges(b);
        long long inside = 0;
        for (const Edge& e : edges)
          if (scratch_.owner[e.from] == d.get() && scratch_.owner[e.to] == d.get()) ++inside;
        d->remove(b);
        d->add_to_edge_count(-inside);
        std::vector<SccId> announced = engine_.delete_announce(edges);
        for (SccId h : announced) d->sccs().erase_if_present(h);
        for (SccId h : announced) {
          Vertex probe = engine_.min_member(h);
          if (scratch_.owner[probe] == d.get()) d->sccs().insert(h, probe);
        }
        for (Vertex v : b) d->sccs().erase_if_present(engine_.rep(v));
      }

      if (d->edge_count() >= 1) {
        if (d->sccs().size() == 1) {
          SccId h = d->sccs().first();
          assert(engine_.size(h) == d->size());
          found = engine_.members_sorted(h);
          release(*d);
          break;
        }
        const size_t s_size = d->size();
        std::vector<SccId> k_list;
        for (const auto& [key, h] : d->sccs())
          if (2 * engine_.size(h) <= s_size) k_list.push_back(h);
        assert(!k_list.empty());

        std::unordered_set<SccId> k_set(k_list.begin(), k_list.end());
        long long removed_edges = 0;
        VertexSet r;
        for (SccId h : k_list) {
          removed_edges += engine_.internal_edge_count(h);
          for (Vertex v : engine_.members(h)) {
            r.push_back(v);
            for (const auto& he : engine_.live_out(v)) {
              if (engine_.rep(he.other) == h) continue;
              if (scratch_.owner[he.other] == d.get()) ++removed_edges;
            }
            for (const auto& he : engine_.live_in(v)) {
              if (scratch_.owner[he.other] != d.get()) continue;
              SccId cw = engine_.rep(he.other);
              if (cw == h || k_set.contains(cw)) continue;
              ++removed_edges;
            }
          }
        }
        std::sort(r.begin(), r.end());
        d->remove(r);
        d->add_to_edge_count(-removed_edges);
        for (SccId h : k_list) {
          VertexSet members = engine_.members_sorted(h);
          for (Vertex v : members) ++stats_.k_entries[v];
          auto dx = std::make_unique<StreettSet>(index_, scratch_, members,
                                                 engine_.internal_edge_count(h));
          dx->sccs().insert(h, engine_.min_member(h));
          d->sccs().erase(h);
          queue.push_back(std::move(dx));
        }
        if (!d->sccs().empty()) {
          queue.push_back(std::move(d));
        } else {
          assert(d->size() == 0);
        }
      } else {
        release(*d);  // only trivial SCCs left
      }
      notify(queue);
    }

    for (const auto& d : queue) release(*d);
    return found;
  }

 private:
  void release(StreettSet& d) {
    for (const auto& [key, h] : d.sccs())
      for (Vertex v : engine_.members(h)) {
        assert(scratch_.owner[v] == &d);
        scratch_.owner[v] = nullptr;
      }
  }

  void notify(const std::deque<std::unique_ptr<StreettSet>>& queue) {
    if (!hooks_.after_iteration) return;
    QueueSnapshot snap;
    snap.engine = &engine_;
    for (const auto& d : queue) {
      VertexSet members;
      std::vector<VertexSet> sccs;
      for (const auto& [key, h] : d->sccs()) {
        VertexSet ms = engine_.members_sorted(h);
        members.insert(members.end(), ms.begin(), ms.end());
        sccs.push_back(std::move(ms));
      }
      snap.sets.push_back(canonical(std::move(members)));
      snap.scc_lists.push_back(std::move(sccs));
    }
    hooks_.after_iteration(snap);
  }

  DecSccEngine engine_;
  StreettIndex index_;
  SolveScratch scratch_;
  GoodCompHooks hooks_;
  GraphSolveStats stats_;
};

}  // namespace detail

/// Winning set for a k-pair Streett objective on a graph: SCC decomposition,
/// good-component detection per SCC, then reachability of the satisfying
/// SCCs.
inline GraphSolveResult winning_set_graph_full(const MDPModel& model, const StreettSpec& spec,
                                               uint64_t seed = 0, GoodCompHooks hooks = {}) {
  if (!model.is_graph())
    throw std::invalid_argument("winning_set_graph: model has random vertices");
  spec.validate(model.vertex_count());
  GraphSolveResult result;
  detail::GoodCompRunner runner(model, spec, seed, std::move(hooks));
  for (const VertexSet& scc : tarjan_sccs(model)) {
    std::optional<VertexSet> good = runner.run_on_scc(scc);
    if (good) {
      result.satisfying_sccs.push_back(scc);
      result.witnesses.push_back(std::move(*good));
    }
  }
  VertexSet targets;
  for (const VertexSet& scc : result.satisfying_sccs)
    targets.insert(targets.end(), scc.begin(), scc.end());
  result.winning = graph_reach(model, canonical(std::move(targets)));
  result.deletion_trace = runner.engine().deletion_trace();
  result.stats = runner.stats();
  return result;
}

inline VertexSet winning_set_graph(const MDPModel& model, const StreettSpec& spec) {
  return winning_set_graph_full(model, spec).winning;
}

/// Good-component detection for a single SCC of the model.
inline std::optional<VertexSet> good_component(const MDPModel& model, const StreettSpec& spec,
                                               const VertexSet& scc) {
  detail::GoodCompRunner runner(model, spec, 0);
  if (scc.empty() || runner.engine().size(runner.engine().rep(scc.front())) != scc.size())
    throw std::invalid_argument("good_component: set is not an SCC of the model");
  for (Vertex v : scc)
    if (!runner.engine().query(scc.front(), v))
      throw std::invalid_argument("good_component: set is not an SCC of the model");
  return runner.run_on_scc(scc);
}

/// The exact sequence of edges deleted from the decremental SCC structure
/// while solving; determinism tests compare it across engine seeds.
inline std::vector<Edge> deletion_trace_graph(const MDPModel& model, const StreettSpec& spec,
                                              uint64_t seed = 0) {
  return winning_set_graph_full(model, spec, seed).deletion_trace;
}

}  // namespace streett
