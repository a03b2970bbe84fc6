#pragma once

#include <deque>
#include <functional>

#include "streett/dec_scc.hpp"
#include "streett/mec.hpp"
#include "streett/model.hpp"

namespace streett {

/// Maintains the pure MDP graph (the subgraph of edges lying inside
/// non-trivial MECs) under player-1 edge deletions. Non-trivial SCCs of the
/// pure graph are exactly the non-trivial MECs of the current MDP, which
/// makes same-MEC queries constant time.
///
/// Updates follow the worklist scheme: when a deletion splits a component,
/// the largest piece is left alone and all edges incident to the smaller
/// pieces are scanned; cross-piece edges are deleted, random vertices that
/// escape their piece are collected and their random attractor is removed,
/// and the pieces created by that removal are enqueued again. An update
/// reports the newly certified non-trivial MECs plus the vertices that were
/// expelled from every non-trivial MEC ("orphaned"), which callers use to
/// shrink their working sets.
class DecMecEngine {
 public:
  enum class DeleteMode { Strict, Replay };

  struct UpdateResult {
    std::vector<SccId> new_mecs;  // sorted by smallest member
    VertexSet orphaned;
    SccId touched_root = -1;  // component of the edge before deletion, -1 if none
  };

  /// Called after each worklist list is processed; receives the pending
  /// component lists. Test instrumentation only.
  using Observer = std::function<void(const DecMecEngine&, const std::deque<std::vector<SccId>>&)>;

  explicit DecMecEngine(const MDPModel& model, uint64_t seed = 0,
                        DeleteMode mode = DeleteMode::Strict)
      : model_(&model), mode_(mode) {
    MecDecomposition dec = mec_decomposition_full(model, false, nullptr, seed);
    std::vector<int32_t> mec_of(model.vertex_count(), -1);
    for (size_t i = 0; i < dec.mecs.size(); ++i)
      for (Vertex v : dec.mecs[i]) mec_of[v] = static_cast<int32_t>(i);
    std::vector<Edge> pure;
    for (const Edge& e : model.edges())
      if (mec_of[e.from] != -1 && mec_of[e.from] == mec_of[e.to]) pure.push_back(e);
    scc_.emplace(MDPModel(model.vertex_count(), model.owners(), std::move(pure)), seed);
    consumed_.assign(model.edge_count(), 0);
    counter_.assign(model.vertex_count(), 0);
    stamp_.assign(model.vertex_count(), 0);
    in_attr_.assign(model.vertex_count(), 0);
    in_u_.assign(model.vertex_count(), 0);
  }

  const MDPModel& model() const { return *model_; }
  const DecSccEngine& scc() const { return *scc_; }

  bool same_mec(Vertex u, Vertex v) const { return scc_->query(u, v); }

  VertexSet members_sorted(SccId c) const { return scc_->members_sorted(c); }
  size_t size(SccId c) const { return scc_->size(c); }
  bool is_nontrivial(SccId c) const { return !scc_->is_trivial(c); }

  const std::vector<Edge>& deletion_trace() const { return scc_->deletion_trace(); }

  void set_observer(Observer obs) { observer_ = std::move(obs); }

  /// Current non-trivial MECs, sorted by smallest member.
  std::vector<VertexSet> current_mecs() const {
    std::vector<VertexSet> out;
    for (SccId c = 0; c < static_cast<SccId>(scc_->component_count()); ++c)
      if (!scc_->is_trivial(c)) out.push_back(scc_->members_sorted(c));
    std::sort(out.begin(), out.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
    return out;
  }

  /// Deletes the player-1 edge (u, v) from the MDP and updates the pure
  /// graph. Returns the new non-trivial MECs certified by this update and
  /// the vertices expelled from every non-trivial MEC.
  UpdateResult delete_player_edge(Vertex u, Vertex v) {
    UpdateResult result;
    if (u < 0 || u >= model_->vertex_count() || v < 0 || v >= model_->vertex_count())
      throw std::invalid_argument("delete_player_edge: vertex out of range");
    if (!model_->is_player(u))
      throw std::invalid_argument("delete_player_edge: source is not a player-1 vertex");
    const auto& edges = model_->edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
    if (it == edges.end() || !(*it == Edge{u, v})) {
      if (mode_ == DeleteMode::Strict)
        throw std::invalid_argument("delete_player_edge: edge not in the original MDP");
      return result;
    }
    size_t idx = static_cast<size_t>(it - edges.begin());
    if (consumed_[idx]) {
      if (mode_ == DeleteMode::Strict)
        throw std::invalid_argument("delete_player_edge: edge already deleted");
      return result;
    }
    consumed_[idx] = 1;

    if (!scc_->has_live_edge(u, v)) return result;  // not inside any MEC
    result.touched_root = scc_->rep(u);

    std::vector<SccId> j0 = scc_->delete_announce(std::vector<Edge>{{u, v}});
    if (j0.empty()) {
      // no split; a singleton MEC losing its self-loop dissolves
      if (scc_->is_trivial(scc_->rep(u))) mark_orphan(u, result);
      finish(result);
      return result;
    }

    std::deque<std::vector<SccId>> worklist;
    worklist.push_back(std::move(j0));
    while (!worklist.empty()) {
      std::vector<SccId> list = std::move(worklist.front());
      worklist.pop_front();
      process_list(list, worklist, result);
      if (observer_) observer_(*this, worklist);
    }
    finish(result);
    return result;
  }

 private:
  void mark_orphan(Vertex v, UpdateResult& result) {
    if (in_attr_[v]) return;
    in_attr_[v] = 1;
    result.orphaned.push_back(v);
  }

  void finish(UpdateResult& result) {
    std::sort(result.orphaned.begin(), result.orphaned.end());
    for (Vertex v : result.orphaned) in_attr_[v] = 0;
    std::sort(result.new_mecs.begin(), result.new_mecs.end(), [this](SccId a, SccId b) {
      return scc_->min_member(a) < scc_->min_member(b);
    });
  }

  void certify(SccId c, UpdateResult& result) {
    if (scc_->is_trivial(c)) {
      mark_orphan(scc_->members(c).front(), result);
    } else {
      result.new_mecs.push_back(c);
    }
  }

  void process_list(const std::vector<SccId>& list, std::deque<std::vector<SccId>>& worklist,
                    UpdateResult& result) {
    size_t largest = 0;
    for (size_t i = 1; i < list.size(); ++i) {
      if (scc_->size(list[i]) > scc_->size(list[largest]) ||
          (scc_->size(list[i]) == scc_->size(list[largest]) &&
           scc_->min_member(list[i]) < scc_->min_member(list[largest])))
        largest = i;
    }
    const SccId c1 = list[largest];
    std::vector<SccId> rest;
    for (size_t i = 0; i < list.size(); ++i)
      if (i != largest) rest.push_back(list[i]);
    std::sort(rest.begin(), rest.end(),
              [this](SccId a, SccId b) { return scc_->min_member(a) < scc_->min_member(b); });

    // Pass 1: scan edges incident to the small pieces. Cross-piece edges are
    // deleted; any random source of a cross edge escapes its own piece, no
    // matter which piece's scan sees the edge.
    std::unordered_map<SccId, VertexSet> escapers;
    VertexSet flagged;
    auto record_escape = [&](Vertex s) {
      if (in_u_[s]) return;
      in_u_[s] = 1;
      flagged.push_back(s);
      escapers[scc_->rep(s)].push_back(s);
    };
    for (SccId ci : rest) {
      VertexSet members = scc_->members_sorted(ci);
      std::vector<Edge> cross;
      for (Vertex x : members) {
        for (const auto& he : scc_->live_out(x)) {
          if (scc_->rep(he.other) == ci) continue;
          cross.push_back({x, he.other});
          if (model_->is_random(x)) record_escape(x);
        }
        for (const auto& he : scc_->live_in(x)) {
          Vertex w = he.other;
          if (scc_->rep(w) == ci) continue;
          cross.push_back({w, x});
          if (model_->is_random(w)) record_escape(w);
        }
      }
      std::sort(cross.begin(), cross.end());
      if (!cross.empty()) {
        std::vector<SccId> none = scc_->delete_announce(cross);
        assert(none.empty());  // cross-SCC deletions never split
        (void)none;
      }
    }
    for (Vertex x : flagged) in_u_[x] = 0;

    // Pass 2: every piece is now isolated; pieces without escaping randoms
    // are MECs, the others lose the attractor of their escapers.
    for (SccId ci : rest) {
      auto it = escapers.find(ci);
      if (it == escapers.end())
        certify(ci, result);
      else
        remove_attractor(ci, it->second, worklist, result);
    }
    auto it = escapers.find(c1);
    if (it == escapers.end())
      certify(c1, result);
    else
      remove_attractor(c1, it->second, worklist, result);
  }

  /// Removes attr_R(U) inside component c from the pure graph; the pieces the
  /// deletion creates (minus the removed vertices' leftover singletons) are
  /// enqueued for re-examination.
  void remove_attractor(SccId c, const VertexSet& u_set,
                        std::deque<std::vector<SccId>>& worklist, UpdateResult& result) {
    ++round_;
    std::vector<Vertex> queue;
    for (Vertex v : u_set) {
      assert(scc_->rep(v) == c);
      mark_orphan(v, result);
      stamp_[v] = round_;
      queue.push_back(v);
    }
    for (size_t i = 0; i < queue.size(); ++i) {
      for (const auto& he : scc_->live_in(queue[i])) {
        Vertex w = he.other;
        if (scc_->rep(w) != c || stamp_[w] == round_) continue;
        bool attract;
        if (model_->is_random(w)) {
          attract = true;
        } else {
          if (stamp_[w] != -round_) {
            stamp_[w] = -round_;
            counter_[w] = scc_->out_degree(w);
          }
          attract = --counter_[w] == 0;
        }
        if (attract) {
          stamp_[w] = round_;
          mark_orphan(w, result);
          queue.push_back(w);
        }
      }
    }
    VertexSet attr = canonical(std::move(queue));
    std::vector<Edge> edges = scc_->incident_edges(attr);
    std::vector<SccId> announced = scc_->delete_announce(edges);
    std::vector<SccId> next;
    for (SccId h : announced) {
      const auto& m = scc_->members(h);
      if (m.size() == 1 && in_attr_[m.front()]) continue;  // removed leftover
      next.push_back(h);
    }
    if (!next.empty()) worklist.push_back(std::move(next));
  }

  const MDPModel* model_;
  DeleteMode mode_;
  std::optional<DecSccEngine> scc_;
  std::vector<char> consumed_;
  Observer observer_;

  // attractor scratch: stamp == round_ means attracted this round,
  // stamp == -round_ means counter initialized this round
  std::vector<long long> counter_;
  std::vector<int32_t> stamp_;
  std::vector<char> in_attr_;  // orphan flag, valid during one update
  std::vector<char> in_u_;
  int32_t round_ = 0;
};

}  // namespace streett
