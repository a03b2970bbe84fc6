#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "streett/dec_mec.hpp"
#include "streett/mec.hpp"
#include "streett/model.hpp"
#include "streett/oracles.hpp"
#include "streett/streett_ds.hpp"

namespace streett {

namespace detail {

/// Good-end-component search inside one MEC of a split instance. Mirrors the
/// graph search, with the decremental MEC engine supplying the component
/// collection: removing a bad vertex deletes only the player-1 edge
/// (v_in, v_out); vertices the engine expels from every non-trivial MEC are
/// removed from the working set alongside. A set is output once it forms a
/// single MEC with no bad vertices.
class MecGoodCompRunner {
 public:
  MecGoodCompRunner(const MDPModel& sub_model, const StreettSpec& sub_spec, uint64_t seed)
      : engine_(sub_model, seed),
        index_(sub_model.vertex_count(), sub_spec),
        scratch_(sub_model.vertex_count()) {}

  DecMecEngine& engine() { return engine_; }

  std::optional<VertexSet> run() {
    const Vertex n = engine_.model().vertex_count();
    std::deque<std::unique_ptr<StreettSet>> queue;
    {
      VertexSet all(n);
      for (Vertex v = 0; v < n; ++v) all[v] = v;
      SccId root = engine_.scc().rep(0);
      assert(engine_.scc().size(root) == static_cast<size_t>(n));
      auto d0 = std::make_unique<StreettSet>(index_, scratch_, all, 0);
      d0->sccs().insert(root, engine_.scc().min_member(root));
      queue.push_back(std::move(d0));
    }
    std::optional<VertexSet> found;

    while (!queue.empty()) {
      std::unique_ptr<StreettSet> d = std::move(queue.front());
      queue.pop_front();

      while (!d->bad().empty()) {
        VertexSet bad = d->bad();
        std::sort(bad.begin(), bad.end());
        d->remove(bad);
        for (Vertex b : bad) {
          assert(b % 2 == 0);  // request sets live on in-vertices
          DecMecEngine::UpdateResult res = engine_.delete_player_edge(b, b ^ 1);
          if (res.touched_root == -1) continue;
          d->sccs().erase_if_present(res.touched_root);
          for (SccId h : res.new_mecs) d->sccs().erase_if_present(h);
          if (engine_.is_nontrivial(res.touched_root)) insert_handle(*d, res.touched_root);
          for (SccId h : res.new_mecs)
            if (!d->sccs().contains(h)) insert_handle(*d, h);
          VertexSet orphaned_live;
          for (Vertex v : res.orphaned)
            if (scratch_.owner[v] == d.get()) orphaned_live.push_back(v);
          d->remove(orphaned_live);
        }
      }

      if (d->sccs().empty()) {
        assert(d->size() == 0);
        continue;
      }
      if (d->sccs().size() == 1) {
        SccId h = d->sccs().first();
        assert(engine_.scc().size(h) == d->size());
        found = engine_.members_sorted(h);
        release(*d);
        break;
      }
      const size_t s_size = d->size();
      std::vector<SccId> k_list;
      for (const auto& [key, h] : d->sccs())
        if (2 * engine_.scc().size(h) <= s_size) k_list.push_back(h);
      assert(!k_list.empty());
      VertexSet r;
      for (SccId h : k_list) {
        const auto& ms = engine_.scc().members(h);
        r.insert(r.end(), ms.begin(), ms.end());
      }
      std::sort(r.begin(), r.end());
      d->remove(r);
      for (SccId h : k_list) {
        VertexSet members = engine_.members_sorted(h);
        auto dx = std::make_unique<StreettSet>(index_, scratch_, members, 0);
        dx->sccs().insert(h, engine_.scc().min_member(h));
        d->sccs().erase(h);
        queue.push_back(std::move(dx));
      }
      if (!d->sccs().empty()) queue.push_back(std::move(d));
    }

    for (const auto& d : queue) release(*d);
    return found;
  }

 private:
  void insert_handle(StreettSet& d, SccId h) {
    // mid-batch a MEC may still hold bad vertices whose (v_in, v_out) edge is
    // yet to be deleted; their ownership is already cleared
    assert(scratch_.owner[engine_.scc().min_member(h)] == &d ||
           scratch_.owner[engine_.scc().min_member(h)] == nullptr);
    d.sccs().insert(h, engine_.scc().min_member(h));
  }

  void release(StreettSet& d) {
    for (const auto& [key, h] : d.sccs())
      for (Vertex v : engine_.scc().members(h)) {
        assert(scratch_.owner[v] == &d);
        scratch_.owner[v] = nullptr;
      }
  }

  DecMecEngine engine_;
  StreettIndex index_;
  SolveScratch scratch_;
};

}  // namespace detail

/// Good-end-component detection inside one MEC of a split instance
/// (model_s/spec_s from split_vertices). The result is mapped back to the
/// original instance: X = {v | v_in and v_out both survive}.
inline std::optional<VertexSet> good_end_component(const MDPModel& model_s,
                                                   const StreettSpec& spec_s,
                                                   const VertexSet& mec, uint64_t seed = 0,
                                                   std::vector<Edge>* trace_out = nullptr) {
  assert(is_canonical(mec));
  assert(mec.size() % 2 == 0);
  for (size_t i = 0; i < mec.size(); i += 2) {
    assert(mec[i] % 2 == 0);
    assert(mec[i + 1] == mec[i] + 1);  // in/out pairs survive together in a MEC
  }
  InducedModel sub = induced_model(model_s, mec);
  StreettSpec sub_spec = restrict_spec(spec_s, mec);
  detail::MecGoodCompRunner runner(sub.model, sub_spec, seed);
  std::optional<VertexSet> local = runner.run();
  if (trace_out) {
    for (const Edge& e : runner.engine().deletion_trace())
      trace_out->push_back({sub.members[e.from], sub.members[e.to]});
  }
  if (!local) return std::nullopt;
  VertexSet original;
  for (Vertex l : *local) {
    Vertex g = sub.members[l];
    if (g % 2 == 0) {
      assert(set_contains(*local, static_cast<Vertex>(l + 1)));
      original.push_back(g / 2);
    }
  }
  return original;
}

struct MdpSolveResult {
  VertexSet winning;
  std::vector<VertexSet> satisfying_mecs;
  std::vector<VertexSet> witnesses;  // good end-components, original coordinates
  std::vector<Edge> deletion_trace;  // split-instance coordinates, per-MEC order
};

/// Winning set for a k-pair Streett objective on an MDP: MEC decomposition,
/// good-end-component detection per MEC on the split instance (one engine per
/// MEC), then almost-sure reachability of the satisfying MECs.
inline MdpSolveResult winning_set_mdp_full(const MDPModel& model, const StreettSpec& spec,
                                           uint64_t seed = 0) {
  model.validate_input();
  spec.validate(model.vertex_count());
  MdpSolveResult result;
  MecDecomposition dec = mec_decomposition(model);
  SplitInstance split = split_vertices(model, spec);
  for (const VertexSet& mec : dec.mecs) {
    VertexSet image;
    image.reserve(2 * mec.size());
    for (Vertex v : mec) {
      image.push_back(split_in(v));
      image.push_back(split_out(v));
    }
    std::optional<VertexSet> witness =
        good_end_component(split.model, split.spec, image, seed, &result.deletion_trace);
    if (witness) {
      result.satisfying_mecs.push_back(mec);
      result.witnesses.push_back(std::move(*witness));
    }
  }
  VertexSet targets;
  for (const VertexSet& mec : result.satisfying_mecs)
    targets.insert(targets.end(), mec.begin(), mec.end());
  result.winning = asw_reach(model, canonical(std::move(targets)));
  return result;
}

inline VertexSet winning_set_mdp(const MDPModel& model, const StreettSpec& spec) {
  return winning_set_mdp_full(model, spec).winning;
}

/// Property check for the vertex-splitting reduction: the original instance
/// has a good end-component iff the split instance does (both sides evaluated
/// with the static oracle).
inline bool equivalence_check_split(const MDPModel& model, const StreettSpec& spec) {
  bool original = oracle_has_good_end_component(model, spec);
  SplitInstance split = split_vertices(model, spec);
  bool reduced = oracle_has_good_end_component(split.model, split.spec);
  return original == reduced;
}

}  // namespace streett
