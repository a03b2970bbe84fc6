#pragma once

#include <unordered_map>
#include <unordered_set>

#include "streett/model.hpp"
#include "streett/scc.hpp"

namespace streett {

using SccId = int32_t;

/// Decremental SCC maintenance with batched deletions and announcements.
///
/// A component reference (SccId) stays valid from creation until the
/// component splits; after a split the largest piece keeps the id (ties
/// broken towards the piece with the smallest member). delete_announce
/// reports every SCC whose member set came into existence in the batch,
/// i.e. all pieces of every split, including the one that kept its id.
/// delete_announce_no_outgoing reports every SCC that enters the
/// outgoing-free state with its current member set.
///
/// Engine strategy: deletions are applied, then SCCs are recomputed only
/// inside components that lost an internal edge; partition maps and
/// outgoing/internal edge counters are repaired by scanning only the edges
/// incident to the non-surviving ("small") pieces, so each vertex is scanned
/// O(log n) times over a full run. The seed parameter is reserved for
/// randomized engine variants; this engine is deterministic.
class DecSccEngine {
 public:
  enum class DeleteMode { Strict, Replay };

  struct HalfEdge {
    Vertex other;
    int32_t id;
  };

  struct Stats {
    long long edges_deleted = 0;
    long long skipped_deletes = 0;
    long long batches = 0;
    std::vector<int32_t> small_appearances;  // per vertex
  };

  explicit DecSccEngine(const MDPModel& model, uint64_t seed = 0,
                        DeleteMode mode = DeleteMode::Strict)
      : n_(model.vertex_count()), seed_(seed), mode_(mode) {
    const auto& edges = model.edges();
    edges_.assign(edges.begin(), edges.end());
    alive_.assign(edges_.size(), 1);
    live_edges_ = static_cast<long long>(edges_.size());
    edge_id_.reserve(2 * edges_.size());
    out_.resize(n_);
    in_.resize(n_);
    pos_out_.resize(edges_.size());
    pos_in_.resize(edges_.size());
    for (int32_t id = 0; id < static_cast<int32_t>(edges_.size()); ++id) {
      const Edge& e = edges_[id];
      edge_id_.emplace(key(e.from, e.to), id);
      pos_out_[id] = static_cast<int32_t>(out_[e.from].size());
      out_[e.from].push_back({e.to, id});
      pos_in_[id] = static_cast<int32_t>(in_[e.to].size());
      in_[e.to].push_back({e.from, id});
    }
    comp_of_.assign(n_, -1);
    member_pos_.assign(n_, -1);
    for (const VertexSet& c : tarjan_sccs(model)) {
      SccId id = static_cast<SccId>(comps_.size());
      comps_.push_back({});
      Comp& comp = comps_.back();
      comp.min_member = c.front();
      comp.members = c;
      for (size_t i = 0; i < c.size(); ++i) {
        comp_of_[c[i]] = id;
        member_pos_[c[i]] = static_cast<int32_t>(i);
      }
    }
    for (const Edge& e : edges_) {
      if (comp_of_[e.from] == comp_of_[e.to])
        ++comps_[comp_of_[e.from]].internal_edges;
      else
        ++comps_[comp_of_[e.from]].out_counter;
    }
    stats_.small_appearances.assign(n_, 0);
    t_stamp_.assign(n_, 0);
    t_index_.assign(n_, 0);
    t_low_.assign(n_, 0);
    t_stackpos_.assign(n_, -1);
    scratch_flag_.assign(n_, 0);
  }

  Vertex vertex_count() const { return n_; }
  uint64_t seed() const { return seed_; }

  SccId rep(Vertex u) const { return comp_of_[u]; }
  bool query(Vertex u, Vertex v) const { return comp_of_[u] == comp_of_[v]; }

  /// Members in internal (unspecified but deterministic) order.
  const std::vector<Vertex>& members(SccId c) const { return comps_[c].members; }
  VertexSet members_sorted(SccId c) const {
    VertexSet s = comps_[c].members;
    std::sort(s.begin(), s.end());
    return s;
  }
  size_t size(SccId c) const { return comps_[c].members.size(); }
  Vertex min_member(SccId c) const { return comps_[c].min_member; }
  long long out_counter(SccId c) const { return comps_[c].out_counter; }
  long long internal_edge_count(SccId c) const { return comps_[c].internal_edges; }
  bool is_trivial(SccId c) const {
    return comps_[c].members.size() == 1 && comps_[c].internal_edges == 0;
  }
  size_t component_count() const { return comps_.size(); }

  std::span<const HalfEdge> live_out(Vertex v) const { return out_[v]; }
  std::span<const HalfEdge> live_in(Vertex v) const { return in_[v]; }
  int32_t out_degree(Vertex v) const { return static_cast<int32_t>(out_[v].size()); }
  int32_t in_degree(Vertex v) const { return static_cast<int32_t>(in_[v].size()); }
  long long live_edge_count() const { return live_edges_; }

  bool has_live_edge(Vertex u, Vertex v) const {
    auto it = edge_id_.find(key(u, v));
    return it != edge_id_.end() && alive_[it->second];
  }

  /// All live edges incident to U (deduplicated), sorted by (from, to).
  std::vector<Edge> incident_edges(const VertexSet& u_set) const {
    for (Vertex u : u_set) scratch_flag_[u] = 1;
    std::vector<Edge> out;
    for (Vertex u : u_set) {
      for (const HalfEdge& he : out_[u]) out.push_back({u, he.other});
      for (const HalfEdge& he : in_[u])
        if (!scratch_flag_[he.other]) out.push_back({he.other, u});
    }
    for (Vertex u : u_set) scratch_flag_[u] = 0;
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Deletes the batch and returns references to every SCC created by a
  /// split in this batch (the surviving id included), sorted by smallest
  /// member id.
  std::vector<SccId> delete_announce(std::span<const Edge> batch) {
    return process_batch(batch).pieces;
  }
  std::vector<SccId> delete_announce(const std::vector<Edge>& batch) {
    return delete_announce(std::span<const Edge>(batch));
  }

  /// Deletes the batch and returns every SCC that transitions into the
  /// outgoing-free (bottom) state as a result of it: newly created bottom
  /// pieces as well as pre-existing SCCs whose last outgoing edge was
  /// deleted. Sorted by smallest member id.
  std::vector<SccId> delete_announce_no_outgoing(std::span<const Edge> batch) {
    return process_batch(batch).bottoms;
  }
  std::vector<SccId> delete_announce_no_outgoing(const std::vector<Edge>& batch) {
    return delete_announce_no_outgoing(std::span<const Edge>(batch));
  }

  const std::vector<Edge>& deletion_trace() const { return trace_; }
  const Stats& stats() const { return stats_; }

  /// Current partition, members sorted, components sorted by smallest member.
  std::vector<VertexSet> current_components() const {
    std::vector<VertexSet> out;
    out.reserve(comps_.size());
    for (SccId c = 0; c < static_cast<SccId>(comps_.size()); ++c)
      if (!comps_[c].members.empty()) out.push_back(members_sorted(c));
    std::sort(out.begin(), out.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
    return out;
  }

 private:
  struct Comp {
    std::vector<Vertex> members;
    long long out_counter = 0;
    long long internal_edges = 0;
    Vertex min_member = 0;
  };

  struct BatchOutcome {
    std::vector<SccId> pieces;
    std::vector<SccId> bottoms;
  };

  static uint64_t key(Vertex u, Vertex v) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
  }

  void erase_half(std::vector<HalfEdge>& list, std::vector<int32_t>& pos, int32_t id) {
    int32_t p = pos[id];
    int32_t moved = list.back().id;
    list[p] = list.back();
    list.pop_back();
    if (moved != id) pos[moved] = p;
  }

  BatchOutcome process_batch(std::span<const Edge> batch) {
    ++stats_.batches;
    const SccId first_new = static_cast<SccId>(comps_.size());
    std::vector<SccId> dirty;
    std::unordered_set<SccId> dirty_set;
    std::unordered_map<SccId, long long> pre_out;
    std::unordered_set<SccId> split_survivors;

    for (const Edge& e : batch) {
      auto it = edge_id_.find(key(e.from, e.to));
      if (it == edge_id_.end() || !alive_[it->second]) {
        if (mode_ == DeleteMode::Strict)
          throw std::invalid_argument("delete of unknown or already-deleted edge (" +
                                      std::to_string(e.from) + "," + std::to_string(e.to) + ")");
        ++stats_.skipped_deletes;
        continue;
      }
      const int32_t id = it->second;
      alive_[id] = 0;
      --live_edges_;
      ++stats_.edges_deleted;
      trace_.push_back(e);
      erase_half(out_[e.from], pos_out_, id);
      erase_half(in_[e.to], pos_in_, id);
      SccId a = comp_of_[e.from], b = comp_of_[e.to];
      if (a == b) {
        --comps_[a].internal_edges;
        if (dirty_set.insert(a).second) dirty.push_back(a);
      } else {
        pre_out.try_emplace(a, comps_[a].out_counter);
        --comps_[a].out_counter;
      }
    }

    BatchOutcome outcome;
    for (SccId c : dirty) {
      if (comps_[c].members.size() == 1) continue;
      std::vector<std::vector<Vertex>> pieces = tarjan_in_component(c);
      if (pieces.size() == 1) continue;
      split_survivors.insert(c);

      // survivor: largest piece, ties to the one holding the smallest member
      size_t surv = 0;
      std::vector<Vertex> mins(pieces.size());
      for (size_t i = 0; i < pieces.size(); ++i)
        mins[i] = *std::min_element(pieces[i].begin(), pieces[i].end());
      for (size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].size() > pieces[surv].size() ||
            (pieces[i].size() == pieces[surv].size() && mins[i] < mins[surv]))
          surv = i;
      }
      std::vector<size_t> order;
      for (size_t i = 0; i < pieces.size(); ++i)
        if (i != surv) order.push_back(i);
      std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return mins[a] < mins[b]; });

      const SccId split_first = static_cast<SccId>(comps_.size());
      for (size_t oi : order) {
        SccId id = static_cast<SccId>(comps_.size());
        comps_.push_back({});
        Comp& np = comps_.back();
        np.min_member = mins[oi];
        np.members = std::move(pieces[oi]);
        for (size_t i = 0; i < np.members.size(); ++i) {
          Vertex v = np.members[i];
          ++stats_.small_appearances[v];
          // unlink from the survivor's member list
          Comp& oldc = comps_[c];
          int32_t p = member_pos_[v];
          Vertex moved = oldc.members.back();
          oldc.members[p] = moved;
          oldc.members.pop_back();
          if (moved != v) member_pos_[moved] = p;
          comp_of_[v] = id;
          member_pos_[v] = static_cast<int32_t>(i);
        }
      }
      comps_[c].min_member =
          *std::min_element(comps_[c].members.begin(), comps_[c].members.end());

      // repair counters by scanning edges incident to the non-surviving pieces
      long long big_gain = 0, big_loss = 0, cross_pieces = 0, small_internal = 0;
      for (SccId pid = split_first; pid < static_cast<SccId>(comps_.size()); ++pid) {
        long long internal_p = 0, out_p = 0;
        for (Vertex v : comps_[pid].members) {
          for (const HalfEdge& he : out_[v]) {
            SccId cw = comp_of_[he.other];
            if (cw == pid) {
              ++internal_p;
            } else {
              ++out_p;
              if (cw == c || (cw >= split_first && cw < static_cast<SccId>(comps_.size())))
                ++cross_pieces;
              else
                ++big_loss;
            }
          }
          for (const HalfEdge& he : in_[v]) {
            if (comp_of_[he.other] == c) {
              ++big_gain;
              ++cross_pieces;
            }
          }
        }
        comps_[pid].out_counter = out_p;
        comps_[pid].internal_edges = internal_p;
        small_internal += internal_p;
      }
      comps_[c].out_counter += big_gain - big_loss;
      comps_[c].internal_edges -= small_internal + cross_pieces;

      outcome.pieces.push_back(c);
      for (SccId pid = split_first; pid < static_cast<SccId>(comps_.size()); ++pid)
        outcome.pieces.push_back(pid);
    }

    std::sort(outcome.pieces.begin(), outcome.pieces.end(),
              [this](SccId a, SccId b) { return comps_[a].min_member < comps_[b].min_member; });

    // bottom transitions: counter reached zero and the member set is new to
    // the bottom state (created, shrunk by a split, or positive before)
    std::vector<SccId> candidates = outcome.pieces;
    for (const auto& [c, pre] : pre_out) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (SccId c : candidates) {
      if (comps_[c].out_counter != 0) continue;
      bool created = c >= first_new;
      bool split = split_survivors.contains(c);
      bool was_positive = false;
      if (auto it = pre_out.find(c); it != pre_out.end()) was_positive = it->second > 0;
      if (created || split || was_positive) outcome.bottoms.push_back(c);
    }
    std::sort(outcome.bottoms.begin(), outcome.bottoms.end(),
              [this](SccId a, SccId b) { return comps_[a].min_member < comps_[b].min_member; });
    return outcome;
  }

  /// Iterative Tarjan restricted to one component's members over live edges.
  std::vector<std::vector<Vertex>> tarjan_in_component(SccId c) {
    ++t_version_;
    int32_t counter = 0;
    std::vector<std::vector<Vertex>> pieces;
    struct Frame {
      Vertex v;
      int32_t cursor;
    };
    std::vector<Frame> frames;
    std::vector<Vertex> stack;
    for (Vertex root : comps_[c].members) {
      if (t_stamp_[root] == t_version_) continue;
      frames.push_back({root, 0});
      while (!frames.empty()) {
        Frame& f = frames.back();
        Vertex v = f.v;
        if (f.cursor == 0) {
          t_stamp_[v] = t_version_;
          t_index_[v] = t_low_[v] = counter++;
          t_stackpos_[v] = static_cast<int32_t>(stack.size());
          stack.push_back(v);
        }
        Vertex w = -1;
        while (f.cursor < static_cast<int32_t>(out_[v].size())) {
          Vertex cand = out_[v][f.cursor].other;
          ++f.cursor;
          if (comp_of_[cand] != c) continue;
          w = cand;
          break;
        }
        if (w >= 0) {
          if (t_stamp_[w] != t_version_) {
            frames.push_back({w, 0});
          } else if (t_stackpos_[w] != -1) {
            t_low_[v] = std::min(t_low_[v], t_index_[w]);
          }
        } else {
          if (t_low_[v] == t_index_[v]) {
            std::vector<Vertex> piece;
            while (true) {
              Vertex u = stack.back();
              stack.pop_back();
              t_stackpos_[u] = -1;
              piece.push_back(u);
              if (u == v) break;
            }
            pieces.push_back(std::move(piece));
          }
          frames.pop_back();
          if (!frames.empty())
            t_low_[frames.back().v] = std::min(t_low_[frames.back().v], t_low_[v]);
        }
      }
    }
    return pieces;
  }

  Vertex n_ = 0;
  uint64_t seed_ = 0;
  DeleteMode mode_ = DeleteMode::Strict;

  std::vector<Edge> edges_;
  std::vector<char> alive_;
  long long live_edges_ = 0;
  std::unordered_map<uint64_t, int32_t> edge_id_;
  std::vector<std::vector<HalfEdge>> out_, in_;
  std::vector<int32_t> pos_out_, pos_in_;

  std::vector<SccId> comp_of_;
  std::vector<int32_t> member_pos_;
  std::vector<Comp> comps_;

  std::vector<Edge> trace_;
  Stats stats_;

  // Tarjan scratch with version stamps, reused across batches
  std::vector<int32_t> t_index_, t_low_, t_stackpos_, t_stamp_;
  int32_t t_version_ = 0;
  mutable std::vector<char> scratch_flag_;
};

}  // namespace streett
