#pragma once

#include <map>
#include <unordered_map>

#include "streett/dec_scc.hpp"
#include "streett/model.hpp"

namespace streett {

/// One-time preprocessing of a Streett spec: per-vertex lists of the pair
/// indices whose L (resp. U) set contains the vertex, in CSR layout.
class StreettIndex {
 public:
  StreettIndex(Vertex n, const StreettSpec& spec) : k_(spec.pair_count()) {
    l_off_.assign(n + 1, 0);
    u_off_.assign(n + 1, 0);
    for (int j = 0; j < k_; ++j) {
      for (Vertex v : spec.L[j]) ++l_off_[v + 1];
      for (Vertex v : spec.U[j]) ++u_off_[v + 1];
    }
    for (Vertex v = 0; v < n; ++v) {
      l_off_[v + 1] += l_off_[v];
      u_off_[v + 1] += u_off_[v];
    }
    l_pairs_.resize(l_off_[n]);
    u_pairs_.resize(u_off_[n]);
    std::vector<int32_t> lc(l_off_.begin(), l_off_.end() - 1);
    std::vector<int32_t> uc(u_off_.begin(), u_off_.end() - 1);
    for (int j = 0; j < k_; ++j) {
      for (Vertex v : spec.L[j]) l_pairs_[lc[v]++] = j;
      for (Vertex v : spec.U[j]) u_pairs_[uc[v]++] = j;
    }
  }

  int pair_count() const { return k_; }
  std::span<const int32_t> l_pairs(Vertex v) const {
    return {l_pairs_.data() + l_off_[v], l_pairs_.data() + l_off_[v + 1]};
  }
  std::span<const int32_t> u_pairs(Vertex v) const {
    return {u_pairs_.data() + u_off_[v], u_pairs_.data() + u_off_[v + 1]};
  }

 private:
  int k_ = 0;
  std::vector<int32_t> l_off_, u_off_;
  std::vector<int32_t> l_pairs_, u_pairs_;
};

class StreettSet;

/// Per-solve shared state: which set currently owns each vertex (null once the
/// vertex is removed), bad markings, and cost accounting. Sets maintained in
/// one run own disjoint vertex sets, so flat arrays suffice.
struct SolveScratch {
  explicit SolveScratch(Vertex n)
      : owner(n, nullptr), bad_flag(n, 0), bad_pos(n, -1) {}
  std::vector<StreettSet*> owner;
  std::vector<char> bad_flag;
  std::vector<int32_t> bad_pos;
  long long ds_cost = 0;  // sum of bits(arg) + |arg| over construct/remove
};

/// Ordered collection of SCC references keyed by their smallest member id.
/// Keys are captured at insertion; after an engine split shrinks a referenced
/// component, re-key it with refresh() before inserting the new pieces.
class SccCollection {
 public:
  void insert(SccId id, Vertex key) {
    assert(!key_of_.contains(id));
    by_key_.emplace(key, id);
    key_of_.emplace(id, key);
  }

  void erase(SccId id) {
    auto it = key_of_.find(id);
    if (it == key_of_.end())
      throw std::invalid_argument("SccCollection: erase of absent handle");
    by_key_.erase(it->second);
    key_of_.erase(it);
  }

  bool erase_if_present(SccId id) {
    auto it = key_of_.find(id);
    if (it == key_of_.end()) return false;
    by_key_.erase(it->second);
    key_of_.erase(it);
    return true;
  }

  bool contains(SccId id) const { return key_of_.contains(id); }
  size_t size() const { return by_key_.size(); }
  bool empty() const { return by_key_.empty(); }
  SccId first() const { return by_key_.begin()->second; }

  auto begin() const { return by_key_.begin(); }
  auto end() const { return by_key_.end(); }

 private:
  std::map<Vertex, SccId> by_key_;  // smallest-member key -> handle
  std::unordered_map<SccId, Vertex> key_of_;
};

/// The per-set structure D(S): pair-intersection counters, the bad-vertex set
/// {v in S | exists j: v in L_j and U_j disjoint from S} maintained under
/// removals, the live-edge count of G[S], and the collection of SCC
/// references currently partitioning S. Construction costs
/// O(bits(S) + |S|), removal O(bits(B) + |B|), bad access O(1).
class StreettSet {
 public:
  StreettSet(const StreettIndex& index, SolveScratch& scratch, const VertexSet& members,
             long long edge_count)
      : index_(index), scratch_(scratch), size_(members.size()), edge_count_(edge_count) {
    long long cost = static_cast<long long>(members.size());
    for (Vertex v : members) {
      assert(scratch_.owner[v] == nullptr);
      scratch_.owner[v] = this;
    }
    for (Vertex v : members) {
      for (int32_t j : index_.l_pairs(v)) {
        ++cnt_l_[j];
        l_members_[j].push_back(v);
        ++cost;
      }
      for (int32_t j : index_.u_pairs(v)) {
        ++cnt_u_[j];
        ++cost;
      }
    }
    for (Vertex v : members)
      for (int32_t j : index_.l_pairs(v))
        if (!cnt_u_.contains(j)) mark_bad(v);
    scratch_.ds_cost += cost;
  }

  StreettSet(const StreettSet&) = delete;
  StreettSet& operator=(const StreettSet&) = delete;

  ~StreettSet() {
    // drop stale bad markings so the scratch can be reused by later sets
    for (Vertex v : bad_) {
      scratch_.bad_flag[v] = 0;
      scratch_.bad_pos[v] = -1;
    }
  }

  size_t size() const { return size_; }
  bool owns(Vertex v) const { return scratch_.owner[v] == this; }

  long long edge_count() const { return edge_count_; }
  void add_to_edge_count(long long delta) { edge_count_ += delta; }

  const VertexSet& bad() const { return bad_; }

  SccCollection& sccs() { return sccs_; }
  const SccCollection& sccs() const { return sccs_; }

  /// Updates S to S \ B. Vertices of B must currently belong to this set;
  /// their ownership is cleared (callers re-own them when splitting off).
  void remove(const VertexSet& B) {
    long long cost = static_cast<long long>(B.size());
    for (Vertex v : B) {
      if (scratch_.owner[v] != this)
        throw std::invalid_argument("StreettSet::remove: vertex not in set");
      scratch_.owner[v] = nullptr;
      unmark_bad(v);
    }
    size_ -= B.size();
    for (Vertex v : B) {
      for (int32_t j : index_.l_pairs(v)) {
        --cnt_l_[j];
        ++cost;
      }
      for (int32_t j : index_.u_pairs(v)) {
        ++cost;
        auto it = cnt_u_.find(j);
        assert(it != cnt_u_.end());  // v contributed to this counter at construct
        if (--it->second > 0) continue;
        cnt_u_.erase(it);
        // U_j left S: all members of S still in L_j turn bad
        auto lm = l_members_.find(j);
        if (lm == l_members_.end()) continue;
        for (Vertex w : lm->second)
          if (scratch_.owner[w] == this) mark_bad(w);
        l_members_.erase(lm);
      }
    }
    scratch_.ds_cost += cost;
  }

 private:
  void mark_bad(Vertex v) {
    if (scratch_.bad_flag[v]) return;
    scratch_.bad_flag[v] = 1;
    scratch_.bad_pos[v] = static_cast<int32_t>(bad_.size());
    bad_.push_back(v);
  }

  void unmark_bad(Vertex v) {
    if (!scratch_.bad_flag[v]) return;
    int32_t p = scratch_.bad_pos[v];
    Vertex moved = bad_.back();
    bad_[p] = moved;
    bad_.pop_back();
    if (moved != v) scratch_.bad_pos[moved] = p;
    scratch_.bad_flag[v] = 0;
    scratch_.bad_pos[v] = -1;
  }

  const StreettIndex& index_;
  SolveScratch& scratch_;
  size_t size_ = 0;
  long long edge_count_ = 0;
  std::unordered_map<int32_t, int32_t> cnt_l_, cnt_u_;
  std::unordered_map<int32_t, std::vector<Vertex>> l_members_;
  VertexSet bad_;
  SccCollection sccs_;
};

}  // namespace streett
