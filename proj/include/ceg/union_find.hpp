#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ceg/ids.hpp"

namespace ceg {

/// Disjoint sets over dense EClassIds with path compression.
///
/// The representative of a set is always its lowest-numbered root, so the
/// survivor of a union is deterministic and canonical forms are stable
/// across runs.
class UnionFind {
  public:
    /// Allocate a fresh singleton; ids are dense and increasing.
    EClassId make_set() {
        const EClassId id = static_cast<EClassId>(parent_.size());
        parent_.push_back(id);
        size_.push_back(1);
        return id;
    }

    /// Representative of `id`'s set. Compresses the traversed path.
    EClassId find(EClassId id) const {
        check(id);
        EClassId root = id;
        while (parent_[root] != root)
            root = parent_[root];
        while (parent_[id] != root) {
            const EClassId next = parent_[id];
            parent_[id] = root;
            id = next;
        }
        return root;
    }

    /// Merge the sets of `a` and `b`. The lower-numbered root survives.
    /// Returns the surviving representative and whether a merge happened.
    std::pair<EClassId, bool> unite(EClassId a, EClassId b) {
        EClassId ra = find(a);
        EClassId rb = find(b);
        if (ra == rb)
            return {ra, false};
        if (rb < ra)
            std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        ++version_;
        return {ra, true};
    }

    bool same(EClassId a, EClassId b) const { return find(a) == find(b); }

    std::size_t size() const { return parent_.size(); }

    /// Number of members of `id`'s set.
    std::size_t set_size(EClassId id) const { return size_[find(id)]; }

    /// Bumped once per successful unite; lets layered structures detect
    /// that their cached keys may have gone stale.
    std::uint64_t version() const { return version_; }

  private:
    void check(EClassId id) const {
        if (id >= parent_.size())
            throw std::out_of_range("UnionFind: unknown id " + std::to_string(id));
    }

    mutable std::vector<EClassId> parent_;
    std::vector<std::uint32_t> size_;
    std::uint64_t version_ = 0;
};

/// One layer of a layered union-find: a sparse delta of extra unions over
/// the relation of the layer below (the master UnionFind, or another
/// layer). Only ids actually merged in this layer appear in the delta.
///
/// The layer below is passed in as a callable `below(id) -> representative`
/// together with its version counter, so layers stay plain values and can
/// be stacked or copied freely. Keys and values of the delta are roots of
/// the layer below; after unions below they go stale and are re-canonicalized
/// lazily by replaying the union log (`sync`). No path compression here --
/// deltas are expected to stay small.
class LayeredUnionFind {
  public:
    /// Re-normalize the delta if the relation below changed since the last
    /// sync. Callers (the owning graph, or tests driving the layer by hand)
    /// run this before find/unite/group.
    template <class Below>
    void sync(std::uint64_t below_version, Below&& below) const {
        if (!dirty_ && below_version == below_version_)
            return;
        parent_.clear();
        groups_.clear();
        for (const auto& [a, b] : log_)
            link(chase(below(a)), chase(below(b)));
        below_version_ = below_version;
        dirty_ = false;
    }

    /// Layer representative: representative below, then delta closure.
    template <class Below>
    EClassId find(EClassId id, Below&& below) const {
        return chase(below(id));
    }

    /// Merge the layer classes of `a` and `b`, leaving the layer below
    /// untouched. Lower-numbered representative survives.
    template <class Below>
    std::pair<EClassId, bool> unite(EClassId a, EClassId b, Below&& below) {
        const EClassId ra = find(a, below);
        const EClassId rb = find(b, below);
        log_.emplace_back(a, b);
        if (ra == rb)
            return {ra, false};
        ++unions_;
        return {link(ra, rb), true};
    }

    /// Below-roots merged into `id`'s layer class (including its own).
    template <class Below>
    std::vector<EClassId> group(EClassId id, Below&& below) const {
        const EClassId r = find(id, below);
        auto it = groups_.find(r);
        if (it == groups_.end())
            return {r};
        return it->second;
    }

    std::size_t delta_size() const { return parent_.size(); }

    /// Count of effective (merging) unions; bumps the relation version of
    /// everything stacked above this layer.
    std::uint64_t unions() const { return unions_; }

    /// Raw unions as requested, replayed on sync.
    const std::vector<std::pair<EClassId, EClassId>>& union_log() const { return log_; }

  private:
    EClassId chase(EClassId r) const {
        while (true) {
            auto it = parent_.find(r);
            if (it == parent_.end())
                return r;
            r = it->second;
        }
    }

    // pre: ra and rb are current layer roots
    EClassId link(EClassId ra, EClassId rb) const {
        if (ra == rb)
            return ra;
        if (rb < ra)
            std::swap(ra, rb);
        parent_[rb] = ra;
        auto& g = groups_[ra];
        if (g.empty())
            g.push_back(ra);
        auto gb = groups_.find(rb);
        if (gb == groups_.end()) {
            g.push_back(rb);
        } else {
            g.insert(g.end(), gb->second.begin(), gb->second.end());
            groups_.erase(gb);
        }
        return ra;
    }

    // Lazily rebuilt views of the log; logically const.
    mutable std::unordered_map<EClassId, EClassId> parent_;
    mutable std::unordered_map<EClassId, std::vector<EClassId>> groups_;
    mutable std::uint64_t below_version_ = 0;
    mutable bool dirty_ = true;

    std::vector<std::pair<EClassId, EClassId>> log_;
    std::uint64_t unions_ = 0;
};

} // namespace ceg
