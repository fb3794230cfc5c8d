#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ceg/enode.hpp"
#include "ceg/ids.hpp"
#include "ceg/term.hpp"
#include "ceg/union_find.hpp"

namespace ceg {

/// One equivalence class: the e-nodes it contains and the parent e-nodes
/// that mention it as a child (with the class each parent lives in).
/// Parent records keep the node in its last-canonicalized form so stale
/// hash-cons keys can be erased during rebuild.
struct EClass {
    EClassId id = kInvalidClass;
    std::vector<ENode> nodes;
    std::vector<std::pair<ENode, EClassId>> parents;
    // Set when this class was allocated purely to house colored e-nodes of
    // one color; such holder classes are invisible to black semantics.
    std::optional<ColorId> owner;
};

struct ColorStats {
    std::uint64_t hashcons_builds = 0;  // full colored hash-cons construction passes
    std::uint64_t stores = 0;           // colored e-nodes stored
    std::uint64_t dedup_hits = 0;       // colored_add calls answered from an index
    std::uint64_t prune_removed = 0;
    std::uint64_t minimize_merges = 0;
};

/// One coarsened congruence layered over its parent relation (or over
/// black): its union-find delta, its colored e-nodes and their parents,
/// and a cached color-canonical hash-cons.
struct Color {
    ColorId id = kInvalidColor;
    std::optional<ColorId> parent;
    std::string label;
    std::vector<ColorId> children;

    LayeredUnionFind luf;

    // black root -> colored e-nodes owned by this color (holder classes)
    std::unordered_map<EClassId, std::vector<ENode>> nodes;
    // child black root -> (colored parent e-node, class containing it)
    std::unordered_map<EClassId, std::vector<std::pair<ENode, EClassId>>> parents;

    // Cached hash-cons canonized to this color; covers black e-nodes plus
    // colored e-nodes of this color and its ancestors. `from_black` marks
    // keys that some black e-node canonizes to (used by pruning). Stale
    // entries are never erased between full builds: once an id loses
    // representative status it never regains it, so stale keys can never
    // collide with a current canonical form.
    struct CHEntry {
        EClassId cls = kInvalidClass;
        bool from_black = false;
    };
    std::unordered_map<ENode, CHEntry, ENodeHash> hashcons;
    bool hashcons_built = false;

    // Exact duplicate-store index over this color's own e-nodes, re-keyed
    // whenever the relation moved since the last store.
    std::unordered_map<ENode, EClassId, ENodeHash> own_index;
    std::uint64_t own_synced_at = UINT64_MAX;

    std::uint64_t buckets_black_version = 0;  // nodes/parents keys valid as of this uf version
    std::uint64_t rebuilt_at = UINT64_MAX;    // relation version at last colored_rebuild

    ColorStats stats;
};

/// Members of one colored e-class: the black roots it unites and where its
/// color-specific e-nodes live.
struct ColoredClassView {
    ColorId color = kInvalidColor;
    EClassId representative = kInvalidClass;
    std::vector<EClassId> members;  // black roots, ascending
};

/// An e-graph maintaining the root ("black") congruence plus any number of
/// assumption-indexed coarsenings (colors).
///
/// Black invariants restored by rebuild(): hash-cons keys canonical with
/// root values, and no two distinct roots containing the same canonical
/// e-node. Colored invariants restored by colored_rebuild(): the colored
/// hash-cons is canonical under the color, congruent duplicates are
/// color-united, black-subsumed colored e-nodes are pruned, and at most one
/// holder class per colored class carries colored e-nodes.
///
/// Mutation is single-writer; const queries may run concurrently between
/// mutations (lazy re-canonicalization is version-guarded and idempotent).
class EGraph {
  public:
    EGraph() {
        true_id_ = add_enode(ENode(syms_.intern("true", 0), {}));
        false_id_ = add_enode(ENode(syms_.intern("false", 0), {}));
    }

    // ---- signature ----------------------------------------------------

    SymbolTable& symbols() { return syms_; }
    const SymbolTable& symbols() const { return syms_; }
    EClassId true_class() const { return find(true_id_); }
    EClassId false_class() const { return find(false_id_); }

    // ---- black operations ----------------------------------------------

    /// Insert a term bottom-up, reusing compatible canonical e-nodes.
    EClassId add(const Term& t) {
        std::vector<EClassId> children;
        children.reserve(t.children.size());
        for (const Term& c : t.children)
            children.push_back(add(c));
        return add_enode(ENode(syms_.intern(t.op, t.children.size()), std::move(children)));
    }

    /// Insert one e-node (children must be allocated ids); returns its
    /// class, reusing an existing one when the canonical form is known.
    EClassId add_enode(ENode n) {
        n = canonicalize(std::move(n));
        if (n.children.size() != syms_.arity(n.op))
            throw std::invalid_argument("arity mismatch for symbol '" + syms_.name(n.op) + "'");
        auto it = hashcons_.find(n);
        if (it != hashcons_.end())
            return find(it->second);
        const EClassId id = new_class();
        for (EClassId child : n.children)
            classes_[child].parents.emplace_back(n, id);
        classes_[id].nodes.push_back(n);
        hashcons_.emplace(std::move(n), id);
        return id;
    }

    /// Merge two classes; hash-cons and parent lists stay stale until
    /// rebuild(). Lower-numbered root survives.
    std::pair<EClassId, bool> unite(EClassId a, EClassId b) {
        const EClassId ra = find(a);
        const EClassId rb = find(b);
        if (ra == rb)
            return {ra, false};
        const auto [root, merged] = uf_.unite(ra, rb);
        const EClassId loser = (root == ra) ? rb : ra;
        EClass& keep = classes_[root];
        EClass& drop = classes_[loser];
        keep.nodes.insert(keep.nodes.end(), std::make_move_iterator(drop.nodes.begin()),
                          std::make_move_iterator(drop.nodes.end()));
        keep.parents.insert(keep.parents.end(), std::make_move_iterator(drop.parents.begin()),
                            std::make_move_iterator(drop.parents.end()));
        drop.nodes.clear();
        drop.parents.clear();
        if (keep.owner != drop.owner)
            keep.owner.reset();
        drop.owner.reset();
        dirty_.push_back(root);
        return {root, true};
    }

    /// Process the dirty worklist to fixpoint: re-canonicalize parents of
    /// merged classes, merge congruent duplicates (cascading), and restore
    /// the hash-cons invariants. Returns the number of cascaded unions.
    std::size_t rebuild() {
        std::size_t cascades = 0;
        std::unordered_set<EClassId> touched;
        while (!dirty_.empty()) {
            std::vector<EClassId> todo;
            todo.reserve(dirty_.size());
            for (EClassId id : dirty_)
                todo.push_back(find(id));
            dirty_.clear();
            std::sort(todo.begin(), todo.end());
            todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
            for (EClassId root : todo)
                repair(find(root), cascades, touched);
        }
        std::vector<EClassId> final_touch;
        final_touch.reserve(touched.size());
        for (EClassId id : touched)
            final_touch.push_back(find(id));
        std::sort(final_touch.begin(), final_touch.end());
        final_touch.erase(std::unique(final_touch.begin(), final_touch.end()), final_touch.end());
        for (EClassId root : final_touch) {
            auto& nodes = classes_[root].nodes;
            for (ENode& n : nodes)
                n = canonicalize(std::move(n));
            std::sort(nodes.begin(), nodes.end());
            nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        }
        for (auto& [node, cls] : hashcons_)
            cls = find(cls);
        return cascades;
    }

    /// Canonical-form lookup; read-only.
    std::optional<EClassId> lookup(const ENode& n) const {
        auto it = hashcons_.find(canonicalize(n));
        if (it == hashcons_.end())
            return std::nullopt;
        return find(it->second);
    }

    std::optional<EClassId> lookup(const Term& t) const {
        auto op = syms_.lookup(t.op);
        if (!op || syms_.arity(*op) != t.children.size())
            return std::nullopt;
        ENode n(*op, {});
        for (const Term& c : t.children) {
            auto cls = lookup(c);
            if (!cls)
                return std::nullopt;
            n.children.push_back(*cls);
        }
        return lookup(n);
    }

    /// Replace each child by its black root; idempotent.
    ENode canonicalize(ENode n) const {
        for (EClassId& c : n.children)
            c = find(c);
        return n;
    }

    EClassId find(EClassId id) const { return uf_.find(id); }
    bool needs_rebuild() const { return !dirty_.empty(); }

    // ---- color management (definitions in colors.hpp) -------------------

    ColorId create_color(std::optional<ColorId> parent, std::string label);
    std::pair<EClassId, bool> colored_unite(ColorId c, EClassId a, EClassId b);
    EClassId colored_find(ColorId c, EClassId id) const;
    EClassId find_under(RelationId rel, EClassId id) const {
        return rel ? colored_find(*rel, id) : find(id);
    }
    /// All black roots colored-equal to `id` under `c` (including its own root).
    std::vector<EClassId> siblings(ColorId c, EClassId id) const;
    std::vector<EClassId> members_under(RelationId rel, EClassId id) const;
    ColoredClassView colored_class(ColorId c, EClassId id) const;

    EClassId colored_add(ColorId c, ENode n);
    std::size_t colored_rebuild(ColorId c);
    /// Black rebuild followed by colored rebuilds, parents before children.
    std::size_t rebuild_all();
    std::size_t prune(ColorId c);
    std::size_t colored_minimize(ColorId c);

    ENode canonicalize_under(RelationId rel, ENode n) const {
        for (EClassId& c : n.children)
            c = find_under(rel, c);
        return n;
    }
    std::optional<EClassId> lookup_under(RelationId rel, const ENode& n) const;
    std::optional<EClassId> lookup_under(RelationId rel, const Term& t) const;

    /// From-scratch construction of one color's canonical hash-cons (the
    /// "on the fly" path); fallback and test oracle for the cached one.
    std::unordered_map<ENode, Color::CHEntry, ENodeHash> build_colored_hashcons(ColorId c) const;

    // ---- inspection ------------------------------------------------------

    /// Live roots, ascending (includes holder classes and the booleans).
    std::vector<EClassId> class_ids() const {
        std::vector<EClassId> out;
        for (EClassId id = 0; id < classes_.size(); ++id)
            if (find(id) == id)
                out.push_back(id);
        return out;
    }

    const std::vector<ENode>& black_nodes(EClassId id) const { return classes_[find(id)].nodes; }
    const std::vector<std::pair<ENode, EClassId>>& black_parents(EClassId id) const {
        return classes_[find(id)].parents;
    }
    std::optional<ColorId> holder_owner(EClassId id) const { return classes_[find(id)].owner; }

    /// Colored e-nodes of `c` attached to `id`'s class (valid after
    /// colored_rebuild, when buckets are keyed by current roots).
    std::vector<ENode> colored_nodes(ColorId c, EClassId id) const;
    std::size_t num_colored_enodes(ColorId c) const;
    std::size_t num_black_enodes() const { return hashcons_.size(); }
    std::size_t num_classes() const { return classes_.size(); }

    const Color& color(ColorId c) const { return col(c); }
    std::vector<ColorId> color_ids() const {
        std::vector<ColorId> out(colors_.size());
        for (ColorId i = 0; i < colors_.size(); ++i)
            out[i] = i;
        return out;
    }
    std::size_t num_colors() const { return colors_.size(); }

    /// Version of the black relation (bumps on every merging union).
    std::uint64_t version() const { return uf_.version(); }
    /// Version of a relation: its own unions plus everything below it.
    std::uint64_t relation_version(RelationId rel) const {
        std::uint64_t v = uf_.version();
        while (rel) {
            const Color& c = col(*rel);
            v += c.luf.unions();
            rel = c.parent;
        }
        return v;
    }

    /// Test/instrumentation hook, fired after each colored e-node store
    /// with the node in its color-canonical form at store time.
    void set_colored_store_observer(std::function<void(ColorId, const ENode&)> fn) {
        on_colored_store_ = std::move(fn);
    }

  private:
    EClassId new_class() {
        const EClassId id = uf_.make_set();
        classes_.push_back(EClass{id, {}, {}, std::nullopt});
        return id;
    }

    void repair(EClassId root, std::size_t& cascades, std::unordered_set<EClassId>& touched) {
        touched.insert(root);
        auto parents = std::move(classes_[root].parents);
        classes_[root].parents.clear();
        for (auto& [pnode, pclass] : parents) {
            hashcons_.erase(pnode);
            pnode = canonicalize(std::move(pnode));
            pclass = find(pclass);
            auto it = hashcons_.find(pnode);
            if (it != hashcons_.end()) {
                const auto [r, merged] = unite(it->second, pclass);
                if (merged)
                    ++cascades;
                it->second = r;
                pclass = r;
            } else {
                hashcons_.emplace(pnode, pclass);
            }
        }
        std::unordered_map<ENode, EClassId, ENodeHash> seen;
        for (auto& [pnode, pclass] : parents) {
            ENode cn = canonicalize(pnode);
            pclass = find(pclass);
            auto it = seen.find(cn);
            if (it != seen.end()) {
                const auto [r, merged] = unite(it->second, pclass);
                if (merged)
                    ++cascades;
                it->second = r;
            } else {
                touched.insert(pclass);
                seen.emplace(std::move(cn), pclass);
            }
        }
        auto& target = classes_[find(root)].parents;
        for (auto& [node, cls] : seen)
            target.emplace_back(node, find(cls));
        std::sort(target.begin(), target.end());
        target.erase(std::unique(target.begin(), target.end()), target.end());
    }

    Color& col(ColorId c) {
        if (c >= colors_.size())
            throw std::out_of_range("unknown color " + std::to_string(c));
        return colors_[c];
    }
    const Color& col(ColorId c) const {
        if (c >= colors_.size())
            throw std::out_of_range("unknown color " + std::to_string(c));
        return colors_[c];
    }

    // colored internals, defined in colors.hpp
    void sync_color(ColorId c) const;
    void rekey_color_buckets(ColorId c);
    void ensure_colored_hashcons(ColorId c);
    void sync_own_index(ColorId c) const;
    std::vector<const Color*> chain(ColorId c) const;  // c's ancestors, black-most first, then c
    std::size_t colored_congruence(ColorId c, std::vector<std::pair<EClassId, EClassId>> pending);
    std::size_t prune_internal(ColorId c);
    std::size_t minimize_internal(ColorId c);

    SymbolTable syms_;
    UnionFind uf_;
    std::unordered_map<ENode, EClassId, ENodeHash> hashcons_;
    std::vector<EClass> classes_;
    std::vector<EClassId> dirty_;
    mutable std::vector<Color> colors_;
    EClassId true_id_ = kInvalidClass;
    EClassId false_id_ = kInvalidClass;
    std::function<void(ColorId, const ENode&)> on_colored_store_;
};

} // namespace ceg

#include "ceg/colors.hpp"
