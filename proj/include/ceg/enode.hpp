#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ceg/ids.hpp"

namespace ceg {

using SymbolId = std::uint32_t;

/// Interned function symbols of one e-graph. A name's arity is fixed on
/// first use; re-interning with a different arity is a malformed-term error.
class SymbolTable {
  public:
    SymbolId intern(std::string_view name, std::size_t arity) {
        auto it = by_name_.find(std::string(name));
        if (it != by_name_.end()) {
            if (arity_[it->second] != arity)
                throw std::invalid_argument("symbol '" + std::string(name) + "' used with arity " +
                                            std::to_string(arity) + ", declared " +
                                            std::to_string(arity_[it->second]));
            return it->second;
        }
        const SymbolId id = static_cast<SymbolId>(names_.size());
        names_.emplace_back(name);
        arity_.push_back(arity);
        by_name_.emplace(names_.back(), id);
        return id;
    }

    /// Id of `name` if interned.
    std::optional<SymbolId> lookup(std::string_view name) const {
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end())
            return std::nullopt;
        return it->second;
    }

    const std::string& name(SymbolId id) const { return names_.at(id); }
    std::size_t arity(SymbolId id) const { return arity_.at(id); }
    std::size_t size() const { return names_.size(); }

  private:
    std::vector<std::string> names_;
    std::vector<std::size_t> arity_;
    std::unordered_map<std::string, SymbolId> by_name_;
};

/// An operator applied to e-class ids; the unit stored in e-classes and in
/// the hash-cons. Canonical iff every child is a representative of the
/// relation at hand.
struct ENode {
    SymbolId op = 0;
    std::vector<EClassId> children;

    ENode() = default;
    ENode(SymbolId o, std::vector<EClassId> cs) : op(o), children(std::move(cs)) {}

    friend bool operator==(const ENode& a, const ENode& b) {
        return a.op == b.op && a.children == b.children;
    }
    friend bool operator<(const ENode& a, const ENode& b) {
        if (a.op != b.op)
            return a.op < b.op;
        return a.children < b.children;
    }
};

struct ENodeHash {
    std::size_t operator()(const ENode& n) const {
        std::size_t h = std::hash<std::uint32_t>{}(n.op);
        for (EClassId c : n.children)
            h ^= std::hash<std::uint32_t>{}(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

} // namespace ceg
