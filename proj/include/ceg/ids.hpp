#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace ceg {

/// Identifier of an e-class. Ids are dense and monotonically increasing;
/// once allocated they stay valid forever (merged-away ids keep resolving
/// through the union-find).
using EClassId = std::uint32_t;

/// Identifier of a color (one coarsened congruence layered over black).
using ColorId = std::uint32_t;

/// A relation selector: a color, or `std::nullopt` for the root ("black")
/// congruence.
using RelationId = std::optional<ColorId>;

inline constexpr EClassId kInvalidClass = std::numeric_limits<EClassId>::max();
inline constexpr ColorId kInvalidColor = std::numeric_limits<ColorId>::max();

} // namespace ceg
