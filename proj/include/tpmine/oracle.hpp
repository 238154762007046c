#pragma once

// Exhaustive containment checks. These scan every interval position with no
// indexing and serve as the reference both miners are tested against.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tpmine/model.hpp"

namespace tpmine {

/// True iff some strictly increasing state-to-position mapping matches every
/// state and every relation entry.
bool contains(const Mss& z, const TemporalPattern& p);

/// Number of distinct satisfying mappings.
std::uint64_t count_occurrences(const Mss& z, const TemporalPattern& p);

/// Ascending positions i such that a satisfying mapping sends state 0 to i.
std::vector<std::size_t> starting_positions_oracle(const Mss& z, const TemporalPattern& p);

}  // namespace tpmine
