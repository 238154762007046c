#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "tpmine/dataset.hpp"
#include "tpmine/model.hpp"

namespace tpmine {

struct SyntheticSpec {
  std::uint64_t seed = 1;
  std::size_t records = 20;
  std::size_t variables = 2;          // named v0, v1, ...
  std::size_t alphabet = 3;           // first n value symbols: VL, L, N, H, VH
  std::size_t intervals_per_record = 12;
  std::size_t classes = 2;            // labels "0", "1", ...; record i gets class i % classes
  // Planted pattern; its variable ids refer to v0, v1, ... in that order.
  std::optional<TemporalPattern> planted;
  double plant_rate = 0.0;            // fraction of class-0 records that receive the pattern
};

/// Seeded random MSS dataset. Throws std::invalid_argument for a bad spec or
/// a planted pattern that cannot be embedded (unknown variable, same-variable
/// states that co-occur, more states than intervals_per_record).
Dataset generate_synthetic(const SyntheticSpec& spec);

/// Variable table v0..v{n-1}, matching the ids used by generate_synthetic.
VariableTable synthetic_variables(std::size_t n);

}  // namespace tpmine
