#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <string_view>
#include <vector>

#include "tpmine/dataset.hpp"
#include "tpmine/model.hpp"

namespace tpmine::testing {

std::filesystem::path data_path(std::string_view name);

/// The 13-interval HR/BP record used throughout the worked examples.
Dataset hr_bp_dataset();

/// Decodes a key against the dataset's variables; throws on unknown names.
TemporalPattern pattern(std::string_view key, const Dataset& d);

/// Every coherent pattern up to max_k over the observed states, kept when
/// it occurs somewhere and passes the support test.
std::vector<FoundPattern> brute_force_ftps(const Dataset& d, double theta, std::size_t max_k);

/// Random coherent pattern over v0.. and the first `alphabet` value symbols.
TemporalPattern random_pattern(std::mt19937_64& rng, std::size_t variables, std::size_t alphabet,
                               std::size_t k);

/// Random MSS with at most `intervals` intervals.
Mss random_mss(std::mt19937_64& rng, std::size_t variables, std::size_t alphabet,
               std::size_t intervals);

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi);  // inclusive

}  // namespace tpmine::testing
