#pragma once

// Baseline level-wise miner over vertical record-id lists.
//
// Candidates are pruned when a size-k subpattern is not frequent or when the
// intersection of the subpatterns' id lists cannot reach the support
// threshold. Survivors are verified record by record with depth-first
// backtracking; nothing about where a pattern occurred is kept between
// levels.

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tpmine/dataset.hpp"
#include "tpmine/model.hpp"

namespace tpmine {

struct Size1Ftp {
  State state;
  std::vector<RecordId> ids;
};

/// Frequent single states with their id lists, ordered by (variable name, symbol).
std::vector<Size1Ftp> find_size1_ftps(const Dataset& d, const MiningConfig& cfg);

/// Frequent patterns of one size, addressable by pattern.
class IdListIndex {
 public:
  std::size_t add(TemporalPattern p, std::vector<RecordId> ids);
  const std::vector<RecordId>* find(const TemporalPattern& p) const;

  std::span<const TemporalPattern> patterns() const { return patterns_; }
  const std::vector<RecordId>& ids(std::size_t i) const { return ids_[i]; }
  std::size_t size() const { return patterns_.size(); }
  std::size_t stored_ids() const;

 private:
  std::vector<TemporalPattern> patterns_;
  std::vector<std::vector<RecordId>> ids_;
  std::unordered_map<TemporalPattern, std::size_t, PatternHash> index_;
};

/// Intersection of the id lists of every size-k subpattern, or nullopt when
/// one of them is missing from the index.
std::optional<std::vector<RecordId>> potential_ids(const TemporalPattern& candidate,
                                                   const IdListIndex& index);

/// Ascending positions of every state in one record.
class StateIndex {
 public:
  explicit StateIndex(const Mss& z);
  std::span<const std::uint32_t> positions(State s) const;

 private:
  std::vector<std::pair<State, std::vector<std::uint32_t>>> entries_;  // sorted by state
};

/// Backtracking containment using the state index for each placement.
bool contains_indexed(const Mss& z, const StateIndex& index, const TemporalPattern& p);

MiningResult mine_ftpm(const Dataset& d, const MiningConfig& cfg);

}  // namespace tpmine
