#pragma once

// Level-wise miner over Extended Vertical Lists.
//
// For every frequent pattern and every record that contains it, an EVL keeps
// the positions where the pattern starts (`pos`) and, for each of those, an
// index into the parent pattern's `pos` list for the same record (`ind`).
// The parent is the pattern without its first state, so following `ind`
// links walks down the chain parent, grandparent, ... one state at a time.
//
// A size-(k+1) candidate can only start where each of its subpatterns that
// keeps the first state also starts, so its potential positions are the
// intersection of those subpatterns' `pos` lists. Each potential position is
// then confirmed by `search`, which only needs to place the first
// `exposure(P)` states: once a prefix that is Before every later state is
// placed, the remaining states come for free from the verified start of the
// next suffix.
//
// Every `pos` list is exact after verification, and every `ind` is the
// smallest parent index that leads to a full match.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tpmine/dataset.hpp"
#include "tpmine/model.hpp"

namespace tpmine {

struct RecordEvl {
  RecordId record = 0;
  std::vector<std::uint32_t> pos;  // strictly ascending MSS positions
  std::vector<std::uint32_t> ind;  // parallel to pos; empty for size-1 patterns

  friend bool operator==(const RecordEvl&, const RecordEvl&) = default;
};

/// Records in ascending id order, each with a non-empty pos list.
using Evl = std::vector<RecordEvl>;

inline constexpr std::size_t kEvlIdBytes = sizeof(RecordId);
inline constexpr std::size_t kEvlEntryBytes = sizeof(std::uint32_t);

/// Record-id slots plus pos and ind entries, at fixed widths.
std::size_t evl_memory_estimate(const Evl& evl);

std::vector<RecordId> evl_ids(const Evl& evl);

struct PatternRef {
  std::uint32_t size = 0;
  std::uint32_t index = 0;

  friend bool operator==(const PatternRef&, const PatternRef&) = default;
};

/// All frequent patterns found so far, grouped by size, with their EVLs and
/// parent links. Search descends through every size below the candidate, so
/// lists are kept for all sizes.
class EvlStore {
 public:
  /// Patterns of size > 1 must name their parent's index in the size below.
  PatternRef add(TemporalPattern p, std::optional<std::uint32_t> parent_index, Evl evl);

  std::optional<PatternRef> find(const TemporalPattern& p) const;

  const TemporalPattern& pattern(PatternRef r) const { return level(r).patterns[r.index]; }
  const Evl& evl(PatternRef r) const { return level(r).evls[r.index]; }
  const RecordEvl* evl(PatternRef r, RecordId id) const;
  PatternRef parent(PatternRef r) const;

  std::size_t max_size() const { return levels_.size(); }
  std::span<const TemporalPattern> patterns(std::size_t size) const;
  std::size_t memory_bytes() const;
  std::size_t memory_bytes(std::size_t size) const;

 private:
  struct Level {
    std::vector<TemporalPattern> patterns;
    std::vector<std::uint32_t> parents;
    std::vector<Evl> evls;
    std::unordered_map<TemporalPattern, std::uint32_t, PatternHash> index;
  };
  const Level& level(PatternRef r) const { return levels_[r.size - 1]; }

  std::vector<Level> levels_;
};

/// EVLs of every observed state, ordered by (variable name, symbol).
std::vector<std::pair<State, Evl>> evl_size1(const Dataset& d);

struct EvlCandidate {
  TemporalPattern pattern;
  PatternRef parent;
  Evl evl;  // potential positions, then verified positions
};

/// Potential records and positions of a candidate whose parent is stored.
/// Returns false when the candidate can be discarded without verification.
bool find_potential_positions_and_indices(const Dataset& d, EvlCandidate& candidate,
                                          const EvlStore& store, double theta);

/// Places states chosen.size(), chosen.size()+1, ... of `original`, scanning
/// the pos list of `level` (the suffix of `original` that starts at state
/// chosen.size()) from `start_index`. A position is accepted when it has the
/// required relation to every already chosen position; the search stops
/// once `exposure` states are placed. Returns the first accepted index at
/// `level`, or nullopt. With chosen.size() >= exposure it returns
/// start_index without looking at the record.
std::optional<std::size_t> search(const EvlStore& store, const Dataset& d, PatternRef level,
                                  RecordId record, std::size_t start_index,
                                  std::vector<std::uint32_t>& chosen,
                                  const TemporalPattern& original, std::size_t exposure);

/// Confirms every potential position of a candidate, keeping only verified
/// (pos, ind) pairs and dropping records left without positions.
void verify_candidate(const EvlStore& store, const Dataset& d, EvlCandidate& candidate);

/// When `store_out` is given, the final EVL store is moved into it.
MiningResult mine_evl(const Dataset& d, const MiningConfig& cfg, EvlStore* store_out = nullptr);

}  // namespace tpmine
