#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tpmine/model.hpp"

namespace tpmine {

using RecordId = std::uint32_t;
using ClassId = std::uint32_t;

struct LabeledMss {
  Mss mss;
  std::string label;
};

/// Class labels are non-empty and contain no whitespace, ',', ':', '"' or '\\'.
bool valid_class_label(std::string_view label);

/// Labeled MSS records. Class ids follow the lexicographic order of the
/// label strings so that ids do not depend on record order.
class Dataset {
 public:
  Dataset() = default;
  Dataset(VariableTable variables, std::vector<LabeledMss> records);

  const VariableTable& variables() const { return variables_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const Mss& mss(RecordId id) const { return records_[id]; }
  ClassId label(RecordId id) const { return labels_[id]; }

  std::size_t class_count() const { return class_names_.size(); }
  const std::string& class_name(ClassId c) const { return class_names_[c]; }
  std::span<const std::uint32_t> class_sizes() const { return class_sizes_; }

  /// Per-class counts of an id list.
  std::vector<std::uint32_t> supports(std::span<const RecordId> ids) const;

 private:
  VariableTable variables_;
  std::vector<Mss> records_;
  std::vector<ClassId> labels_;
  std::vector<std::string> class_names_;
  std::vector<std::uint32_t> class_sizes_;
};

/// support_y >= theta * |D_y| for at least one class (exact real comparison).
bool is_frequent(std::span<const std::uint32_t> supports,
                 std::span<const std::uint32_t> class_sizes, double theta);

struct MiningConfig {
  double theta = 0.5;
  std::optional<std::size_t> max_k;  // unbounded when empty
  std::optional<std::chrono::milliseconds> time_limit;

  /// Throws std::invalid_argument for theta outside [0,1] or max_k == 0.
  void validate() const;
};

struct LevelStats {
  std::size_t size = 0;
  std::size_t candidates = 0;
  std::size_t pruned = 0;  // discarded before any containment verification
  std::size_t ftps = 0;
  std::size_t stored_bytes = 0;  // analytic size of this level's lists
  double millis = 0.0;
};

struct FoundPattern {
  TemporalPattern pattern;
  std::string key;
  std::vector<std::uint32_t> support;  // indexed by ClassId

  friend bool operator==(const FoundPattern&, const FoundPattern&) = default;
};

struct MiningResult {
  std::vector<FoundPattern> ftps;  // sorted by (size, key)
  std::vector<LevelStats> levels;  // levels[i].size == i + 1
  std::size_t memory_bytes = 0;
  bool complete = true;
  std::size_t deepest_complete_size = 0;
  double mining_millis = 0.0;  // levels >= 2; size-1 lists count as preprocessing

  std::size_t max_size() const { return ftps.empty() ? 0 : ftps.back().pattern.size(); }
};

/// Sorts ftps by (size, key), filling in keys.
void canonicalize(std::vector<FoundPattern>& ftps, const VariableTable& variables);

/// Same (pattern, per-class support) sets.
bool same_patterns(const MiningResult& a, const MiningResult& b);

/// Wall-clock budget checked between candidates.
class Deadline {
 public:
  explicit Deadline(std::optional<std::chrono::milliseconds> limit)
      : limit_(limit), start_(std::chrono::steady_clock::now()) {}
  bool expired() const {
    return limit_ && std::chrono::steady_clock::now() - start_ > *limit_;
  }

 private:
  std::optional<std::chrono::milliseconds> limit_;
  std::chrono::steady_clock::time_point start_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since);

}  // namespace tpmine
