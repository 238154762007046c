#pragma once

// Interval and pattern algebra shared by both miners.
//
// Positions inside an MSS and state indices inside a pattern are 0-based
// throughout the C++ API.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tpmine {

using Tick = std::int64_t;
using VariableId = std::uint32_t;

enum class Symbol : std::uint8_t {
  // value alphabet
  VeryLow,
  Low,
  Normal,
  High,
  VeryHigh,
  // trend alphabet
  Steady,
  Increasing,
  Decreasing,
};

enum class Alphabet : std::uint8_t { Value, Trend };

constexpr Alphabet alphabet_of(Symbol s) {
  return s <= Symbol::VeryHigh ? Alphabet::Value : Alphabet::Trend;
}

/// Short code used in pattern keys and files: VL, L, N, H, VH, ST, INC, DEC.
std::string_view symbol_code(Symbol s);
std::optional<Symbol> parse_symbol(std::string_view code);

struct State {
  VariableId variable = 0;
  Symbol symbol = Symbol::Normal;

  friend auto operator<=>(const State&, const State&) = default;
};

struct StateInterval {
  VariableId variable = 0;
  Symbol symbol = Symbol::Normal;
  Tick start = 0;
  Tick end = 0;

  State state() const { return {variable, symbol}; }
  friend bool operator==(const StateInterval&, const StateInterval&) = default;
};

/// Interns variable labels. Labels must be non-empty and free of the
/// characters reserved by the pattern key and file grammars.
class VariableTable {
 public:
  VariableId intern(std::string_view name);
  std::optional<VariableId> find(std::string_view name) const;
  const std::string& name(VariableId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

  static bool valid_name(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VariableId> ids_;
};

/// Multivariate state sequence: intervals ordered by non-decreasing start,
/// same-variable intervals strictly separated and never repeating a symbol
/// back to back. The constructor throws std::invalid_argument otherwise.
class Mss {
 public:
  Mss() = default;
  explicit Mss(std::vector<StateInterval> intervals);

  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  const StateInterval& operator[](std::size_t i) const { return intervals_[i]; }
  std::span<const StateInterval> intervals() const { return intervals_; }
  auto begin() const { return intervals_.begin(); }
  auto end() const { return intervals_.end(); }

  friend bool operator==(const Mss&, const Mss&) = default;

 private:
  std::vector<StateInterval> intervals_;
};

enum class Relation : std::uint8_t { Before, CoOccur };

constexpr char relation_code(Relation r) { return r == Relation::Before ? 'b' : 'c'; }

/// Relation between two intervals with a.start <= b.start.
inline Relation relation_unchecked(const StateInterval& a, const StateInterval& b) {
  return a.end < b.start ? Relation::Before : Relation::CoOccur;
}

/// Same as relation_unchecked but throws std::invalid_argument when
/// a.start > b.start.
Relation relation(const StateInterval& a, const StateInterval& b);

/// Ordered states plus the row-major upper triangle of pairwise relations.
/// Construction validates size and coherence (a Before entry forces every
/// entry to its right in the same row to be Before).
class TemporalPattern {
 public:
  explicit TemporalPattern(State single);
  TemporalPattern(std::vector<State> states, std::vector<Relation> relations);

  std::size_t size() const { return states_.size(); }
  std::span<const State> states() const { return states_; }
  const State& state(std::size_t i) const { return states_[i]; }
  std::span<const Relation> relations() const { return relations_; }

  /// Relation between states i < j.
  Relation relation(std::size_t i, std::size_t j) const {
    return relations_[relation_offset(size(), i, j)];
  }

  static constexpr std::size_t relation_count(std::size_t k) { return k * (k - 1) / 2; }
  static constexpr std::size_t relation_offset(std::size_t k, std::size_t i, std::size_t j) {
    return i * k - i * (i + 1) / 2 + (j - i - 1);
  }

  friend bool operator==(const TemporalPattern&, const TemporalPattern&) = default;

 private:
  struct Unchecked {};
  TemporalPattern(Unchecked, std::vector<State> states, std::vector<Relation> relations)
      : states_(std::move(states)), relations_(std::move(relations)) {}

  friend TemporalPattern drop_state(const TemporalPattern&, std::size_t);
  friend TemporalPattern prepend(State, const TemporalPattern&, std::size_t);

  std::vector<State> states_;
  std::vector<Relation> relations_;
};

struct PatternHash {
  std::size_t operator()(const TemporalPattern& p) const noexcept;
};

bool is_coherent(std::size_t k, std::span<const Relation> relations);

/// Subpattern without state `index`. Throws on size-1 input or bad index.
TemporalPattern drop_state(const TemporalPattern& p, std::size_t index);

/// Subpattern without the first state.
TemporalPattern parent(const TemporalPattern& p);

/// All size k-1 subpatterns of a size-k pattern, drop index order,
/// duplicates kept.
std::vector<TemporalPattern> subpatterns(const TemporalPattern& p);

/// Length of the smallest prefix whose states are all Before every later state.
std::size_t chain_length(const TemporalPattern& p);

/// Number of leading states that must be explicitly checked.
std::size_t exposure(const TemporalPattern& p);

/// Prepends `first` to `base`. The new first row is `cooccur_count` CoOccur
/// entries followed by Before entries, which enumerates every coherent row.
TemporalPattern prepend(State first, const TemporalPattern& base, std::size_t cooccur_count);

struct Candidate {
  TemporalPattern pattern;
  std::size_t parent_index;     // into the size-k FTP list
  std::size_t singleton_index;  // into the size-1 state list
};

/// Visits candidates in singleton x FTP x cooccur-count order. The visitor
/// returns false to stop early.
template <class Visit>
void for_each_candidate(std::span<const TemporalPattern> ftps, std::span<const State> singletons,
                        Visit&& visit) {
  for (std::size_t s = 0; s < singletons.size(); ++s) {
    for (std::size_t f = 0; f < ftps.size(); ++f) {
      const std::size_t k = ftps[f].size();
      for (std::size_t a = 0; a <= k; ++a) {
        if (!visit(Candidate{prepend(singletons[s], ftps[f], a), f, s})) return;
      }
    }
  }
}

std::vector<Candidate> create_candidates(std::span<const TemporalPattern> ftps,
                                         std::span<const State> singletons);

}  // namespace tpmine
