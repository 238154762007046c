#include "tpmine/model.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace tpmine {

namespace {

constexpr std::array<std::string_view, 8> kSymbolCodes = {"VL", "L",  "N",   "H",
                                                          "VH", "ST", "INC", "DEC"};

}  // namespace

std::string_view symbol_code(Symbol s) { return kSymbolCodes[static_cast<std::size_t>(s)]; }

std::optional<Symbol> parse_symbol(std::string_view code) {
  for (std::size_t i = 0; i < kSymbolCodes.size(); ++i) {
    if (kSymbolCodes[i] == code) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

bool VariableTable::valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    switch (c) {
      case '<': case '>': case '=': case ',': case '|': case '"': case '\\':
        return false;
      default:
        if (static_cast<unsigned char>(c) <= ' ') return false;
    }
  }
  return true;
}

VariableId VariableTable::intern(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  if (!valid_name(name)) {
    throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  }
  const auto id = static_cast<VariableId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<VariableId> VariableTable::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

Mss::Mss(std::vector<StateInterval> intervals) : intervals_(std::move(intervals)) {
  // last interval seen per variable
  std::unordered_map<VariableId, std::size_t> last;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& e = intervals_[i];
    if (e.start > e.end) {
      throw std::invalid_argument("interval " + std::to_string(i) + " ends before it starts");
    }
    if (i > 0 && intervals_[i - 1].start > e.start) {
      throw std::invalid_argument("intervals not sorted by start at position " +
                                  std::to_string(i));
    }
    if (auto it = last.find(e.variable); it != last.end()) {
      const auto& prev = intervals_[it->second];
      if (!(prev.end < e.start)) {
        throw std::invalid_argument("same-variable intervals overlap at position " +
                                    std::to_string(i));
      }
      if (prev.symbol == e.symbol) {
        throw std::invalid_argument("same-variable intervals repeat a symbol at position " +
                                    std::to_string(i));
      }
      it->second = i;
    } else {
      last.emplace(e.variable, i);
    }
  }
}

Relation relation(const StateInterval& a, const StateInterval& b) {
  if (a.start > b.start) {
    throw std::invalid_argument("relation: first interval starts after the second");
  }
  return relation_unchecked(a, b);
}

bool is_coherent(std::size_t k, std::span<const Relation> relations) {
  if (relations.size() != TemporalPattern::relation_count(k)) return false;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    bool before_seen = false;
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto r = relations[TemporalPattern::relation_offset(k, i, j)];
      if (r == Relation::Before) {
        before_seen = true;
      } else if (before_seen) {
        return false;
      }
    }
  }
  return true;
}

TemporalPattern::TemporalPattern(State single) : states_{single} {}

TemporalPattern::TemporalPattern(std::vector<State> states, std::vector<Relation> relations)
    : states_(std::move(states)), relations_(std::move(relations)) {
  if (states_.empty()) throw std::invalid_argument("pattern needs at least one state");
  if (relations_.size() != relation_count(states_.size())) {
    throw std::invalid_argument("pattern of size " + std::to_string(states_.size()) + " needs " +
                                std::to_string(relation_count(states_.size())) + " relations");
  }
  if (!is_coherent(states_.size(), relations_)) {
    throw std::invalid_argument("incoherent relation matrix");
  }
}

std::size_t PatternHash::operator()(const TemporalPattern& p) const noexcept {
  std::size_t h = p.size();
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& s : p.states()) {
    mix((static_cast<std::size_t>(s.variable) << 8) | static_cast<std::size_t>(s.symbol));
  }
  std::size_t bits = 0;
  std::size_t n = 0;
  for (auto r : p.relations()) {
    bits = (bits << 1) | (r == Relation::Before ? 1U : 0U);
    if (++n == 60) {
      mix(bits);
      bits = 0;
      n = 0;
    }
  }
  mix(bits);
  return h;
}

TemporalPattern drop_state(const TemporalPattern& p, std::size_t index) {
  const std::size_t k = p.size();
  if (k < 2) throw std::invalid_argument("drop_state: pattern has a single state");
  if (index >= k) throw std::invalid_argument("drop_state: index out of range");

  std::vector<State> states;
  states.reserve(k - 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (i != index) states.push_back(p.state(i));
  }
  std::vector<Relation> relations;
  relations.reserve(TemporalPattern::relation_count(k - 1));
  for (std::size_t i = 0; i < k; ++i) {
    if (i == index) continue;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (j != index) relations.push_back(p.relation(i, j));
    }
  }
  // restriction of a coherent matrix stays coherent
  return TemporalPattern(TemporalPattern::Unchecked{}, std::move(states), std::move(relations));
}

TemporalPattern parent(const TemporalPattern& p) { return drop_state(p, 0); }

std::vector<TemporalPattern> subpatterns(const TemporalPattern& p) {
  if (p.size() < 2) throw std::invalid_argument("subpatterns: pattern has a single state");
  std::vector<TemporalPattern> out;
  out.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out.push_back(drop_state(p, j));
  return out;
}

std::size_t chain_length(const TemporalPattern& p) {
  const std::size_t k = p.size();
  for (std::size_t c = 1; c < k; ++c) {
    bool split = true;
    for (std::size_t i = 0; i < c && split; ++i) {
      for (std::size_t j = c; j < k; ++j) {
        if (p.relation(i, j) != Relation::Before) {
          split = false;
          break;
        }
      }
    }
    if (split) return c;
  }
  return k;
}

std::size_t exposure(const TemporalPattern& p) {
  const std::size_t c = chain_length(p);
  return c < p.size() ? c + 1 : p.size();
}

TemporalPattern prepend(State first, const TemporalPattern& base, std::size_t cooccur_count) {
  const std::size_t k = base.size();
  if (cooccur_count > k) throw std::invalid_argument("prepend: cooccur_count exceeds base size");

  std::vector<State> states;
  states.reserve(k + 1);
  states.push_back(first);
  states.insert(states.end(), base.states().begin(), base.states().end());

  std::vector<Relation> relations;
  relations.reserve(TemporalPattern::relation_count(k + 1));
  for (std::size_t j = 0; j < k; ++j) {
    relations.push_back(j < cooccur_count ? Relation::CoOccur : Relation::Before);
  }
  relations.insert(relations.end(), base.relations().begin(), base.relations().end());
  return TemporalPattern(TemporalPattern::Unchecked{}, std::move(states), std::move(relations));
}

std::vector<Candidate> create_candidates(std::span<const TemporalPattern> ftps,
                                         std::span<const State> singletons) {
  std::vector<Candidate> out;
  for_each_candidate(ftps, singletons, [&out](Candidate c) {
    out.push_back(std::move(c));
    return true;
  });
  return out;
}

}  // namespace tpmine
