#include "tpmine/evl.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace tpmine {

std::size_t evl_memory_estimate(const Evl& evl) {
  std::size_t bytes = 0;
  for (const auto& r : evl) {
    bytes += kEvlIdBytes + (r.pos.size() + r.ind.size()) * kEvlEntryBytes;
  }
  return bytes;
}

std::vector<RecordId> evl_ids(const Evl& evl) {
  std::vector<RecordId> ids;
  ids.reserve(evl.size());
  for (const auto& r : evl) ids.push_back(r.record);
  return ids;
}

PatternRef EvlStore::add(TemporalPattern p, std::optional<std::uint32_t> parent_index, Evl evl) {
  const std::size_t size = p.size();
  if (size > 1 && !parent_index) throw std::invalid_argument("EvlStore::add: parent index required");
  if (size > levels_.size() + 1) throw std::invalid_argument("EvlStore::add: sizes must be added in order");
  if (size > levels_.size()) levels_.emplace_back();
  auto& lv = levels_[size - 1];
  const auto index = static_cast<std::uint32_t>(lv.patterns.size());
  lv.index.emplace(p, index);
  lv.patterns.push_back(std::move(p));
  lv.parents.push_back(parent_index.value_or(0));
  lv.evls.push_back(std::move(evl));
  return {static_cast<std::uint32_t>(size), index};
}

std::optional<PatternRef> EvlStore::find(const TemporalPattern& p) const {
  if (p.size() > levels_.size()) return std::nullopt;
  const auto& lv = levels_[p.size() - 1];
  auto it = lv.index.find(p);
  if (it == lv.index.end()) return std::nullopt;
  return PatternRef{static_cast<std::uint32_t>(p.size()), it->second};
}

const RecordEvl* EvlStore::evl(PatternRef r, RecordId id) const {
  const auto& e = evl(r);
  auto it = std::lower_bound(e.begin(), e.end(), id,
                             [](const RecordEvl& x, RecordId key) { return x.record < key; });
  return it != e.end() && it->record == id ? &*it : nullptr;
}

PatternRef EvlStore::parent(PatternRef r) const {
  if (r.size < 2) throw std::invalid_argument("EvlStore::parent: size-1 pattern");
  return {r.size - 1, level(r).parents[r.index]};
}

std::span<const TemporalPattern> EvlStore::patterns(std::size_t size) const {
  if (size == 0 || size > levels_.size()) return {};
  return levels_[size - 1].patterns;
}

std::size_t EvlStore::memory_bytes(std::size_t size) const {
  if (size == 0 || size > levels_.size()) return 0;
  std::size_t bytes = 0;
  for (const auto& e : levels_[size - 1].evls) bytes += evl_memory_estimate(e);
  return bytes;
}

std::size_t EvlStore::memory_bytes() const {
  std::size_t bytes = 0;
  for (std::size_t s = 1; s <= levels_.size(); ++s) bytes += memory_bytes(s);
  return bytes;
}

std::vector<std::pair<State, Evl>> evl_size1(const Dataset& d) {
  std::map<State, Evl> lists;
  for (RecordId id = 0; id < d.size(); ++id) {
    const auto& z = d.mss(id);
    for (std::uint32_t i = 0; i < z.size(); ++i) {
      auto& evl = lists[z[i].state()];
      if (evl.empty() || evl.back().record != id) evl.push_back({id, {}, {}});
      evl.back().pos.push_back(i);
    }
  }
  std::vector<std::pair<State, Evl>> out(std::make_move_iterator(lists.begin()),
                                         std::make_move_iterator(lists.end()));
  const auto& vars = d.variables();
  std::sort(out.begin(), out.end(), [&vars](const auto& a, const auto& b) {
    const auto& na = vars.name(a.first.variable);
    const auto& nb = vars.name(b.first.variable);
    if (na != nb) return na < nb;
    return a.first.symbol < b.first.symbol;
  });
  return out;
}

namespace {

bool potentially_frequent(const Dataset& d, const Evl& evl, double theta) {
  std::vector<std::uint32_t> support(d.class_count(), 0);
  for (const auto& r : evl) ++support[d.label(r.record)];
  return is_frequent(support, d.class_sizes(), theta);
}

// Keeps the elements of `acc` that also occur in `other`; both ascending.
template <class T>
void intersect_into(std::vector<T>& acc, const std::vector<T>& other) {
  auto out = acc.begin();
  auto it = other.begin();
  for (auto v = acc.begin(); v != acc.end(); ++v) {
    it = std::lower_bound(it, other.end(), *v);
    if (it == other.end()) break;
    if (*it == *v) *out++ = *v;
  }
  acc.erase(out, acc.end());
}

// chain[t - 1] is the record's EVL of the suffix starting at state t.
std::optional<std::size_t> search_chain(const Mss& z, std::span<const RecordEvl* const> chain,
                                        std::size_t start_index,
                                        std::vector<std::uint32_t>& chosen,
                                        const TemporalPattern& original, std::size_t exposure) {
  const std::size_t t = chosen.size();
  if (t >= exposure) return start_index;
  const RecordEvl* lv = chain[t - 1];
  if (lv == nullptr) return std::nullopt;

  for (std::size_t i = start_index; i < lv->pos.size(); ++i) {
    const std::uint32_t q = lv->pos[i];
    bool ok = true;
    for (std::size_t a = 0; a < t && ok; ++a) {
      ok = relation_unchecked(z[chosen[a]], z[q]) == original.relation(a, t);
    }
    if (!ok) continue;
    if (t + 1 >= exposure) return i;
    chosen.push_back(q);
    const auto deeper = search_chain(z, chain, lv->ind[i], chosen, original, exposure);
    chosen.pop_back();
    if (deeper) return i;
  }
  return std::nullopt;
}

std::vector<const RecordEvl*> build_chain(const EvlStore& store, PatternRef level, RecordId record,
                                          std::size_t depth) {
  std::vector<const RecordEvl*> chain;
  chain.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    chain.push_back(store.evl(level, record));
    if (i + 1 < depth) level = store.parent(level);
  }
  return chain;
}

}  // namespace

bool find_potential_positions_and_indices(const Dataset& d, EvlCandidate& candidate,
                                          const EvlStore& store, double theta) {
  const auto& p = candidate.pattern;
  candidate.evl.clear();

  // lists[0] is the parent, the rest are the subpatterns that keep the first
  // state (duplicates collapse)
  std::vector<const Evl*> lists{&store.evl(candidate.parent)};
  std::vector<PatternRef> heads;
  for (std::size_t j = 1; j < p.size(); ++j) {
    auto ref = store.find(drop_state(p, j));
    if (!ref) return false;
    if (std::find(heads.begin(), heads.end(), *ref) != heads.end()) continue;
    heads.push_back(*ref);
    lists.push_back(&store.evl(*ref));
  }
  if (heads.empty()) return false;

  // join on record id; every list is sorted by record
  const std::size_t width = lists.size();
  std::vector<std::size_t> cursor(width, 0);
  std::vector<const RecordEvl*> rows;
  std::vector<std::uint32_t> support(d.class_count(), 0);
  for (const auto& rec : *lists[0]) {
    bool present = true;
    bool exhausted = false;
    for (std::size_t l = 1; l < width; ++l) {
      const Evl& e = *lists[l];
      auto& c = cursor[l];
      while (c < e.size() && e[c].record < rec.record) ++c;
      if (c == e.size()) {
        exhausted = true;
        break;
      }
      present = present && e[c].record == rec.record;
    }
    if (exhausted) break;
    if (!present) continue;
    rows.push_back(&rec);
    for (std::size_t l = 1; l < width; ++l) rows.push_back(&(*lists[l])[cursor[l]]);
    ++support[d.label(rec.record)];
  }
  if (rows.empty() || !is_frequent(support, d.class_sizes(), theta)) return false;

  std::vector<std::uint32_t> scratch;
  for (std::size_t at = 0; at < rows.size(); at += width) {
    const auto& parent_pos = rows[at]->pos;
    const std::vector<std::uint32_t>* pos = &rows[at + 1]->pos;
    if (width > 2) {
      scratch = *pos;
      for (std::size_t l = 2; l < width && !scratch.empty(); ++l) intersect_into(scratch, rows[at + l]->pos);
      pos = &scratch;
    }
    RecordEvl rec{rows[at]->record, {}, {}};
    std::size_t next = 0;  // first parent start after q; q ascends so this only moves forward
    for (std::uint32_t q : *pos) {
      while (next < parent_pos.size() && parent_pos[next] <= q) ++next;
      if (next == parent_pos.size()) break;
      rec.pos.push_back(q);
      rec.ind.push_back(static_cast<std::uint32_t>(next));
    }
    if (!rec.pos.empty()) candidate.evl.push_back(std::move(rec));
  }
  return !candidate.evl.empty() && potentially_frequent(d, candidate.evl, theta);
}

std::optional<std::size_t> search(const EvlStore& store, const Dataset& d, PatternRef level,
                                  RecordId record, std::size_t start_index,
                                  std::vector<std::uint32_t>& chosen,
                                  const TemporalPattern& original, std::size_t exposure) {
  if (chosen.empty()) throw std::invalid_argument("search: no chosen start position");
  if (chosen.size() >= exposure) return start_index;
  if (level.size != original.size() - chosen.size()) {
    throw std::invalid_argument("search: level does not match the chosen prefix");
  }
  const auto chain = build_chain(store, level, record, exposure - chosen.size());
  // build_chain indexes from the current level; shift so chain[t - 1] matches
  std::vector<const RecordEvl*> shifted(chosen.size() - 1, nullptr);
  shifted.insert(shifted.end(), chain.begin(), chain.end());
  return search_chain(d.mss(record), shifted, start_index, chosen, original, exposure);
}

void verify_candidate(const EvlStore& store, const Dataset& d, EvlCandidate& candidate) {
  const auto& p = candidate.pattern;
  const std::size_t exp = exposure(p);
  std::vector<std::uint32_t> chosen;
  chosen.reserve(exp);

  Evl verified;
  verified.reserve(candidate.evl.size());
  for (auto& rec : candidate.evl) {
    const auto chain = build_chain(store, candidate.parent, rec.record, exp - 1);
    const Mss& z = d.mss(rec.record);
    RecordEvl out{rec.record, {}, {}};
    for (std::size_t i = 0; i < rec.pos.size(); ++i) {
      chosen.assign(1, rec.pos[i]);
      if (auto index = search_chain(z, chain, rec.ind[i], chosen, p, exp)) {
        out.pos.push_back(rec.pos[i]);
        out.ind.push_back(static_cast<std::uint32_t>(*index));
      }
    }
    if (!out.pos.empty()) verified.push_back(std::move(out));
  }
  candidate.evl = std::move(verified);
}

MiningResult mine_evl(const Dataset& d, const MiningConfig& cfg, EvlStore* store_out) {
  cfg.validate();
  MiningResult result;
  const Deadline deadline(cfg.time_limit);
  EvlStore store;

  auto level_start = std::chrono::steady_clock::now();
  auto size1 = evl_size1(d);
  std::vector<State> singletons;
  for (auto& [state, evl] : size1) {
    auto support = d.supports(evl_ids(evl));
    if (!is_frequent(support, d.class_sizes(), cfg.theta)) continue;
    singletons.push_back(state);
    result.ftps.push_back({TemporalPattern(state), {}, std::move(support)});
    store.add(TemporalPattern(state), std::nullopt, std::move(evl));
  }
  {
    LevelStats s;
    s.size = 1;
    s.candidates = size1.size();
    s.ftps = singletons.size();
    s.stored_bytes = store.memory_bytes(1);
    s.millis = elapsed_ms(level_start);
    result.levels.push_back(s);
    result.deepest_complete_size = 1;
  }

  std::size_t k = 1;
  while (!store.patterns(k).empty() && (!cfg.max_k || k < *cfg.max_k)) {
    level_start = std::chrono::steady_clock::now();
    LevelStats stats;
    stats.size = k + 1;
    std::vector<EvlCandidate> accepted;
    bool aborted = false;

    for_each_candidate(store.patterns(k), singletons, [&](Candidate c) {
      if (deadline.expired()) {
        aborted = true;
        return false;
      }
      ++stats.candidates;
      EvlCandidate cand{std::move(c.pattern),
                        PatternRef{static_cast<std::uint32_t>(k),
                                   static_cast<std::uint32_t>(c.parent_index)},
                        {}};
      if (!find_potential_positions_and_indices(d, cand, store, cfg.theta)) {
        ++stats.pruned;
        return true;
      }
      verify_candidate(store, d, cand);
      if (!cand.evl.empty() && potentially_frequent(d, cand.evl, cfg.theta)) {
        accepted.push_back(std::move(cand));
      }
      return true;
    });

    if (aborted) {
      result.complete = false;
      break;
    }
    for (auto& cand : accepted) {
      result.ftps.push_back({cand.pattern, {}, d.supports(evl_ids(cand.evl))});
      store.add(std::move(cand.pattern), cand.parent.index, std::move(cand.evl));
    }
    stats.ftps = accepted.size();
    stats.stored_bytes = store.memory_bytes(k + 1);
    stats.millis = elapsed_ms(level_start);
    result.mining_millis += stats.millis;
    result.levels.push_back(stats);
    result.deepest_complete_size = k + 1;
    ++k;
  }

  result.memory_bytes = store.memory_bytes();
  canonicalize(result.ftps, d.variables());
  if (store_out != nullptr) *store_out = std::move(store);
  return result;
}

}  // namespace tpmine
