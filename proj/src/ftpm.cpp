#include "tpmine/ftpm.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace tpmine {

namespace {

constexpr std::size_t kIdBytes = sizeof(RecordId);

std::vector<RecordId> intersect(const std::vector<RecordId>& a, const std::vector<RecordId>& b) {
  std::vector<RecordId> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool place(const Mss& z, const StateIndex& index, const TemporalPattern& p,
           std::vector<std::uint32_t>& chosen) {
  const std::size_t depth = chosen.size();
  if (depth == p.size()) return true;
  const auto candidates = index.positions(p.state(depth));
  auto it = candidates.begin();
  if (depth > 0) it = std::upper_bound(candidates.begin(), candidates.end(), chosen.back());
  for (; it != candidates.end(); ++it) {
    const std::uint32_t q = *it;
    bool ok = true;
    for (std::size_t a = 0; a < depth && ok; ++a) {
      ok = relation_unchecked(z[chosen[a]], z[q]) == p.relation(a, depth);
    }
    if (!ok) continue;
    chosen.push_back(q);
    if (place(z, index, p, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::vector<Size1Ftp> find_size1_ftps(const Dataset& d, const MiningConfig& cfg) {
  std::map<State, std::vector<RecordId>> lists;
  for (RecordId id = 0; id < d.size(); ++id) {
    for (const auto& e : d.mss(id)) {
      auto& ids = lists[e.state()];
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
  }
  std::vector<Size1Ftp> out;
  for (auto& [state, ids] : lists) {
    if (is_frequent(d.supports(ids), d.class_sizes(), cfg.theta)) {
      out.push_back({state, std::move(ids)});
    }
  }
  const auto& vars = d.variables();
  std::sort(out.begin(), out.end(), [&vars](const Size1Ftp& a, const Size1Ftp& b) {
    const auto& na = vars.name(a.state.variable);
    const auto& nb = vars.name(b.state.variable);
    if (na != nb) return na < nb;
    return a.state.symbol < b.state.symbol;
  });
  return out;
}

std::size_t IdListIndex::add(TemporalPattern p, std::vector<RecordId> ids) {
  const std::size_t i = patterns_.size();
  index_.emplace(p, i);
  patterns_.push_back(std::move(p));
  ids_.push_back(std::move(ids));
  return i;
}

const std::vector<RecordId>* IdListIndex::find(const TemporalPattern& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? nullptr : &ids_[it->second];
}

std::size_t IdListIndex::stored_ids() const {
  std::size_t n = 0;
  for (const auto& ids : ids_) n += ids.size();
  return n;
}

std::optional<std::vector<RecordId>> potential_ids(const TemporalPattern& candidate,
                                                   const IdListIndex& index) {
  std::optional<std::vector<RecordId>> acc;
  for (std::size_t j = 0; j < candidate.size(); ++j) {
    const auto* ids = index.find(drop_state(candidate, j));
    if (ids == nullptr) return std::nullopt;
    acc = acc ? intersect(*acc, *ids) : *ids;
  }
  return acc;
}

StateIndex::StateIndex(const Mss& z) {
  std::map<State, std::vector<std::uint32_t>> lists;
  for (std::uint32_t i = 0; i < z.size(); ++i) lists[z[i].state()].push_back(i);
  entries_.assign(std::make_move_iterator(lists.begin()), std::make_move_iterator(lists.end()));
}

std::span<const std::uint32_t> StateIndex::positions(State s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const auto& e, const State& key) { return e.first < key; });
  if (it == entries_.end() || it->first != s) return {};
  return it->second;
}

bool contains_indexed(const Mss& z, const StateIndex& index, const TemporalPattern& p) {
  std::vector<std::uint32_t> chosen;
  chosen.reserve(p.size());
  return place(z, index, p, chosen);
}

MiningResult mine_ftpm(const Dataset& d, const MiningConfig& cfg) {
  cfg.validate();
  MiningResult result;
  const Deadline deadline(cfg.time_limit);

  std::vector<StateIndex> indexes;
  indexes.reserve(d.size());
  for (RecordId id = 0; id < d.size(); ++id) indexes.emplace_back(d.mss(id));

  auto level_start = std::chrono::steady_clock::now();
  const auto size1 = find_size1_ftps(d, cfg);
  std::vector<State> singletons;
  IdListIndex current;
  for (const auto& f : size1) {
    singletons.push_back(f.state);
    result.ftps.push_back({TemporalPattern(f.state), {}, d.supports(f.ids)});
    current.add(TemporalPattern(f.state), f.ids);
  }
  {
    LevelStats s;
    s.size = 1;
    s.candidates = size1.size();
    s.ftps = size1.size();
    s.stored_bytes = current.stored_ids() * kIdBytes;
    s.millis = elapsed_ms(level_start);
    result.levels.push_back(s);
    result.memory_bytes += s.stored_bytes;
    result.deepest_complete_size = 1;
  }

  std::size_t k = 1;
  while (current.size() > 0 && (!cfg.max_k || k < *cfg.max_k)) {
    level_start = std::chrono::steady_clock::now();
    LevelStats stats;
    stats.size = k + 1;
    IdListIndex next;
    std::vector<FoundPattern> found;
    bool aborted = false;

    for_each_candidate(current.patterns(), singletons, [&](Candidate c) {
      if (deadline.expired()) {
        aborted = true;
        return false;
      }
      ++stats.candidates;
      auto pids = potential_ids(c.pattern, current);
      if (!pids || pids->empty() || !is_frequent(d.supports(*pids), d.class_sizes(), cfg.theta)) {
        ++stats.pruned;
        return true;
      }
      std::vector<RecordId> ids;
      for (RecordId id : *pids) {
        if (contains_indexed(d.mss(id), indexes[id], c.pattern)) ids.push_back(id);
      }
      auto support = d.supports(ids);
      if (!ids.empty() && is_frequent(support, d.class_sizes(), cfg.theta)) {
        found.push_back({c.pattern, {}, std::move(support)});
        next.add(std::move(c.pattern), std::move(ids));
      }
      return true;
    });

    if (aborted) {
      result.complete = false;
      break;
    }
    stats.ftps = next.size();
    stats.stored_bytes = next.stored_ids() * kIdBytes;
    stats.millis = elapsed_ms(level_start);
    result.mining_millis += stats.millis;
    result.memory_bytes += stats.stored_bytes;
    result.levels.push_back(stats);
    result.deepest_complete_size = k + 1;
    std::move(found.begin(), found.end(), std::back_inserter(result.ftps));
    current = std::move(next);
    ++k;
  }

  canonicalize(result.ftps, d.variables());
  return result;
}

}  // namespace tpmine
