#include "tpmine/oracle.hpp"

namespace tpmine {

namespace {

bool matches(const StateInterval& e, const State& s) {
  return e.variable == s.variable && e.symbol == s.symbol;
}

// Counts satisfying completions once states [0, depth) are placed at chosen.
// Stops after the first hit when `first_only` is set.
std::uint64_t extend(const Mss& z, const TemporalPattern& p, std::vector<std::size_t>& chosen,
                     bool first_only) {
  const std::size_t depth = chosen.size();
  if (depth == p.size()) return 1;
  std::uint64_t total = 0;
  const std::size_t from = depth == 0 ? 0 : chosen.back() + 1;
  for (std::size_t q = from; q < z.size(); ++q) {
    if (!matches(z[q], p.state(depth))) continue;
    bool ok = true;
    for (std::size_t a = 0; a < depth && ok; ++a) {
      ok = relation(z[chosen[a]], z[q]) == p.relation(a, depth);
    }
    if (!ok) continue;
    chosen.push_back(q);
    total += extend(z, p, chosen, first_only);
    chosen.pop_back();
    if (first_only && total > 0) return total;
  }
  return total;
}

}  // namespace

bool contains(const Mss& z, const TemporalPattern& p) {
  std::vector<std::size_t> chosen;
  return extend(z, p, chosen, true) > 0;
}

std::uint64_t count_occurrences(const Mss& z, const TemporalPattern& p) {
  std::vector<std::size_t> chosen;
  return extend(z, p, chosen, false);
}

std::vector<std::size_t> starting_positions_oracle(const Mss& z, const TemporalPattern& p) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!matches(z[i], p.state(0))) continue;
    chosen.assign(1, i);
    if (extend(z, p, chosen, true) > 0) out.push_back(i);
  }
  return out;
}

}  // namespace tpmine
