#include "fixtures.hpp"

#include <set>
#include <stdexcept>

#include "tpmine/io.hpp"
#include "tpmine/oracle.hpp"
#include "tpmine/pattern_key.hpp"
#include "tpmine/synthetic.hpp"

namespace tpmine::testing {

std::filesystem::path data_path(std::string_view name) {
  return std::filesystem::path(TPMINE_TEST_DATA) / name;
}

Dataset hr_bp_dataset() { return load_mss(data_path("hr_bp.json")); }

TemporalPattern pattern(std::string_view key, const Dataset& d) {
  VariableTable vars = d.variables();
  const auto known = vars.size();
  auto p = decode_key(key, vars);
  if (vars.size() != known) throw std::invalid_argument("unknown variable in " + std::string(key));
  return p;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

namespace {

// Every coherent relation vector of size k: row i is a_i CoOccur then Before.
void coherent_matrices(std::size_t k, std::size_t row, std::vector<Relation>& cur,
                       std::vector<std::vector<Relation>>& out) {
  if (k < 2 || row + 1 >= k) {
    out.push_back(cur);
    return;
  }
  const std::size_t width = k - row - 1;
  for (std::size_t a = 0; a <= width; ++a) {
    for (std::size_t j = 0; j < width; ++j) {
      cur[TemporalPattern::relation_offset(k, row, row + 1 + j)] =
          j < a ? Relation::CoOccur : Relation::Before;
    }
    coherent_matrices(k, row + 1, cur, out);
  }
}

}  // namespace

std::vector<FoundPattern> brute_force_ftps(const Dataset& d, double theta, std::size_t max_k) {
  std::set<State> observed;
  for (RecordId r = 0; r < d.size(); ++r) {
    for (const auto& e : d.mss(r)) observed.insert(e.state());
  }
  const std::vector<State> states(observed.begin(), observed.end());

  std::vector<FoundPattern> out;
  for (std::size_t k = 1; k <= max_k && !states.empty(); ++k) {
    std::vector<std::vector<Relation>> matrices;
    std::vector<Relation> cur(TemporalPattern::relation_count(k), Relation::Before);
    coherent_matrices(k, 0, cur, matrices);

    std::vector<std::size_t> pick(k, 0);
    while (true) {
      std::vector<State> seq;
      for (auto i : pick) seq.push_back(states[i]);
      for (const auto& m : matrices) {
        TemporalPattern p(seq, m);
        std::vector<RecordId> ids;
        for (RecordId r = 0; r < d.size(); ++r) {
          if (contains(d.mss(r), p)) ids.push_back(r);
        }
        if (ids.empty()) continue;
        auto support = d.supports(ids);
        if (is_frequent(support, d.class_sizes(), theta)) {
          out.push_back({std::move(p), {}, std::move(support)});
        }
      }
      std::size_t i = 0;
      while (i < k && ++pick[i] == states.size()) pick[i++] = 0;
      if (i == k) break;
    }
  }
  canonicalize(out, d.variables());
  return out;
}

TemporalPattern random_pattern(std::mt19937_64& rng, std::size_t variables, std::size_t alphabet,
                               std::size_t k) {
  std::vector<State> states;
  for (std::size_t i = 0; i < k; ++i) {
    states.push_back({static_cast<VariableId>(uniform(rng, 0, variables - 1)),
                      static_cast<Symbol>(uniform(rng, 0, alphabet - 1))});
  }
  std::vector<Relation> rel(TemporalPattern::relation_count(k), Relation::Before);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const std::size_t width = k - i - 1;
    const std::size_t a = uniform(rng, 0, width);
    for (std::size_t j = 0; j < a; ++j) {
      rel[TemporalPattern::relation_offset(k, i, i + 1 + j)] = Relation::CoOccur;
    }
  }
  return TemporalPattern(std::move(states), std::move(rel));
}

Mss random_mss(std::mt19937_64& rng, std::size_t variables, std::size_t alphabet,
               std::size_t intervals) {
  SyntheticSpec spec;
  spec.seed = rng();
  spec.records = 1;
  spec.classes = 1;
  spec.variables = variables;
  spec.alphabet = alphabet;
  spec.intervals_per_record = intervals;
  return generate_synthetic(spec).mss(0);
}

}  // namespace tpmine::testing
