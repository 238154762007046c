#include "tpmine/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "tpmine/abstraction.hpp"
#include "tpmine/oracle.hpp"

namespace tpmine {

namespace {

// mt19937_64 output is fully specified, unlike the std distributions, so the
// helpers below keep datasets identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  Tick between(Tick lo, Tick hi) { return lo + static_cast<Tick>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 gen_;
};

constexpr Tick kMaxDuration = 3;
constexpr Tick kPlantSpacing = 4;

struct Draft {
  Symbol symbol;
  Tick start;
  Tick end;
};

std::optional<Symbol> pick_symbol(Rng& rng, std::size_t alphabet, std::optional<Symbol> avoid_a,
                                  std::optional<Symbol> avoid_b) {
  std::vector<Symbol> allowed;
  for (std::size_t i = 0; i < alphabet; ++i) {
    const auto s = static_cast<Symbol>(i);
    if (s != avoid_a && s != avoid_b) allowed.push_back(s);
  }
  if (allowed.empty()) return std::nullopt;
  return allowed[rng.below(allowed.size())];
}

void add_background(Rng& rng, const SyntheticSpec& spec, std::size_t count,
                    std::vector<std::vector<Draft>>& lines, std::vector<Tick>& cursor) {
  for (std::size_t n = 0; n < count; ++n) {
    const auto v = rng.below(spec.variables);
    auto& line = lines[v];
    const std::optional<Symbol> prev =
        line.empty() ? std::nullopt : std::optional<Symbol>(line.back().symbol);
    const auto sym = pick_symbol(rng, spec.alphabet, prev, std::nullopt);
    const Tick dur = rng.between(0, kMaxDuration);
    if (!sym) continue;
    const Tick start = cursor[v];
    line.push_back({*sym, start, start + dur});
    cursor[v] = start + dur + 1 + rng.between(0, 1);
  }
}

void check_plantable(const SyntheticSpec& spec, const TemporalPattern& p) {
  if (p.size() > spec.intervals_per_record) {
    throw std::invalid_argument("planted pattern has more states than intervals per record");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.state(i).variable >= spec.variables) {
      throw std::invalid_argument("planted pattern uses an unknown variable");
    }
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p.state(i).variable == p.state(j).variable && p.relation(i, j) != Relation::Before) {
        throw std::invalid_argument("planted pattern has co-occurring states of one variable");
      }
    }
  }
}

// Start/end ticks that realize the pattern's relations, starting at `origin`.
std::vector<Draft> plant_layout(Rng& rng, const TemporalPattern& p, Tick origin) {
  const std::size_t k = p.size();
  std::vector<Draft> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    out[j].symbol = p.state(j).symbol;
    out[j].start = origin + kPlantSpacing * static_cast<Tick>(j);
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t first_before = k;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (p.relation(i, j) == Relation::Before) {
        first_before = j;
        break;
      }
    }
    // co-occur with every state before first_before, end before it starts
    out[i].end = first_before < k ? out[first_before].start - 2
                                  : out[k - 1].start + 1 + rng.between(0, 2);
  }
  return out;
}

Symbol filler_symbol(Rng& rng, std::size_t alphabet, Symbol around) {
  if (auto s = pick_symbol(rng, alphabet, around, std::nullopt)) return *s;
  return around == Symbol::VeryLow ? Symbol::Low : Symbol::VeryLow;
}

}  // namespace

VariableTable synthetic_variables(std::size_t n) {
  VariableTable vars;
  for (std::size_t v = 0; v < n; ++v) vars.intern("v" + std::to_string(v));
  return vars;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.variables == 0) throw std::invalid_argument("need at least one variable");
  if (spec.alphabet == 0 || spec.alphabet > 5) throw std::invalid_argument("alphabet must be 1..5");
  if (spec.classes == 0) throw std::invalid_argument("need at least one class");
  if (!(spec.plant_rate >= 0.0 && spec.plant_rate <= 1.0)) {
    throw std::invalid_argument("plant rate must lie in [0,1]");
  }
  if (spec.planted) check_plantable(spec, *spec.planted);

  Rng rng(spec.seed);
  VariableTable vars = synthetic_variables(spec.variables);

  std::vector<bool> receives(spec.records, false);
  if (spec.planted) {
    std::vector<std::size_t> class0;
    for (std::size_t i = 0; i < spec.records; i += spec.classes) class0.push_back(i);
    for (std::size_t i = class0.size(); i > 1; --i) std::swap(class0[i - 1], class0[rng.below(i)]);
    const auto n = static_cast<std::size_t>(
        std::llround(spec.plant_rate * static_cast<double>(class0.size())));
    for (std::size_t i = 0; i < n; ++i) receives[class0[i]] = true;
  }

  std::vector<LabeledMss> records;
  records.reserve(spec.records);
  for (std::size_t r = 0; r < spec.records; ++r) {
    std::vector<std::vector<Draft>> lines(spec.variables);
    std::vector<Tick> cursor(spec.variables);
    for (auto& c : cursor) c = rng.between(0, 2);

    const bool plant = receives[r];
    const std::size_t k = plant ? spec.planted->size() : 0;
    const std::size_t background = spec.intervals_per_record - std::min(k, spec.intervals_per_record);
    const std::size_t before = plant ? rng.below(background + 1) : background;
    add_background(rng, spec, before, lines, cursor);

    if (plant) {
      const auto& p = *spec.planted;
      const Tick origin = *std::max_element(cursor.begin(), cursor.end()) + 1;
      const auto layout = plant_layout(rng, p, origin);
      Tick window_end = origin;
      for (std::size_t v = 0; v < spec.variables; ++v) {
        auto& line = lines[v];
        std::optional<Symbol> last_planted;
        for (std::size_t j = 0; j < k; ++j) {
          if (p.state(j).variable != v) continue;
          const auto& d = layout[j];
          if (!last_planted) {
            // the background interval right before must not repeat the symbol
            while (!line.empty() && line.back().symbol == d.symbol) {
              const std::optional<Symbol> prev =
                  line.size() > 1 ? std::optional<Symbol>(line[line.size() - 2].symbol) : std::nullopt;
              if (auto s = pick_symbol(rng, spec.alphabet, prev, d.symbol)) {
                line.back().symbol = *s;
              } else {
                line.pop_back();
              }
            }
          } else if (*last_planted == d.symbol) {
            const Tick gap_start = line.back().end + 1;
            line.push_back({filler_symbol(rng, spec.alphabet, d.symbol), gap_start, d.start - 1});
          }
          line.push_back(d);
          last_planted = d.symbol;
        }
      }
      for (const auto& d : layout) window_end = std::max(window_end, d.end);
      for (auto& c : cursor) c = window_end + 2;
    }
    add_background(rng, spec, background - before, lines, cursor);

    std::vector<std::vector<StateInterval>> seqs(spec.variables);
    for (std::size_t v = 0; v < spec.variables; ++v) {
      for (const auto& d : lines[v]) {
        seqs[v].push_back({static_cast<VariableId>(v), d.symbol, d.start, d.end});
      }
    }
    Mss mss = build_mss(seqs, vars);
    if (plant && !contains(mss, *spec.planted)) {
      throw std::logic_error("generate_synthetic: planted pattern not found after embedding");
    }
    records.push_back({std::move(mss), std::to_string(r % spec.classes)});
  }
  return Dataset(std::move(vars), std::move(records));
}

}  // namespace tpmine
