#include "tpmine/pattern_key.hpp"

namespace tpmine {

std::string encode_key(const TemporalPattern& p, const VariableTable& variables) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ',';
    out += variables.name(p.state(i).variable);
    out += '=';
    out += symbol_code(p.state(i).symbol);
  }
  out += '|';
  for (auto r : p.relations()) out += relation_code(r);
  out += '>';
  return out;
}

TemporalPattern decode_key(std::string_view key, VariableTable& variables) {
  const std::string context = "bad pattern key '" + std::string(key) + "': ";
  if (key.size() < 2 || key.front() != '<' || key.back() != '>') {
    throw KeyError(context + "missing angle brackets");
  }
  key = key.substr(1, key.size() - 2);
  const auto bar = key.find('|');
  if (bar == std::string_view::npos || key.find('|', bar + 1) != std::string_view::npos) {
    throw KeyError(context + "expected exactly one '|'");
  }

  std::vector<State> states;
  std::string_view items = key.substr(0, bar);
  while (true) {
    const auto comma = items.find(',');
    const auto item = items.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw KeyError(context + "state without '='");
    const auto name = item.substr(0, eq);
    if (!VariableTable::valid_name(name)) throw KeyError(context + "invalid variable name");
    const auto symbol = parse_symbol(item.substr(eq + 1));
    if (!symbol) throw KeyError(context + "unknown symbol");
    states.push_back({variables.intern(name), *symbol});
    if (comma == std::string_view::npos) break;
    items.remove_prefix(comma + 1);
  }

  std::vector<Relation> relations;
  for (char c : key.substr(bar + 1)) {
    if (c == 'b') {
      relations.push_back(Relation::Before);
    } else if (c == 'c') {
      relations.push_back(Relation::CoOccur);
    } else {
      throw KeyError(context + "relation codes must be 'b' or 'c'");
    }
  }
  try {
    return TemporalPattern(std::move(states), std::move(relations));
  } catch (const std::invalid_argument& e) {
    throw KeyError(context + e.what());
  }
}

}  // namespace tpmine
