#include "tpmine/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tpmine/pattern_key.hpp"

namespace tpmine {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, std::optional<char> delimiter) {
  std::vector<std::string_view> fields;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  if (delimiter && *delimiter != ' ' && *delimiter != '\t') {
    std::size_t from = 0;
    while (true) {
      const auto at = line.find(*delimiter, from);
      fields.push_back(trim(line.substr(from, at == std::string_view::npos ? at : at - from)));
      if (at == std::string_view::npos) break;
      from = at + 1;
    }
    return fields;
  }
  // whitespace: runs of spaces/tabs separate fields
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseError::Kind::Io, 0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

RawDataset parse_ucr(std::istream& in, std::optional<char> delimiter) {
  RawDataset out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const auto delim = delimiter ? delimiter
                                 : (line.find(',') != std::string::npos ? std::optional<char>(',')
                                                                        : std::nullopt);
    const auto fields = split_fields(line, delim);
    if (fields.size() < 2) {
      throw ParseError(ParseError::Kind::TooFewFields, line_no,
                       "line " + std::to_string(line_no) + ": expected a label and at least one sample");
    }
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw ParseError(ParseError::Kind::Ragged, line_no,
                       "line " + std::to_string(line_no) + ": " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(width));
    }

    RawRecord rec;
    rec.label = std::string(fields[0]);
    if (!valid_class_label(rec.label)) {
      throw ParseError(ParseError::Kind::Format, line_no,
                       "line " + std::to_string(line_no) + ": invalid class label '" + rec.label + "'");
    }
    RawSeries series{"s", {}};
    series.samples.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto v = parse_number(fields[i]);
      if (!v) {
        throw ParseError(ParseError::Kind::NonNumeric, line_no,
                         "line " + std::to_string(line_no) + ": field " + std::to_string(i + 1) +
                             " is not a finite number: '" + std::string(fields[i]) + "'");
      }
      series.samples.push_back({static_cast<Tick>(i - 1), *v});
    }
    rec.series.push_back(std::move(series));
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw ParseError(ParseError::Kind::Empty, line_no, "no records in input");
  return out;
}

RawDataset load_ucr(const std::filesystem::path& path, std::optional<char> delimiter) {
  std::istringstream in(read_file(path));
  return parse_ucr(in, delimiter);
}

Dataset parse_mss(std::string_view text) {
  using nlohmann::json;
  auto fail = [](const std::string& what) {
    return ParseError(ParseError::Kind::Format, 0, "mss: " + what);
  };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw fail(e.what());
  }
  if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array()) {
    throw fail("expected an object with a \"records\" array");
  }

  VariableTable vars;
  std::vector<LabeledMss> records;
  std::size_t r = 0;
  for (const auto& rec : doc["records"]) {
    const std::string where = "record " + std::to_string(r++) + ": ";
    if (!rec.is_object() || !rec.contains("class") || !rec["class"].is_string() ||
        !rec.contains("intervals") || !rec["intervals"].is_array()) {
      throw fail(where + "expected {\"class\": string, \"intervals\": array}");
    }
    std::vector<StateInterval> intervals;
    for (const auto& iv : rec["intervals"]) {
      if (!iv.is_array() || iv.size() != 4 || !iv[0].is_string() || !iv[1].is_string() ||
          !iv[2].is_number_integer() || !iv[3].is_number_integer()) {
        throw fail(where + "intervals must be [variable, symbol, start, end]");
      }
      const auto name = iv[0].get<std::string>();
      if (!VariableTable::valid_name(name)) throw fail(where + "invalid variable '" + name + "'");
      const auto sym = parse_symbol(iv[1].get<std::string>());
      if (!sym) throw fail(where + "unknown symbol '" + iv[1].get<std::string>() + "'");
      intervals.push_back({vars.intern(name), *sym, iv[2].get<Tick>(), iv[3].get<Tick>()});
    }
    std::vector<std::vector<StateInterval>> one{std::move(intervals)};
    try {
      records.push_back({build_mss(one, vars), rec["class"].get<std::string>()});
    } catch (const std::exception& e) {
      throw fail(where + e.what());
    }
  }
  try {
    return Dataset(std::move(vars), std::move(records));
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
}

Dataset load_mss(const std::filesystem::path& path) { return parse_mss(read_file(path)); }

void write_mss(std::ostream& out, const Dataset& d) {
  using nlohmann::json;
  const auto& vars = d.variables();
  out << "{\"records\":[\n";
  for (RecordId id = 0; id < d.size(); ++id) {
    out << "{\"class\":" << json(d.class_name(d.label(id))).dump() << ",\"intervals\":[";
    bool first = true;
    for (const auto& e : d.mss(id)) {
      if (!first) out << ',';
      first = false;
      out << "[" << json(vars.name(e.variable)).dump() << ",\"" << symbol_code(e.symbol) << "\","
          << e.start << ',' << e.end << ']';
    }
    out << "]}" << (id + 1 < d.size() ? ",\n" : "\n");
  }
  out << "]}\n";
}

void write_patterns(std::ostream& out, const MiningResult& result, const Dataset& d) {
  for (const auto& f : result.ftps) {
    out << (f.key.empty() ? encode_key(f.pattern, d.variables()) : f.key) << '\t';
    for (ClassId c = 0; c < f.support.size(); ++c) {
      if (c > 0) out << ',';
      out << d.class_name(c) << ':' << f.support[c];
    }
    out << '\n';
  }
}

std::map<std::string, std::string> read_patterns(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(ParseError::Kind::Format, line_no,
                       "line " + std::to_string(line_no) + ": expected <key>\\t<supports>");
    }
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

PatternDiff diff_patterns(const std::map<std::string, std::string>& left,
                          const std::map<std::string, std::string>& right) {
  PatternDiff diff;
  for (const auto& [key, support] : left) {
    auto it = right.find(key);
    if (it == right.end()) {
      diff.only_left.push_back(key);
    } else if (it->second != support) {
      diff.support_differs.push_back(key);
    }
  }
  for (const auto& [key, support] : right) {
    if (!left.contains(key)) diff.only_right.push_back(key);
  }
  return diff;
}

}  // namespace tpmine
