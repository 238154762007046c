#pragma once

// File formats.
//
// UCR input: one record per line, fields separated by a delimiter (tab,
// space or comma; auto-detected when not given). The first field is the
// class label, the rest are the samples at ticks 0..T-1.
//
// Native MSS input/output (JSON text). The writer emits exactly:
//
//   {"records":[
//   {"class":"<label>","intervals":[["<var>","<sym>",<start>,<end>],...]},
//   ...
//   {"class":"<label>","intervals":[...]}
//   ]}
//
// one record per line, LF line endings, symbols as in pattern keys. The
// reader accepts any JSON with that structure and sorts each record's
// intervals into MSS order.
//
// Pattern output: "<key>\t<class>:<support>(,<class>:<support>)*" per line,
// every class listed in class order, lines sorted by (size, key).

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpmine/abstraction.hpp"
#include "tpmine/dataset.hpp"

namespace tpmine {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Io, Empty, TooFewFields, Ragged, NonNumeric, Format };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }  // 1-based; 0 when not tied to a line

 private:
  Kind kind_;
  std::size_t line_;
};

struct RawRecord {
  std::string label;
  std::vector<RawSeries> series;
};

using RawDataset = std::vector<RawRecord>;

RawDataset parse_ucr(std::istream& in, std::optional<char> delimiter = std::nullopt);
RawDataset load_ucr(const std::filesystem::path& path, std::optional<char> delimiter = std::nullopt);

Dataset parse_mss(std::string_view text);
Dataset load_mss(const std::filesystem::path& path);
void write_mss(std::ostream& out, const Dataset& d);

void write_patterns(std::ostream& out, const MiningResult& result, const Dataset& d);

/// key -> support text, for comparing pattern files.
std::map<std::string, std::string> read_patterns(std::istream& in);

struct PatternDiff {
  std::vector<std::string> only_left;
  std::vector<std::string> only_right;
  std::vector<std::string> support_differs;

  bool identical() const {
    return only_left.empty() && only_right.empty() && support_differs.empty();
  }
};

PatternDiff diff_patterns(const std::map<std::string, std::string>& left,
                          const std::map<std::string, std::string>& right);

}  // namespace tpmine
