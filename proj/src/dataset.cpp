#include "tpmine/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tpmine/pattern_key.hpp"

namespace tpmine {

bool valid_class_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (c == ',' || c == ':' || c == '"' || c == '\\' || static_cast<unsigned char>(c) <= ' ') {
      return false;
    }
  }
  return true;
}

Dataset::Dataset(VariableTable variables, std::vector<LabeledMss> records)
    : variables_(std::move(variables)) {
  std::map<std::string, ClassId> classes;
  for (const auto& r : records) {
    if (!valid_class_label(r.label)) {
      throw std::invalid_argument("invalid class label '" + r.label + "'");
    }
    classes.emplace(r.label, 0);
  }
  for (auto& [name, id] : classes) {
    id = static_cast<ClassId>(class_names_.size());
    class_names_.push_back(name);
  }
  class_sizes_.assign(class_names_.size(), 0);
  records_.reserve(records.size());
  labels_.reserve(records.size());
  for (auto& r : records) {
    for (const auto& e : r.mss) {
      if (e.variable >= variables_.size()) {
        throw std::invalid_argument("record references an unknown variable id");
      }
    }
    const ClassId c = classes.at(r.label);
    ++class_sizes_[c];
    labels_.push_back(c);
    records_.push_back(std::move(r.mss));
  }
}

std::vector<std::uint32_t> Dataset::supports(std::span<const RecordId> ids) const {
  std::vector<std::uint32_t> out(class_count(), 0);
  for (RecordId id : ids) ++out[labels_[id]];
  return out;
}

bool is_frequent(std::span<const std::uint32_t> supports,
                 std::span<const std::uint32_t> class_sizes, double theta) {
  for (std::size_t y = 0; y < supports.size() && y < class_sizes.size(); ++y) {
    if (static_cast<double>(supports[y]) >= theta * static_cast<double>(class_sizes[y])) {
      return true;
    }
  }
  return false;
}

void MiningConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0,1]");
  }
  if (max_k && *max_k == 0) throw std::invalid_argument("max_k must be at least 1");
  if (time_limit && time_limit->count() < 0) {
    throw std::invalid_argument("time limit must be non-negative");
  }
}

void canonicalize(std::vector<FoundPattern>& ftps, const VariableTable& variables) {
  for (auto& f : ftps) {
    if (f.key.empty()) f.key = encode_key(f.pattern, variables);
  }
  std::sort(ftps.begin(), ftps.end(), [](const FoundPattern& a, const FoundPattern& b) {
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
    return a.key < b.key;
  });
}

bool same_patterns(const MiningResult& a, const MiningResult& b) {
  if (a.ftps.size() != b.ftps.size()) return false;
  for (std::size_t i = 0; i < a.ftps.size(); ++i) {
    if (a.ftps[i].key != b.ftps[i].key || a.ftps[i].support != b.ftps[i].support ||
        !(a.ftps[i].pattern == b.ftps[i].pattern)) {
      return false;
    }
  }
  return true;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace tpmine
