#pragma once

// Dataset preparation and differential runs of the two miners.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "tpmine/abstraction.hpp"
#include "tpmine/dataset.hpp"
#include "tpmine/evl.hpp"
#include "tpmine/io.hpp"

namespace tpmine {

struct AbstractionConfig {
  bool value = true;
  bool trend = true;
  std::array<double, 4> percentiles = kDefaultPercentiles;
  SegmentationParams segmentation;

  /// Throws std::invalid_argument when no abstraction is selected or a
  /// parameter is out of range.
  void validate() const;
};

/// "value", "trend" or "value,trend" (any order).
AbstractionConfig parse_abstractions(const std::string& list, AbstractionConfig base = {});

/// Abstracts every raw series into `<series>.val` and/or `<series>.trend`
/// variables. Value thresholds are pooled per series name over all records.
Dataset prepare(const RawDataset& raw, const AbstractionConfig& cfg);

enum class Algorithm { Ftpm, Evl, Both };
enum class InputFormat { Ucr, Mss };

std::string algorithm_name(Algorithm a);

struct RunConfig {
  std::filesystem::path input;
  InputFormat format = InputFormat::Ucr;
  std::optional<char> delimiter;
  MiningConfig mining;
  Algorithm algorithm = Algorithm::Both;
  AbstractionConfig abstraction;
  std::optional<std::filesystem::path> output;  // pattern file
  std::optional<std::filesystem::path> stats;   // JSON stats file
  bool retain_evl = false;                      // keep EVLs and dump them into the stats file

  void validate() const;
};

struct MinerRun {
  MiningResult result;
  double wall_millis = 0.0;  // whole call, including size-1 lists
};

struct RunReport {
  std::size_t records = 0;
  std::size_t variables = 0;
  std::size_t classes = 0;
  std::optional<MinerRun> ftpm;
  std::optional<MinerRun> evl;
  std::optional<EvlStore> evl_store;  // only with retain_evl
  std::optional<bool> identical;      // set when both miners ran
  double load_millis = 0.0;

  const MiningResult& primary() const { return evl ? evl->result : ftpm->result; }
  /// ftpm / evl mining time; needs both runs.
  std::optional<double> speedup() const;
  /// evl / ftpm memory estimate; needs both runs.
  std::optional<double> memory_ratio() const;
};

/// Mines an already prepared dataset.
RunReport run_on(const Dataset& d, const RunConfig& cfg);

struct RunOutput {
  Dataset dataset;
  RunReport report;
};

/// Loads and prepares the input, mines, and writes the pattern and stats
/// files named in the config.
RunOutput run(const RunConfig& cfg);

/// Per-level time and memory table for the console.
void write_table(std::ostream& out, const RunReport& report);

/// JSON stats. Everything except the "timings" object is a deterministic
/// function of config and input.
void write_stats(std::ostream& out, const RunReport& report, const RunConfig& cfg,
                 const Dataset& d);

/// Process peak resident set size, where the platform exposes it.
std::optional<std::size_t> peak_rss_bytes();

}  // namespace tpmine
