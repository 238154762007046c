#include "tpmine/harness.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tpmine/ftpm.hpp"
#include "tpmine/pattern_key.hpp"

namespace tpmine {

void AbstractionConfig::validate() const {
  if (!value && !trend) throw std::invalid_argument("select at least one abstraction");
  double prev = 0.0;
  for (double p : percentiles) {
    if (!(p >= 0.0 && p <= 1.0) || p < prev) {
      throw std::invalid_argument("percentiles must be non-decreasing and within [0,1]");
    }
    prev = p;
  }
  if (!(segmentation.max_error >= 0.0)) throw std::invalid_argument("seg max error must be >= 0");
  if (!(segmentation.steady_slope >= 0.0)) throw std::invalid_argument("steady slope must be >= 0");
}

AbstractionConfig parse_abstractions(const std::string& list, AbstractionConfig base) {
  base.value = false;
  base.trend = false;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "value") {
      base.value = true;
    } else if (item == "trend") {
      base.trend = true;
    } else {
      throw std::invalid_argument("unknown abstraction '" + item + "'");
    }
  }
  base.validate();
  return base;
}

Dataset prepare(const RawDataset& raw, const AbstractionConfig& cfg) {
  cfg.validate();

  std::vector<std::string> names;
  std::map<std::string, std::vector<double>> pooled;
  for (const auto& rec : raw) {
    for (const auto& s : rec.series) {
      validate_series(s);
      auto [it, inserted] = pooled.try_emplace(s.variable);
      if (inserted) names.push_back(s.variable);
      if (cfg.value) {
        for (const auto& x : s.samples) it->second.push_back(x.value);
      }
    }
  }

  VariableTable vars;
  struct Slot {
    VariableId val = 0;
    VariableId trend = 0;
    PercentileThresholds thresholds;
  };
  std::map<std::string, Slot> slots;
  for (const auto& name : names) {
    Slot slot;
    if (cfg.value) {
      slot.val = vars.intern(name + ".val");
      slot.thresholds = compute_thresholds(pooled[name], cfg.percentiles);
    }
    if (cfg.trend) slot.trend = vars.intern(name + ".trend");
    slots.emplace(name, slot);
  }

  std::vector<LabeledMss> records;
  records.reserve(raw.size());
  for (const auto& rec : raw) {
    std::vector<std::vector<StateInterval>> seqs;
    for (const auto& s : rec.series) {
      const auto& slot = slots.at(s.variable);
      if (cfg.value) seqs.push_back(value_abstract(s, slot.val, slot.thresholds));
      if (cfg.trend) seqs.push_back(trend_abstract(s, slot.trend, cfg.segmentation));
    }
    records.push_back({build_mss(seqs, vars), rec.label});
  }
  return Dataset(std::move(vars), std::move(records));
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Ftpm: return "ftpm";
    case Algorithm::Evl: return "evl";
    case Algorithm::Both: return "both";
  }
  return "?";
}

void RunConfig::validate() const {
  mining.validate();
  if (format == InputFormat::Ucr) abstraction.validate();
}

std::optional<double> RunReport::speedup() const {
  if (!ftpm || !evl || evl->result.mining_millis <= 0.0) return std::nullopt;
  return ftpm->result.mining_millis / evl->result.mining_millis;
}

std::optional<double> RunReport::memory_ratio() const {
  if (!ftpm || !evl || ftpm->result.memory_bytes == 0) return std::nullopt;
  return static_cast<double>(evl->result.memory_bytes) /
         static_cast<double>(ftpm->result.memory_bytes);
}

RunReport run_on(const Dataset& d, const RunConfig& cfg) {
  cfg.validate();
  RunReport report;
  report.records = d.size();
  report.variables = d.variables().size();
  report.classes = d.class_count();

  if (cfg.algorithm != Algorithm::Evl) {
    const auto t0 = std::chrono::steady_clock::now();
    MinerRun r{mine_ftpm(d, cfg.mining), 0.0};
    r.wall_millis = elapsed_ms(t0);
    report.ftpm = std::move(r);
  }
  if (cfg.algorithm != Algorithm::Ftpm) {
    EvlStore store;
    const auto t0 = std::chrono::steady_clock::now();
    MinerRun r{mine_evl(d, cfg.mining, cfg.retain_evl ? &store : nullptr), 0.0};
    r.wall_millis = elapsed_ms(t0);
    report.evl = std::move(r);
    if (cfg.retain_evl) report.evl_store = std::move(store);
  }
  if (report.ftpm && report.evl) {
    report.identical = same_patterns(report.ftpm->result, report.evl->result);
  }
  return report;
}

RunOutput run(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Dataset d = cfg.format == InputFormat::Mss ? load_mss(cfg.input)
                                             : prepare(load_ucr(cfg.input, cfg.delimiter), cfg.abstraction);
  const double load_ms = elapsed_ms(t0);

  RunReport report = run_on(d, cfg);
  report.load_millis = load_ms;

  if (cfg.output) {
    std::ofstream out(*cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + cfg.output->string());
    write_patterns(out, report.primary(), d);
  }
  if (cfg.stats) {
    std::ofstream out(*cfg.stats, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + cfg.stats->string());
    write_stats(out, report, cfg, d);
  }
  return {std::move(d), std::move(report)};
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string cell(const std::string& s, std::size_t width) {
  return s.size() >= width ? " " + s : std::string(width - s.size(), ' ') + s;
}

const LevelStats* level_of(const std::optional<MinerRun>& run, std::size_t size) {
  if (!run || size == 0 || size > run->result.levels.size()) return nullptr;
  return &run->result.levels[size - 1];
}

constexpr double kMb = 1024.0 * 1024.0;

}  // namespace

void write_table(std::ostream& out, const RunReport& report) {
  const bool both = report.ftpm && report.evl;
  std::size_t depth = 0;
  if (report.ftpm) depth = std::max(depth, report.ftpm->result.levels.size());
  if (report.evl) depth = std::max(depth, report.evl->result.levels.size());

  out << cell("k", 4) << cell("FTPs", 9) << cell("cands", 10);
  if (report.ftpm) out << cell("ftpm sec", 11) << cell("ftpm MB", 10);
  if (report.evl) out << cell("evl sec", 11) << cell("evl MB", 10);
  if (both) out << cell("speed-up", 10) << cell("mem. ratio", 12);
  out << '\n';

  for (std::size_t k = 1; k <= depth; ++k) {
    const auto* f = level_of(report.ftpm, k);
    const auto* e = level_of(report.evl, k);
    const auto* any = e ? e : f;
    out << cell(std::to_string(k), 4) << cell(std::to_string(any->ftps), 9)
        << cell(std::to_string(any->candidates), 10);
    if (report.ftpm) {
      out << cell(f ? fixed(f->millis / 1000.0, 4) : "-", 11)
          << cell(f ? fixed(f->stored_bytes / kMb, 3) : "-", 10);
    }
    if (report.evl) {
      out << cell(e ? fixed(e->millis / 1000.0, 4) : "-", 11)
          << cell(e ? fixed(e->stored_bytes / kMb, 3) : "-", 10);
    }
    if (both) {
      out << cell(f && e && e->millis > 0 ? fixed(f->millis / e->millis, 2) : "-", 10)
          << cell(f && e && f->stored_bytes > 0
                      ? fixed(static_cast<double>(e->stored_bytes) / f->stored_bytes, 2)
                      : "-",
                  12);
    }
    out << '\n';
  }

  auto summary = [&](const char* name, const MinerRun& r) {
    out << name << ": " << r.result.ftps.size() << " FTPs, max size " << r.result.max_size()
        << ", mining " << fixed(r.result.mining_millis / 1000.0, 4) << " s, memory "
        << fixed(r.result.memory_bytes / kMb, 3) << " MB"
        << (r.result.complete ? "" : " (incomplete, fully mined up to size " +
                                         std::to_string(r.result.deepest_complete_size) + ")")
        << '\n';
  };
  if (report.ftpm) summary("ftpm", *report.ftpm);
  if (report.evl) summary("evl", *report.evl);
  if (report.identical) {
    out << "verdict: " << (*report.identical ? "identical" : "differ");
    if (auto s = report.speedup()) out << ", speed-up " << fixed(*s, 2);
    if (auto m = report.memory_ratio()) out << ", mem. ratio " << fixed(*m, 2);
    out << '\n';
  }
}

void write_stats(std::ostream& out, const RunReport& report, const RunConfig& cfg,
                 const Dataset& d) {
  using json = nlohmann::ordered_json;
  json doc;

  json config;
  config["input"] = cfg.input.filename().string();
  config["format"] = cfg.format == InputFormat::Ucr ? "ucr" : "mss";
  config["theta"] = cfg.mining.theta;
  config["max_k"] = cfg.mining.max_k ? json(*cfg.mining.max_k) : json(nullptr);
  config["time_limit_ms"] =
      cfg.mining.time_limit ? json(cfg.mining.time_limit->count()) : json(nullptr);
  config["algorithm"] = algorithm_name(cfg.algorithm);
  if (cfg.format == InputFormat::Ucr) {
    json abs = json::array();
    if (cfg.abstraction.value) abs.push_back("value");
    if (cfg.abstraction.trend) abs.push_back("trend");
    config["abstraction"] = abs;
    config["percentiles"] = cfg.abstraction.percentiles;
    config["seg_max_error"] = cfg.abstraction.segmentation.max_error;
    config["steady_slope"] = cfg.abstraction.segmentation.steady_slope;
  }
  doc["config"] = config;

  json classes = json::array();
  for (ClassId c = 0; c < d.class_count(); ++c) {
    classes.push_back({{"class", d.class_name(c)}, {"records", d.class_sizes()[c]}});
  }
  doc["dataset"] = {{"records", d.size()},
                    {"variables", d.variables().size()},
                    {"intervals", [&] {
                       std::size_t n = 0;
                       for (RecordId r = 0; r < d.size(); ++r) n += d.mss(r).size();
                       return n;
                     }()},
                    {"classes", classes}};

  json timings;
  timings["load_and_prepare_ms"] = report.load_millis;

  auto miner = [&](const char* name, const MinerRun& r) {
    json levels = json::array();
    json level_ms = json::array();
    for (const auto& l : r.result.levels) {
      levels.push_back({{"size", l.size},
                        {"candidates", l.candidates},
                        {"pruned", l.pruned},
                        {"ftps", l.ftps},
                        {"stored_bytes", l.stored_bytes}});
      level_ms.push_back(l.millis);
    }
    doc[name] = {{"ftps", r.result.ftps.size()},
                 {"max_size", r.result.max_size()},
                 {"complete", r.result.complete},
                 {"deepest_complete_size", r.result.deepest_complete_size},
                 {"memory_bytes", r.result.memory_bytes},
                 {"levels", levels}};
    timings[name] = {{"wall_ms", r.wall_millis},
                     {"mining_ms", r.result.mining_millis},
                     {"level_ms", level_ms}};
  };
  if (report.ftpm) miner("ftpm", *report.ftpm);
  if (report.evl) miner("evl", *report.evl);
  if (report.identical) {
    doc["verdict"] = *report.identical ? "identical" : "differ";
    if (auto m = report.memory_ratio()) doc["memory_ratio"] = *m;
    if (auto s = report.speedup()) timings["speedup"] = *s;
  }

  if (report.evl_store) {
    const auto& store = *report.evl_store;
    json dump = json::array();
    for (std::size_t size = 1; size <= store.max_size(); ++size) {
      const auto patterns = store.patterns(size);
      for (std::uint32_t i = 0; i < patterns.size(); ++i) {
        json recs = json::array();
        for (const auto& r : store.evl({static_cast<std::uint32_t>(size), i})) {
          recs.push_back({{"record", r.record}, {"pos", r.pos}, {"ind", r.ind}});
        }
        dump.push_back({{"key", encode_key(patterns[i], d.variables())}, {"records", recs}});
      }
    }
    doc["evl"] = dump;
  }

  if (auto peak = peak_rss_bytes()) {
    timings["peak_rss_bytes"] = *peak;
    timings["peak_rss_note"] = "process peak, not comparable to the analytic estimates";
  }
  doc["timings"] = timings;
  out << doc.dump(2) << '\n';
}

std::optional<std::size_t> peak_rss_bytes() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream fields(line.substr(6));
      std::size_t kb = 0;
      if (fields >> kb) return kb * 1024;
    }
  }
  return std::nullopt;
}

}  // namespace tpmine
