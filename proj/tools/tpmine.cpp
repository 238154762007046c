#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tpmine/harness.hpp"
#include "tpmine/io.hpp"
#include "tpmine/pattern_key.hpp"
#include "tpmine/synthetic.hpp"

namespace {

using namespace tpmine;

std::array<double, 4> parse_percentiles(const std::string& text) {
  std::array<double, 4> out{};
  std::stringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 4) throw CLI::ValidationError("--percentiles", "expected four values");
    std::size_t used = 0;
    out[n++] = std::stod(item, &used);
    if (used != item.size()) throw CLI::ValidationError("--percentiles", "bad number '" + item + "'");
  }
  if (n != 4) throw CLI::ValidationError("--percentiles", "expected four values");
  return out;
}

std::optional<std::size_t> parse_max_k(const std::string& text) {
  if (text == "inf" || text == "none") return std::nullopt;
  std::size_t used = 0;
  const long v = std::stol(text, &used);
  if (used != text.size() || v < 1) throw CLI::ValidationError("--max-k", "expected a positive integer or 'inf'");
  return static_cast<std::size_t>(v);
}

std::map<std::string, std::string> read_pattern_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_patterns(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent temporal pattern mining over labeled multivariate state sequences"};
  app.require_subcommand(1);

  // mine
  auto* mine = app.add_subcommand("mine", "Mine frequent temporal patterns");
  RunConfig cfg;
  std::string format = "ucr", delimiter, algorithm = "both", abstraction = "value,trend";
  std::string percentiles, max_k = "inf";
  double time_limit_s = 0.0;
  std::string output, stats;
  mine->add_option("--input", cfg.input, "Input file")->required();
  mine->add_option("--format", format, "ucr or mss")->check(CLI::IsMember({"ucr", "mss"}));
  mine->add_option("--delimiter", delimiter, "UCR field delimiter: tab, space, comma or one character");
  mine->add_option("--theta", cfg.mining.theta, "Minimum support ratio in [0,1]");
  mine->add_option("--max-k", max_k, "Largest pattern size, or 'inf'");
  mine->add_option("--algorithm", algorithm, "ftpm, evl or both")
      ->check(CLI::IsMember({"ftpm", "evl", "both"}));
  mine->add_option("--abstraction", abstraction, "value, trend or value,trend");
  mine->add_option("--percentiles", percentiles, "Four value cut percentiles, e.g. 0.1,0.25,0.75,0.9");
  mine->add_option("--seg-max-error", cfg.abstraction.segmentation.max_error,
                   "Mean squared residual allowed per trend segment");
  mine->add_option("--steady-slope", cfg.abstraction.segmentation.steady_slope,
                   "Slopes within +-this value are Steady");
  mine->add_option("--time-limit-s", time_limit_s, "Stop mining after this many seconds (0: none)");
  mine->add_option("--output", output, "Pattern file");
  mine->add_option("--stats", stats, "JSON stats file");
  mine->add_flag("--retain-evl", cfg.retain_evl, "Dump every EVL into the stats file");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic MSS dataset");
  SyntheticSpec spec;
  std::string plant, gen_output;
  gen->add_option("--seed", spec.seed);
  gen->add_option("--records", spec.records);
  gen->add_option("--variables", spec.variables);
  gen->add_option("--alphabet", spec.alphabet, "Value symbols used, 1..5");
  gen->add_option("--intervals", spec.intervals_per_record, "Intervals per record");
  gen->add_option("--classes", spec.classes);
  gen->add_option("--plant", plant, "Pattern key to plant, over variables v0, v1, ...");
  gen->add_option("--plant-rate", spec.plant_rate, "Fraction of class-0 records receiving the pattern");
  gen->add_option("--output", gen_output, "Output file (default stdout)");

  // diff
  auto* diff = app.add_subcommand("diff", "Compare two pattern files");
  std::string left, right;
  diff->add_option("left", left)->required();
  diff->add_option("right", right)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mine) {
      cfg.format = format == "mss" ? InputFormat::Mss : InputFormat::Ucr;
      if (delimiter == "tab" || delimiter == "\\t") {
        cfg.delimiter = '\t';
      } else if (delimiter == "space") {
        cfg.delimiter = ' ';
      } else if (delimiter == "comma") {
        cfg.delimiter = ',';
      } else if (delimiter.size() == 1) {
        cfg.delimiter = delimiter[0];
      } else if (!delimiter.empty()) {
        throw std::invalid_argument("unsupported delimiter '" + delimiter + "'");
      }
      cfg.mining.max_k = parse_max_k(max_k);
      if (time_limit_s < 0) throw std::invalid_argument("time limit must be non-negative");
      if (time_limit_s > 0) {
        cfg.mining.time_limit = std::chrono::milliseconds(static_cast<long long>(time_limit_s * 1000));
      }
      cfg.algorithm = algorithm == "ftpm" ? Algorithm::Ftpm
                      : algorithm == "evl" ? Algorithm::Evl
                                           : Algorithm::Both;
      if (!percentiles.empty()) cfg.abstraction.percentiles = parse_percentiles(percentiles);
      cfg.abstraction = parse_abstractions(abstraction, cfg.abstraction);
      if (!output.empty()) cfg.output = output;
      if (!stats.empty()) cfg.stats = stats;

      const auto out = run(cfg);
      std::cout << out.report.records << " records, " << out.report.variables << " variables, "
                << out.report.classes << " classes\n";
      write_table(std::cout, out.report);
      if (out.report.identical && !*out.report.identical) return 2;
      return 0;
    }
    if (*gen) {
      if (!plant.empty()) {
        VariableTable vars = synthetic_variables(spec.variables);
        const auto known = vars.size();
        spec.planted = decode_key(plant, vars);
        if (vars.size() != known) throw std::invalid_argument("planted key names a variable outside v0..v" + std::to_string(known - 1));
      }
      const Dataset d = generate_synthetic(spec);
      if (gen_output.empty()) {
        write_mss(std::cout, d);
      } else {
        std::ofstream out(gen_output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + gen_output);
        write_mss(out, d);
      }
      return 0;
    }
    if (*diff) {
      const auto result = diff_patterns(read_pattern_file(left), read_pattern_file(right));
      for (const auto& k : result.only_left) std::cout << "< " << k << '\n';
      for (const auto& k : result.only_right) std::cout << "> " << k << '\n';
      for (const auto& k : result.support_differs) std::cout << "~ " << k << '\n';
      std::cout << (result.identical() ? "identical" : "differ") << '\n';
      return result.identical() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
