#pragma once

// Raw numeric series -> state intervals.
//
// Value abstraction bands each sample against four percentile cuts; trend
// abstraction runs bottom-up piecewise-linear segmentation and labels each
// segment by its least-squares slope. Both emit maximal, strictly separated
// intervals so the result can go straight into build_mss.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tpmine/model.hpp"

namespace tpmine {

struct Sample {
  Tick tick = 0;
  double value = 0.0;
};

struct RawSeries {
  std::string variable;
  std::vector<Sample> samples;  // ticks strictly increasing, at least one sample
};

/// Throws std::invalid_argument if the series is empty or ticks do not
/// strictly increase.
void validate_series(const RawSeries& s);

inline constexpr std::array<double, 4> kDefaultPercentiles = {0.1, 0.25, 0.75, 0.9};

struct PercentileThresholds {
  std::array<double, 4> cuts{};  // non-decreasing
};

/// Nearest-rank percentiles of a pooled population. Throws on an empty
/// population or percentiles outside [0,1] / decreasing.
PercentileThresholds compute_thresholds(std::span<const double> values,
                                        const std::array<double, 4>& percentiles = kDefaultPercentiles);

/// v < t1 VeryLow, [t1,t2) Low, [t2,t3] Normal, (t3,t4] High, > t4 VeryHigh.
Symbol value_symbol(double v, const PercentileThresholds& t);

std::vector<StateInterval> value_abstract(const RawSeries& s, VariableId variable,
                                          const PercentileThresholds& t);

struct SegmentationParams {
  // Merges are allowed while the merged segment's mean squared residual
  // (sum of squared residuals / sample count) stays within this budget.
  double max_error = 0.28;
  double steady_slope = 0.0;
};

struct Segment {
  std::size_t first = 0;  // sample indices, inclusive
  std::size_t last = 0;
  double slope = 0.0;
};

/// Sum of squared residuals of the least-squares line through the samples.
double line_residual(std::span<const Sample> samples);

/// Least-squares slope; 0 for fewer than two samples.
double line_slope(std::span<const Sample> samples);

/// Bottom-up segmentation starting from single samples. The cheapest
/// adjacent merge (leftmost on ties) is applied while it fits the budget.
std::vector<Segment> segment_bottom_up(std::span<const Sample> samples, double max_error);

std::vector<StateInterval> trend_abstract(const RawSeries& s, VariableId variable,
                                          const SegmentationParams& params);

/// Merges per-variable interval sequences into one MSS ordered by
/// (start, end, variable name, symbol). Throws std::logic_error if the
/// inputs violate the within-variable invariants.
Mss build_mss(std::span<const std::vector<StateInterval>> sequences, const VariableTable& variables);

}  // namespace tpmine
