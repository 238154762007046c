#include "tpmine/abstraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tpmine {

void validate_series(const RawSeries& s) {
  if (s.samples.empty()) {
    throw std::invalid_argument("series '" + s.variable + "' has no samples");
  }
  for (std::size_t i = 1; i < s.samples.size(); ++i) {
    if (s.samples[i - 1].tick >= s.samples[i].tick) {
      throw std::invalid_argument("series '" + s.variable + "' ticks not strictly increasing");
    }
  }
}

PercentileThresholds compute_thresholds(std::span<const double> values,
                                        const std::array<double, 4>& percentiles) {
  if (values.empty()) throw std::invalid_argument("compute_thresholds: empty population");
  for (std::size_t i = 0; i < percentiles.size(); ++i) {
    if (!(percentiles[i] >= 0.0 && percentiles[i] <= 1.0) ||
        (i > 0 && percentiles[i] < percentiles[i - 1])) {
      throw std::invalid_argument("percentiles must be non-decreasing values in [0,1]");
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());

  PercentileThresholds t;
  for (std::size_t i = 0; i < 4; ++i) {
    // nearest rank; the epsilon absorbs products like 0.7 * 100 = 70.00000000000001
    auto rank = static_cast<std::size_t>(std::ceil(percentiles[i] * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    t.cuts[i] = sorted[rank - 1];
  }
  return t;
}

Symbol value_symbol(double v, const PercentileThresholds& t) {
  const auto& c = t.cuts;
  if (v < c[0]) return Symbol::VeryLow;
  if (v < c[1]) return Symbol::Low;
  if (v <= c[2]) return Symbol::Normal;
  if (v <= c[3]) return Symbol::High;
  return Symbol::VeryHigh;
}

std::vector<StateInterval> value_abstract(const RawSeries& s, VariableId variable,
                                          const PercentileThresholds& t) {
  validate_series(s);
  std::vector<StateInterval> out;
  for (const auto& sample : s.samples) {
    const Symbol sym = value_symbol(sample.value, t);
    if (!out.empty() && out.back().symbol == sym) {
      out.back().end = sample.tick;
    } else {
      out.push_back({variable, sym, sample.tick, sample.tick});
    }
  }
  return out;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double residual = 0.0;
};

LineFit fit_line(std::span<const Sample> samples) {
  const auto n = static_cast<double>(samples.size());
  if (samples.size() < 2) return {};
  // ticks are shifted to the first sample to keep the sums well conditioned
  const Tick origin = samples.front().tick;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& s : samples) {
    mx += static_cast<double>(s.tick - origin);
    my += s.value;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& s : samples) {
    const double dx = static_cast<double>(s.tick - origin) - mx;
    const double dy = s.value - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.residual = std::max(0.0, syy - sxy * fit.slope);
  // exact lines come out as tiny positive noise; snap them to zero
  if (fit.residual <= 1e-10 * (syy + 1.0)) fit.residual = 0.0;
  return fit;
}

}  // namespace

double line_residual(std::span<const Sample> samples) { return fit_line(samples).residual; }

double line_slope(std::span<const Sample> samples) { return fit_line(samples).slope; }

std::vector<Segment> segment_bottom_up(std::span<const Sample> samples, double max_error) {
  if (max_error < 0.0) throw std::invalid_argument("segmentation max_error must be >= 0");
  std::vector<Segment> segs;
  segs.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) segs.push_back({i, i, 0.0});

  auto merge_cost = [&](std::size_t i) {
    const auto span = samples.subspan(segs[i].first, segs[i + 1].last - segs[i].first + 1);
    return fit_line(span).residual / static_cast<double>(span.size());
  };

  std::vector<double> costs;
  costs.reserve(segs.size());
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) costs.push_back(merge_cost(i));

  while (!costs.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < costs.size(); ++i) {
      if (costs[i] < costs[best]) best = i;
    }
    if (costs[best] > max_error) break;
    segs[best].last = segs[best + 1].last;
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    costs.erase(costs.begin() + static_cast<std::ptrdiff_t>(best));
    if (best > 0) costs[best - 1] = merge_cost(best - 1);
    if (best < costs.size()) costs[best] = merge_cost(best);
  }

  for (auto& seg : segs) {
    seg.slope = line_slope(samples.subspan(seg.first, seg.last - seg.first + 1));
  }
  return segs;
}

std::vector<StateInterval> trend_abstract(const RawSeries& s, VariableId variable,
                                          const SegmentationParams& params) {
  validate_series(s);
  if (params.steady_slope < 0.0) throw std::invalid_argument("steady_slope must be >= 0");
  const auto segs = segment_bottom_up(s.samples, params.max_error);

  std::vector<StateInterval> out;
  for (const auto& seg : segs) {
    Symbol sym = Symbol::Steady;
    if (seg.slope > params.steady_slope) {
      sym = Symbol::Increasing;
    } else if (seg.slope < -params.steady_slope) {
      sym = Symbol::Decreasing;
    }
    const Tick start = s.samples[seg.first].tick;
    const Tick end = s.samples[seg.last].tick;
    if (!out.empty() && out.back().symbol == sym) {
      out.back().end = end;
    } else {
      out.push_back({variable, sym, start, end});
    }
  }
  return out;
}

Mss build_mss(std::span<const std::vector<StateInterval>> sequences,
              const VariableTable& variables) {
  std::vector<StateInterval> all;
  for (const auto& seq : sequences) all.insert(all.end(), seq.begin(), seq.end());
  std::sort(all.begin(), all.end(), [&](const StateInterval& a, const StateInterval& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    if (a.variable != b.variable) return variables.name(a.variable) < variables.name(b.variable);
    return a.symbol < b.symbol;
  });
  try {
    return Mss(std::move(all));
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("build_mss: ") + e.what());
  }
}

}  // namespace tpmine
