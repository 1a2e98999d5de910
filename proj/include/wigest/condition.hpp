#pragma once

#include <cstdint>
#include <vector>

#include "wigest/result.hpp"
#include "wigest/trace.hpp"

namespace wigest {

struct UniformSignal {
  double rate_hz{1000.0};
  std::int64_t t0_us{0};
  std::vector<double> values{};

  [[nodiscard]] std::size_t size() const { return values.size(); }
  // Time of sample i in milliseconds since trace start.
  [[nodiscard]] double TimeMs(std::size_t i) const {
    return static_cast<double>(t0_us) / 1000.0 + static_cast<double>(i) * 1000.0 / rate_hz;
  }
};

struct ConditionConfig {
  double rate_hz{1000.0};
  double max_gap_ms{500.0};
  // Low-pass window in seconds; 0.1 s gives rate/10 taps.
  double lowpass_window_s{0.1};
  double normalize_window_ms{300.0};
};

Result<UniformSignal> Resample(const Series &series, double rate_hz, double max_gap_ms = 500.0);

// Moving average of rate_hz * window_s taps, centered, shortened at the edges.
Result<UniformSignal> Lowpass(const UniformSignal &sig, double window_s = 0.1);

// Subtracts the centered moving mean over window_ms.
Result<UniformSignal> Normalize(const UniformSignal &sig, double window_ms = 300.0);

Result<UniformSignal> ConditionSeries(const Series &series, const ConditionConfig &cfg = {});
Result<UniformSignal> Condition(const Trace &trace, Aggregation method,
                                const ConditionConfig &cfg = {});

// Splits a series wherever consecutive samples are more than max_gap_ms apart.
std::vector<Series> SplitAtGaps(const Series &series, double max_gap_ms);

} // namespace wigest
