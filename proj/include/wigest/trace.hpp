#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wigest/result.hpp"

namespace wigest {

inline constexpr double kSpeedOfLight = 299792458.0;

struct RawSample {
  std::int64_t t_us{0};
  double rssi_db{0.0};
  std::vector<double> csi_amp{};
  // Empty when the trace carries no phase.
  std::vector<double> csi_phase{};

  bool operator==(const RawSample &) const = default;
};

struct TraceMeta {
  double carrier_hz{2.437e9};
  int subcarrier_count{30};
  double subcarrier_spacing_hz{20e6 / 30.0};
  double nominal_rate_pps{1000.0};
  std::string label{};

  bool operator==(const TraceMeta &) const = default;
};

struct Trace {
  TraceMeta meta{};
  std::vector<RawSample> samples{};

  bool operator==(const Trace &) const = default;
};

// Timestamped scalar stream produced by aggregate().
struct Series {
  std::vector<std::int64_t> t_us{};
  std::vector<double> values{};

  [[nodiscard]] std::size_t size() const { return values.size(); }
};

struct Aggregation {
  enum class Kind { kMeanSubcarrier, kSingleSubcarrier, kRssiLinear };
  Kind kind{Kind::kMeanSubcarrier};
  int index{0};

  static Aggregation Mean() { return {Kind::kMeanSubcarrier, 0}; }
  static Aggregation Single(int k) { return {Kind::kSingleSubcarrier, k}; }
  static Aggregation Rssi() { return {Kind::kRssiLinear, 0}; }
};

// Accepts "mean", "rssi" or "sub:<k>".
Result<Aggregation> ParseAggregation(std::string_view text);

Result<Trace> ParseTrace(std::istream &in);
Result<Trace> ParseTrace(std::string_view text);

void WriteTrace(std::ostream &out, const Trace &trace);
std::string WriteTrace(const Trace &trace);

Result<Series> Aggregate(const Trace &trace, Aggregation method);

// Mean over subcarriers, summed in sorted order so the result does not depend
// on subcarrier ordering.
double MeanAmplitude(std::span<const double> amp);

// Wavelength of subcarrier k.
double SubcarrierWavelength(const TraceMeta &meta, int k);

} // namespace wigest
