#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wigest/condition.hpp"
#include "wigest/result.hpp"

namespace wigest {

enum class Polarity { kCrest, kTrough };

struct Peak {
  // Milliseconds since trace start.
  double t_ms{0.0};
  double height{0.0};
  Polarity polarity{Polarity::kCrest};
};

struct NoiseStats {
  double mean_abs{0.0};
  double std_abs{0.0};
};

struct Span {
  double start_ms{0.0};
  double end_ms{0.0};
};

struct PeakGroup {
  std::vector<Peak> peaks{};
  Span span{};
};

struct PeakConfig {
  double threshold_factor{1.5};
  double group_gap_ms{300.0};
  std::size_t min_group_size{3};
  double max_span_ms{4000.0};
  double min_quiet_s{1.0};
  // Keep only the tallest maximum of each same-sign excursion of the signal.
  bool merge_lobes{true};
};

// Mean and std of |value| outside the excluded spans.
Result<NoiseStats> ComputeNoiseStats(const UniformSignal &sig, std::span<const Span> exclusion,
                                     double min_quiet_s = 1.0);

std::vector<Peak> DetectPeaks(const UniformSignal &sig, const NoiseStats &stats,
                              const PeakConfig &cfg = {});

std::vector<PeakGroup> GroupPeaks(std::span<const Peak> peaks, const NoiseStats &stats,
                                  const PeakConfig &cfg = {});

} // namespace wigest
