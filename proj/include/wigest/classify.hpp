#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wigest/condition.hpp"
#include "wigest/peaks.hpp"
#include "wigest/result.hpp"

namespace wigest {

enum class Gesture { kPush, kPull, kPunch, kLever, kUnknown };

const char *GestureName(Gesture g);
Result<Gesture> ParseGesture(std::string_view name);

enum class Trend { kUp, kDown };

struct GestureEvent {
  Gesture gesture{Gesture::kUnknown};
  double start_ms{0.0};
  double end_ms{0.0};
  std::size_t peak_count{0};
  std::vector<Trend> pattern{};
  double max_height{0.0};
  // Peak times of the source group, kept for lever periodicity checks.
  std::vector<double> peak_times_ms{};
};

struct ClassifyConfig {
  double hysteresis_frac{0.2};
  // Median smoothing needs enough heights to leave the pattern intact; shorter
  // sequences are classified on raw heights.
  std::size_t min_smoothing_len{6};
};

Result<std::vector<Trend>> TrendPattern(std::span<const double> heights,
                                        const ClassifyConfig &cfg = {});

Gesture GestureForPattern(std::span<const Trend> pattern);

GestureEvent ClassifyGroup(const PeakGroup &group, const ClassifyConfig &cfg = {});

struct PipelineConfig {
  ConditionConfig condition{};
  PeakConfig peaks{};
  ClassifyConfig classify{};
  // Re-estimate the noise floor with candidate groups excluded and use it for the
  // large-peak rule.
  bool refine_noise_floor{true};
};

// Peak detection and grouping on a conditioned signal, as used by the classifier.
struct Detection {
  NoiseStats bootstrap{};
  NoiseStats floor{};
  std::vector<Peak> peaks{};
  std::vector<PeakGroup> groups{};
};
Result<Detection> Detect(const UniformSignal &conditioned, const PipelineConfig &cfg = {});

Result<std::vector<GestureEvent>> ClassifySignal(const UniformSignal &conditioned,
                                                 const PipelineConfig &cfg = {});

// Splits at oversized gaps, conditions each part and classifies it. Parts too short
// to condition are skipped.
Result<std::vector<GestureEvent>> ClassifySeries(const Series &series,
                                                 const PipelineConfig &cfg = {});

} // namespace wigest
