#include "wigest/classify.hpp"

#include <algorithm>
#include <string>

namespace wigest {

namespace {

double Median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

} // namespace

const char *GestureName(Gesture g) {
  switch (g) {
  case Gesture::kPush: return "push";
  case Gesture::kPull: return "pull";
  case Gesture::kPunch: return "punch";
  case Gesture::kLever: return "lever";
  case Gesture::kUnknown: return "unknown";
  }
  return "unknown";
}

Result<Gesture> ParseGesture(std::string_view name) {
  for (Gesture g :
       {Gesture::kPush, Gesture::kPull, Gesture::kPunch, Gesture::kLever, Gesture::kUnknown}) {
    if (name == GestureName(g)) {
      return g;
    }
  }
  return MakeError(ErrorCode::kBadKind, "unknown gesture '" + std::string(name) + "'");
}

Result<std::vector<Trend>> TrendPattern(std::span<const double> heights,
                                        const ClassifyConfig &cfg) {
  const std::size_t n = heights.size();
  if (n < 3) {
    return MakeError(ErrorCode::kTooFewPeaks, "trend needs at least 3 heights");
  }
  std::vector<double> h(heights.begin(), heights.end());
  if (n >= cfg.min_smoothing_len) {
    // Mirror padding: the end samples see their inner neighbour on both sides.
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i == 0 ? heights[1] : heights[i - 1];
      const double right = i + 1 == n ? heights[n - 2] : heights[i + 1];
      h[i] = Median3(left, heights[i], right);
    }
  }
  struct Run {
    Trend dir;
    double change;
  };
  std::vector<Run> runs;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = h[i] - h[i - 1];
    if (d == 0.0) {
      continue;
    }
    const Trend dir = d > 0.0 ? Trend::kUp : Trend::kDown;
    if (!runs.empty() && runs.back().dir == dir) {
      runs.back().change += std::abs(d);
    } else {
      runs.push_back({dir, std::abs(d)});
    }
  }
  const double floor = cfg.hysteresis_frac * *std::max_element(heights.begin(), heights.end());
  std::vector<Trend> out;
  for (const Run &r : runs) {
    if (r.change < floor) {
      continue;
    }
    if (out.empty() || out.back() != r.dir) {
      out.push_back(r.dir);
    }
  }
  return out;
}

Gesture GestureForPattern(std::span<const Trend> p) {
  using T = Trend;
  if (p.size() == 1) {
    return p[0] == T::kUp ? Gesture::kPush : Gesture::kPull;
  }
  if (p.size() == 2 && p[0] == T::kUp && p[1] == T::kDown) {
    return Gesture::kPunch;
  }
  if (p.size() == 3 && p[0] == T::kUp && p[1] == T::kDown && p[2] == T::kUp) {
    return Gesture::kLever;
  }
  return Gesture::kUnknown;
}

GestureEvent ClassifyGroup(const PeakGroup &group, const ClassifyConfig &cfg) {
  GestureEvent e;
  e.start_ms = group.span.start_ms;
  e.end_ms = group.span.end_ms;
  e.peak_count = group.peaks.size();
  std::vector<double> heights;
  heights.reserve(group.peaks.size());
  for (const Peak &p : group.peaks) {
    heights.push_back(p.height);
    e.peak_times_ms.push_back(p.t_ms);
    e.max_height = std::max(e.max_height, p.height);
  }
  auto pattern = TrendPattern(heights, cfg);
  if (pattern) {
    e.pattern = std::move(pattern).value();
    e.gesture = GestureForPattern(e.pattern);
  }
  return e;
}

Result<Detection> Detect(const UniformSignal &conditioned, const PipelineConfig &cfg) {
  auto boot = ComputeNoiseStats(conditioned, {}, cfg.peaks.min_quiet_s);
  if (!boot) {
    return boot.error();
  }
  Detection det;
  det.bootstrap = *boot;
  det.floor = *boot;
  det.peaks = DetectPeaks(conditioned, det.bootstrap, cfg.peaks);
  det.groups = GroupPeaks(det.peaks, det.bootstrap, cfg.peaks);
  if (cfg.refine_noise_floor && !det.groups.empty()) {
    std::vector<Span> busy;
    for (const PeakGroup &g : det.groups) {
      busy.push_back({g.span.start_ms - cfg.peaks.group_gap_ms,
                      g.span.end_ms + cfg.peaks.group_gap_ms});
    }
    auto quiet = ComputeNoiseStats(conditioned, busy, cfg.peaks.min_quiet_s);
    if (quiet) {
      det.floor = *quiet;
      det.groups = GroupPeaks(det.peaks, det.floor, cfg.peaks);
    }
  }
  return det;
}

Result<std::vector<GestureEvent>> ClassifySignal(const UniformSignal &conditioned,
                                                 const PipelineConfig &cfg) {
  auto det = Detect(conditioned, cfg);
  if (!det) {
    return det.error();
  }
  std::vector<GestureEvent> events;
  events.reserve(det->groups.size());
  for (const PeakGroup &g : det->groups) {
    events.push_back(ClassifyGroup(g, cfg.classify));
  }
  return events;
}

Result<std::vector<GestureEvent>> ClassifySeries(const Series &series,
                                                 const PipelineConfig &cfg) {
  if (series.size() == 0) {
    return MakeError(ErrorCode::kEmptyTrace, "trace has no samples");
  }
  std::vector<GestureEvent> events;
  for (const Series &part : SplitAtGaps(series, cfg.condition.max_gap_ms)) {
    auto sig = ConditionSeries(part, cfg.condition);
    if (!sig) {
      const ErrorCode code = sig.error().code;
      if (code == ErrorCode::kTooFewPoints || code == ErrorCode::kSignalTooShort) {
        continue;
      }
      return sig.error();
    }
    auto part_events = ClassifySignal(*sig, cfg);
    if (!part_events) {
      if (part_events.error().code == ErrorCode::kInsufficientQuietSignal) {
        continue;
      }
      return part_events.error();
    }
    events.insert(events.end(), part_events->begin(), part_events->end());
  }
  return events;
}

} // namespace wigest
