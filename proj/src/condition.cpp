#include "wigest/condition.hpp"

#include <algorithm>
#include <cmath>

namespace wigest {

namespace {

// Centered moving mean over [i - width/2, i + width - width/2 - 1], clipped to
// the signal. Summing deviations from x[i] keeps constant windows exact.
std::vector<double> CenteredMean(const std::vector<double> &x, std::size_t width) {
  const std::size_t n = x.size();
  const std::size_t before = width / 2;
  const std::size_t after = width - before - 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= before ? i - before : 0;
    const std::size_t hi = std::min(n - 1, i + after);
    const double centre = x[i];
    double dev = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      dev += x[j] - centre;
    }
    out[i] = centre + dev / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::size_t Taps(double rate_hz, double window_s) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(rate_hz * window_s)));
}

} // namespace

Result<UniformSignal> Resample(const Series &series, double rate_hz, double max_gap_ms) {
  if (!(rate_hz > 0.0)) {
    return MakeError(ErrorCode::kInvalidArgument, "rate_hz must be > 0");
  }
  if (series.size() < 2) {
    return MakeError(ErrorCode::kTooFewPoints, "resampling needs at least 2 points");
  }
  const auto max_gap_us = static_cast<std::int64_t>(std::llround(max_gap_ms * 1000.0));
  for (std::size_t i = 1; i < series.size(); ++i) {
    const std::int64_t gap = series.t_us[i] - series.t_us[i - 1];
    if (gap <= 0) {
      return MakeError(ErrorCode::kNonMonotonicTimestamp, "timestamps must increase",
                       series.t_us[i]);
    }
    if (gap > max_gap_us) {
      return MakeError(ErrorCode::kGapTooLarge,
                       "gap of " + std::to_string(gap) + " us at t=" +
                           std::to_string(series.t_us[i - 1]) + " us",
                       series.t_us[i - 1], gap);
    }
  }
  UniformSignal out;
  out.rate_hz = rate_hz;
  out.t0_us = series.t_us.front();
  const double span_us = static_cast<double>(series.t_us.back() - series.t_us.front());
  const double step_us = 1e6 / rate_hz;
  const auto n = static_cast<std::size_t>(std::floor(span_us / step_us * (1.0 + 1e-15))) + 1;
  out.values.resize(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(out.t0_us) + static_cast<double>(i) * step_us;
    while (k + 2 < series.size() && static_cast<double>(series.t_us[k + 1]) < t) {
      ++k;
    }
    const double ta = static_cast<double>(series.t_us[k]);
    const double tb = static_cast<double>(series.t_us[k + 1]);
    const double f = std::clamp((t - ta) / (tb - ta), 0.0, 1.0);
    const double a = series.values[k];
    const double b = series.values[k + 1];
    out.values[i] = f == 1.0 ? b : a + (b - a) * f;
  }
  return out;
}

Result<UniformSignal> Lowpass(const UniformSignal &sig, double window_s) {
  const std::size_t taps = Taps(sig.rate_hz, window_s);
  if (sig.size() < taps) {
    return MakeError(ErrorCode::kSignalTooShort,
                     "low-pass needs " + std::to_string(taps) + " samples, got " +
                         std::to_string(sig.size()));
  }
  UniformSignal out{sig.rate_hz, sig.t0_us, CenteredMean(sig.values, taps)};
  return out;
}

Result<UniformSignal> Normalize(const UniformSignal &sig, double window_ms) {
  // Odd width so the window is symmetric about each sample.
  const std::size_t width = Taps(sig.rate_hz, window_ms / 1000.0) | 1U;
  if (sig.size() <= width) {
    return MakeError(ErrorCode::kSignalTooShort,
                     "normalize needs more than " + std::to_string(width) + " samples, got " +
                         std::to_string(sig.size()));
  }
  std::vector<double> mean = CenteredMean(sig.values, width);
  UniformSignal out{sig.rate_hz, sig.t0_us, std::move(mean)};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = sig.values[i] - out.values[i];
  }
  return out;
}

Result<UniformSignal> ConditionSeries(const Series &series, const ConditionConfig &cfg) {
  auto uniform = Resample(series, cfg.rate_hz, cfg.max_gap_ms);
  if (!uniform) {
    return uniform.error();
  }
  auto smooth = Lowpass(*uniform, cfg.lowpass_window_s);
  if (!smooth) {
    return smooth.error();
  }
  return Normalize(*smooth, cfg.normalize_window_ms);
}

Result<UniformSignal> Condition(const Trace &trace, Aggregation method,
                                const ConditionConfig &cfg) {
  if (trace.samples.empty()) {
    return MakeError(ErrorCode::kTooFewPoints, "trace has no samples");
  }
  auto series = Aggregate(trace, method);
  if (!series) {
    return series.error();
  }
  return ConditionSeries(*series, cfg);
}

std::vector<Series> SplitAtGaps(const Series &series, double max_gap_ms) {
  std::vector<Series> parts;
  const auto max_gap_us = static_cast<std::int64_t>(std::llround(max_gap_ms * 1000.0));
  Series cur;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!cur.t_us.empty() && series.t_us[i] - cur.t_us.back() > max_gap_us) {
      parts.push_back(std::move(cur));
      cur = Series{};
    }
    cur.t_us.push_back(series.t_us[i]);
    cur.values.push_back(series.values[i]);
  }
  if (!cur.t_us.empty()) {
    parts.push_back(std::move(cur));
  }
  return parts;
}

} // namespace wigest
