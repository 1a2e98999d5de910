#include "wigest/peaks.hpp"

#include <algorithm>
#include <cmath>

namespace wigest {

namespace {

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

void SplitLongGroups(std::vector<Peak> group, double max_span_ms, std::vector<std::vector<Peak>> &out) {
  if (group.size() < 2 || group.back().t_ms - group.front().t_ms <= max_span_ms) {
    out.push_back(std::move(group));
    return;
  }
  std::size_t cut = 0;
  double widest = -1.0;
  for (std::size_t i = 0; i + 1 < group.size(); ++i) {
    const double gap = group[i + 1].t_ms - group[i].t_ms;
    if (gap > widest) {
      widest = gap;
      cut = i;
    }
  }
  std::vector<Peak> tail(group.begin() + static_cast<std::ptrdiff_t>(cut) + 1, group.end());
  group.resize(cut + 1);
  SplitLongGroups(std::move(group), max_span_ms, out);
  SplitLongGroups(std::move(tail), max_span_ms, out);
}

} // namespace

Result<NoiseStats> ComputeNoiseStats(const UniformSignal &sig, std::span<const Span> exclusion,
                                     double min_quiet_s) {
  std::vector<bool> keep(sig.size(), true);
  const double t0_ms = sig.TimeMs(0);
  const double per_ms = sig.rate_hz / 1000.0;
  for (const Span &s : exclusion) {
    const double lo = std::max(0.0, std::ceil((s.start_ms - t0_ms) * per_ms));
    const double hi = std::floor((s.end_ms - t0_ms) * per_ms);
    for (double x = lo; x <= hi && x < static_cast<double>(sig.size()); x += 1.0) {
      keep[static_cast<std::size_t>(x)] = false;
    }
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (keep[i]) {
      sum += std::abs(sig.values[i]);
      ++count;
    }
  }
  if (static_cast<double>(count) < min_quiet_s * sig.rate_hz || count == 0) {
    return MakeError(ErrorCode::kInsufficientQuietSignal,
                     "need " + std::to_string(min_quiet_s) + " s of quiet signal, have " +
                         std::to_string(static_cast<double>(count) / sig.rate_hz) + " s");
  }
  const double mean = sum / static_cast<double>(count);
  double var = 0.0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (keep[i]) {
      const double d = std::abs(sig.values[i]) - mean;
      var += d * d;
    }
  }
  return NoiseStats{mean, std::sqrt(var / static_cast<double>(count))};
}

std::vector<Peak> DetectPeaks(const UniformSignal &sig, const NoiseStats &stats,
                              const PeakConfig &cfg) {
  const std::vector<double> &v = sig.values;
  const std::size_t n = v.size();
  const double threshold = cfg.threshold_factor * stats.mean_abs;
  std::vector<Peak> out;
  // Excursion index of the last accepted peak; bumps at every sign change.
  std::size_t lobe = 0;
  std::size_t last_lobe = static_cast<std::size_t>(-1);
  std::size_t lobe_at = 0;
  auto advance_lobe = [&](std::size_t upto) {
    for (; lobe_at < upto; ++lobe_at) {
      if (Sign(v[lobe_at + 1]) != Sign(v[lobe_at])) {
        ++lobe;
      }
    }
  };
  std::size_t i = 1;
  while (i + 1 < n) {
    const double m = std::abs(v[i]);
    if (!(m > std::abs(v[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && std::abs(v[j + 1]) == m) {
      ++j;
    }
    if (j + 1 < n && std::abs(v[j + 1]) < m) {
      const std::size_t c = (i + j) / 2;
      if (m > threshold) {
        advance_lobe(c);
        Peak p{sig.TimeMs(c), m, v[c] >= 0.0 ? Polarity::kCrest : Polarity::kTrough};
        if (cfg.merge_lobes && !out.empty() && lobe == last_lobe) {
          if (p.height > out.back().height) {
            out.back() = p;
          }
        } else {
          out.push_back(p);
          last_lobe = lobe;
        }
      }
    }
    i = j + 1;
  }
  return out;
}

std::vector<PeakGroup> GroupPeaks(std::span<const Peak> peaks, const NoiseStats &stats,
                                  const PeakConfig &cfg) {
  std::vector<std::vector<Peak>> runs;
  std::vector<Peak> cur;
  for (const Peak &p : peaks) {
    if (!cur.empty() && p.t_ms - cur.back().t_ms >= cfg.group_gap_ms) {
      runs.push_back(std::move(cur));
      cur.clear();
    }
    cur.push_back(p);
  }
  if (!cur.empty()) {
    runs.push_back(std::move(cur));
  }
  std::vector<std::vector<Peak>> pieces;
  for (auto &r : runs) {
    SplitLongGroups(std::move(r), cfg.max_span_ms, pieces);
  }
  const double large = stats.mean_abs + stats.std_abs;
  std::vector<PeakGroup> out;
  for (auto &piece : pieces) {
    if (piece.size() < cfg.min_group_size) {
      continue;
    }
    const bool has_large = std::any_of(piece.begin(), piece.end(),
                                       [large](const Peak &p) { return p.height >= large; });
    if (!has_large) {
      continue;
    }
    PeakGroup g;
    g.span = {piece.front().t_ms, piece.back().t_ms};
    g.peaks = std::move(piece);
    out.push_back(std::move(g));
  }
  return out;
}

} // namespace wigest
