#include "wigest/eval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include <json.hpp>

namespace wigest {

namespace {

constexpr std::array<GateMode, 3> kModes{GateMode::kNone, GateMode::kSingleLever,
                                         GateMode::kDoubleLever};

std::string Num(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

int PredictedIndex(Gesture g) { return static_cast<int>(g); }

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn> void ParallelFor(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        fn(i);
      }
    });
  }
}

std::vector<Label> GestureLabels(const GestureScript &script) {
  std::vector<Label> out;
  for (const ScriptEntry &e : script) {
    if (IsGesture(e.kind)) {
      out.push_back({e.start_s, e.kind, e.duration_s});
    }
  }
  return out;
}

} // namespace

int TrueClassIndex(MotionKind kind) {
  switch (kind) {
  case MotionKind::kPush: return 0;
  case MotionKind::kPull: return 1;
  case MotionKind::kPunch: return 2;
  case MotionKind::kLever: return 3;
  default: return -1;
  }
}

std::vector<int> MatchEvents(std::span<const Label> labels, std::span<const GestureEvent> events,
                             double min_overlap_frac) {
  std::vector<int> match(labels.size(), -1);
  std::vector<bool> used(events.size(), false);
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return labels[a].start_s < labels[b].start_s;
  });
  for (std::size_t li : order) {
    const Label &l = labels[li];
    if (TrueClassIndex(l.kind) < 0) {
      continue;
    }
    const double lo = l.start_s * 1000.0;
    const double hi = (l.start_s + l.duration_s) * 1000.0;
    const double need = min_overlap_frac * (hi - lo);
    double best = -1.0;
    int best_idx = -1;
    for (std::size_t ei = 0; ei < events.size(); ++ei) {
      if (used[ei]) {
        continue;
      }
      const double ov = std::min(hi, events[ei].end_ms) - std::max(lo, events[ei].start_ms);
      if (ov >= need && ov > best) {
        best = ov;
        best_idx = static_cast<int>(ei);
      }
    }
    if (best_idx >= 0) {
      used[static_cast<std::size_t>(best_idx)] = true;
      match[li] = best_idx;
    }
  }
  return match;
}

void Tally(EvalReport &report, std::span<const Label> labels,
           std::span<const GestureEvent> events, double min_overlap_frac) {
  const std::vector<int> match = MatchEvents(labels, events, min_overlap_frac);
  std::vector<bool> used(events.size(), false);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int col = TrueClassIndex(labels[i].kind);
    if (col < 0) {
      continue;
    }
    int row = PredictedIndex(Gesture::kUnknown);
    if (match[i] >= 0) {
      used[static_cast<std::size_t>(match[i])] = true;
      row = PredictedIndex(events[static_cast<std::size_t>(match[i])].gesture);
    }
    ++report.confusion[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    ++report.n_trials;
  }
  report.false_positives += static_cast<int>(std::count(used.begin(), used.end(), false));
}

void Finalize(EvalReport &report) {
  int correct = 0;
  for (std::size_t c = 0; c < kTrueClasses; ++c) {
    int total = 0;
    for (std::size_t r = 0; r < kPredictedClasses; ++r) {
      total += report.confusion[r][c];
    }
    correct += report.confusion[c][c];
    report.per_gesture_accuracy[c] =
        total > 0 ? 100.0 * report.confusion[c][c] / static_cast<double>(total) : 0.0;
  }
  report.overall_accuracy =
      report.n_trials > 0 ? 100.0 * correct / static_cast<double>(report.n_trials) : 0.0;
}

Result<EvalReport> Evaluate(std::span<const Label> labels, std::span<const GestureEvent> events,
                            double min_overlap_frac) {
  if (std::none_of(labels.begin(), labels.end(),
                   [](const Label &l) { return TrueClassIndex(l.kind) >= 0; })) {
    return MakeError(ErrorCode::kMissingLabels, "no gesture labels to evaluate against");
  }
  EvalReport report;
  Tally(report, labels, events, min_overlap_frac);
  Finalize(report);
  return report;
}

std::string ReportToJson(const EvalReport &report) {
  using nlohmann::ordered_json;
  ordered_json pred = ordered_json::array();
  for (std::size_t r = 0; r < kPredictedClasses; ++r) {
    pred.push_back(GestureName(static_cast<Gesture>(r)));
  }
  ordered_json truth = ordered_json::array();
  ordered_json acc = ordered_json::object();
  for (std::size_t c = 0; c < kTrueClasses; ++c) {
    truth.push_back(GestureName(static_cast<Gesture>(c)));
    acc[GestureName(static_cast<Gesture>(c))] = report.per_gesture_accuracy[c];
  }
  ordered_json counts = ordered_json::array();
  for (const auto &row : report.confusion) {
    counts.push_back(row);
  }
  ordered_json doc = {
      {"n_trials", report.n_trials},
      {"overall_accuracy", report.overall_accuracy},
      {"per_gesture_accuracy", acc},
      {"confusion", {{"predicted", pred}, {"true", truth}, {"counts", counts}}},
      {"false_positives", report.false_positives},
  };
  return doc.dump(2) + "\n";
}

std::string ReportToCsv(const EvalReport &report) {
  std::string out = "predicted";
  for (std::size_t c = 0; c < kTrueClasses; ++c) {
    out += ',';
    out += GestureName(static_cast<Gesture>(c));
  }
  out += '\n';
  for (std::size_t r = 0; r < kPredictedClasses; ++r) {
    out += GestureName(static_cast<Gesture>(r));
    for (int v : report.confusion[r]) {
      out += ',' + std::to_string(v);
    }
    out += '\n';
  }
  out += "accuracy_pct";
  for (double a : report.per_gesture_accuracy) {
    out += ',' + Num(a);
  }
  out += '\n';
  return out;
}

Result<EvalReport> EvaluateCorpus(const Config &cfg, int n_per_gesture, std::uint64_t seed,
                                  Aggregation method, unsigned threads) {
  if (n_per_gesture <= 0) {
    return MakeError(ErrorCode::kInvalidArgument, "corpus size must be > 0");
  }
  if (auto st = Validate(cfg.sim); !st) {
    return st.error();
  }
  const std::vector<CorpusItem> plan = CorpusPlan(cfg.sim, cfg.geometry, n_per_gesture, seed);
  std::vector<Result<std::vector<GestureEvent>>> results(
      plan.size(), MakeError(ErrorCode::kInvalidArgument, "not run"));
  ParallelFor(plan.size(), threads, [&](std::size_t i) {
    auto series = SynthSeries(plan[i].cfg, plan[i].script, method, cfg.geometry.shape);
    if (!series) {
      results[i] = series.error();
      return;
    }
    results[i] = ClassifySeries(*series, cfg.pipeline);
  });
  EvalReport report;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (!results[i]) {
      return results[i].error();
    }
    const std::vector<Label> labels = GestureLabels(plan[i].script);
    Tally(report, labels, *results[i]);
  }
  Finalize(report);
  return report;
}

Result<FpEval> FpEvaluate(std::span<const GestureEvent> events, double trace_minutes,
                          const GateConfig &gate) {
  if (!(trace_minutes > 0.0)) {
    return MakeError(ErrorCode::kZeroDuration, "trace duration must be > 0");
  }
  FpEval fp;
  fp.minutes = trace_minutes;
  const auto rows = static_cast<std::size_t>(std::ceil(trace_minutes - 1e-9));
  fp.timeline.assign(rows, {0, 0, 0});
  for (std::size_t m = 0; m < kModes.size(); ++m) {
    GateConfig g = gate;
    g.mode = kModes[m];
    auto emitted = ApplyGate(events, g);
    if (!emitted) {
      return emitted.error();
    }
    std::vector<GestureEvent> acted;
    for (GestureEvent &e : *emitted) {
      if (e.gesture != Gesture::kUnknown) {
        acted.push_back(std::move(e));
      }
    }
    auto rate = FpRate(acted, trace_minutes);
    if (!rate) {
      return rate.error();
    }
    fp.rate_per_min[m] = *rate;
    fp.count[m] = static_cast<int>(acted.size());
    for (const GestureEvent &e : acted) {
      const auto minute = static_cast<std::size_t>(std::max(0.0, e.start_ms / 60000.0));
      for (std::size_t r = minute; r < rows; ++r) {
        ++fp.timeline[r][m];
      }
    }
  }
  return fp;
}

std::string FpToJson(const FpEval &fp) {
  nlohmann::ordered_json rates = nlohmann::ordered_json::object();
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (std::size_t m = 0; m < kModes.size(); ++m) {
    rates[GateModeName(kModes[m])] = fp.rate_per_min[m];
    counts[GateModeName(kModes[m])] = fp.count[m];
  }
  nlohmann::ordered_json doc = {
      {"minutes", fp.minutes}, {"events_per_min", rates}, {"events", counts}};
  return doc.dump(2) + "\n";
}

std::string TimelineToCsv(const FpEval &fp) {
  std::string out = "minute,none,single,double\n";
  for (std::size_t r = 0; r < fp.timeline.size(); ++r) {
    out += std::to_string(r + 1);
    for (int v : fp.timeline[r]) {
      out += ',' + std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

Result<std::vector<RateSweepRow>> RateSweep(const Config &cfg, std::span<const double> rates_pps,
                                            int n_per_gesture, std::uint64_t seed, int n_seeds,
                                            Aggregation method, unsigned threads) {
  if (rates_pps.empty() || n_seeds <= 0) {
    return MakeError(ErrorCode::kInvalidArgument, "rate sweep needs rates and n_seeds > 0");
  }
  std::vector<RateSweepRow> rows;
  for (double rate : rates_pps) {
    if (!(rate > 0.0)) {
      return MakeError(ErrorCode::kInvalidArgument, "packet rates must be > 0");
    }
    Config c = cfg;
    c.sim.packet_rate_pps = rate;
    double sum = 0.0;
    for (int s = 0; s < n_seeds; ++s) {
      auto report = EvaluateCorpus(c, n_per_gesture, seed + static_cast<std::uint64_t>(s), method,
                                   threads);
      if (!report) {
        return report.error();
      }
      sum += report->overall_accuracy;
    }
    rows.push_back({rate, sum / n_seeds});
  }
  return rows;
}

std::string RateSweepToCsv(std::span<const RateSweepRow> rows) {
  std::string out = "rate_pps,accuracy_pct\n";
  for (const RateSweepRow &r : rows) {
    out += Num(r.rate_pps) + ',' + Num(r.accuracy_pct) + '\n';
  }
  return out;
}

} // namespace wigest
