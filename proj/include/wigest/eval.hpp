#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wigest/classify.hpp"
#include "wigest/config.hpp"
#include "wigest/gate.hpp"
#include "wigest/result.hpp"
#include "wigest/synth.hpp"

namespace wigest {

inline constexpr std::size_t kTrueClasses = 4;
inline constexpr std::size_t kPredictedClasses = 5;

struct EvalReport {
  // confusion[predicted][true]; predicted row 4 is Unknown, which also counts misses.
  std::array<std::array<int, kTrueClasses>, kPredictedClasses> confusion{};
  std::array<double, kTrueClasses> per_gesture_accuracy{};
  double overall_accuracy{0.0};
  int n_trials{0};
  // Predicted events that matched no scripted gesture.
  int false_positives{0};
};

// Index of the true-class column for a gesture label; -1 for Idle and AmbientWalk.
int TrueClassIndex(MotionKind kind);

// For each gesture label, the event with the largest overlap of at least
// min_overlap_frac of the scripted duration; each event is used at most once.
// Returns the matched event index per label, -1 for a miss or non-gesture label.
std::vector<int> MatchEvents(std::span<const Label> labels, std::span<const GestureEvent> events,
                             double min_overlap_frac = 0.5);

// Adds one trace's labels and predictions to the counts; call Finalize once done.
void Tally(EvalReport &report, std::span<const Label> labels,
           std::span<const GestureEvent> events, double min_overlap_frac = 0.5);
void Finalize(EvalReport &report);

Result<EvalReport> Evaluate(std::span<const Label> labels, std::span<const GestureEvent> events,
                            double min_overlap_frac = 0.5);

std::string ReportToJson(const EvalReport &report);
std::string ReportToCsv(const EvalReport &report);

// Synthesizes n_per_gesture single-gesture traces per kind with cfg.sim as the base
// and evaluates the ungated pipeline on them. Traces run on worker threads; the
// result does not depend on the thread count.
Result<EvalReport> EvaluateCorpus(const Config &cfg, int n_per_gesture, std::uint64_t seed,
                                  Aggregation method = Aggregation::Mean(),
                                  unsigned threads = 0);

struct FpEval {
  double minutes{0.0};
  // Indexed by GateMode: none, single, double.
  std::array<double, 3> rate_per_min{};
  std::array<int, 3> count{};
  // Cumulative emitted events at the end of each whole minute.
  std::vector<std::array<int, 3>> timeline{};
};

// Gates one classified event stream under each mode. Unknown events are never
// counted since nothing acts on them.
Result<FpEval> FpEvaluate(std::span<const GestureEvent> events, double trace_minutes,
                          const GateConfig &gate);

std::string FpToJson(const FpEval &fp);
std::string TimelineToCsv(const FpEval &fp);

struct RateSweepRow {
  double rate_pps{0.0};
  double accuracy_pct{0.0};
};

// Accuracy at each packet rate, averaged over n_seeds corpora seeded seed, seed+1, ...
Result<std::vector<RateSweepRow>> RateSweep(const Config &cfg, std::span<const double> rates_pps,
                                            int n_per_gesture, std::uint64_t seed, int n_seeds = 1,
                                            Aggregation method = Aggregation::Mean(),
                                            unsigned threads = 0);

std::string RateSweepToCsv(std::span<const RateSweepRow> rows);

} // namespace wigest
