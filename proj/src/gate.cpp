#include "wigest/gate.hpp"

#include <cmath>
#include <string>

namespace wigest {

const char *GateModeName(GateMode mode) {
  switch (mode) {
  case GateMode::kNone: return "none";
  case GateMode::kSingleLever: return "single";
  case GateMode::kDoubleLever: return "double";
  }
  return "none";
}

Result<GateMode> ParseGateMode(std::string_view name) {
  for (GateMode m : {GateMode::kNone, GateMode::kSingleLever, GateMode::kDoubleLever}) {
    if (name == GateModeName(m)) {
      return m;
    }
  }
  return MakeError(ErrorCode::kInvalidArgument,
                   "gate must be none, single or double, got '" + std::string(name) + "'");
}

Status Validate(const GateConfig &cfg) {
  if (!(cfg.lever_period_min_ms < cfg.lever_period_max_ms) || !(cfg.lever_period_cv_max > 0.0)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "lever period range must satisfy min < max and cv bound > 0");
  }
  if (!(cfg.double_window_s > 0.0) || !(cfg.idle_timeout_s > 0.0)) {
    return MakeError(ErrorCode::kInvalidArgument, "gate windows must be > 0");
  }
  return Ok{};
}

bool IsValidLever(const GestureEvent &e, const GateConfig &cfg) {
  if (e.gesture != Gesture::kLever || e.peak_times_ms.size() < 2) {
    return false;
  }
  const std::size_t n = e.peak_times_ms.size() - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += e.peak_times_ms[i + 1] - e.peak_times_ms[i];
  }
  const double mean = sum / static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = e.peak_times_ms[i + 1] - e.peak_times_ms[i] - mean;
    var += d * d;
  }
  const double cv = mean > 0.0 ? std::sqrt(var / static_cast<double>(n)) / mean : 0.0;
  return mean >= cfg.lever_period_min_ms && mean <= cfg.lever_period_max_ms &&
         cv <= cfg.lever_period_cv_max;
}

Result<StepResult> Step(const GateState &state, const GestureEvent &e, const GateConfig &cfg) {
  if (state.last_event_ms && e.start_ms < *state.last_event_ms) {
    return MakeError(ErrorCode::kOutOfOrderEvent, "events must be fed in time order");
  }
  StepResult out;
  out.state = state;
  out.state.last_event_ms = e.start_ms;
  if (cfg.mode == GateMode::kNone) {
    out.emitted = e;
    return out;
  }
  using Phase = GateState::Phase;
  GateState &s = out.state;
  if (s.phase == Phase::kArmed && e.start_ms - s.since_ms > cfg.idle_timeout_s * 1000.0) {
    s.phase = Phase::kLocked;
  }
  // A lever that misses the double window only cancels the attempt.
  if (s.phase == Phase::kHalfArmed && e.start_ms - s.since_ms > cfg.double_window_s * 1000.0) {
    s.phase = Phase::kLocked;
    return out;
  }
  switch (s.phase) {
  case Phase::kLocked:
    if (IsValidLever(e, cfg)) {
      s.phase = cfg.mode == GateMode::kSingleLever ? Phase::kArmed : Phase::kHalfArmed;
      s.since_ms = e.end_ms;
    }
    break;
  case Phase::kHalfArmed:
    if (IsValidLever(e, cfg)) {
      s.phase = Phase::kArmed;
      s.since_ms = e.end_ms;
    }
    break;
  case Phase::kArmed:
    out.emitted = e;
    s.since_ms = e.end_ms;
    break;
  }
  return out;
}

Result<std::vector<GestureEvent>> ApplyGate(std::span<const GestureEvent> events,
                                            const GateConfig &cfg) {
  if (auto st = Validate(cfg); !st) {
    return st.error();
  }
  GateState state;
  std::vector<GestureEvent> out;
  for (const GestureEvent &e : events) {
    auto r = Step(state, e, cfg);
    if (!r) {
      return r.error();
    }
    state = r->state;
    if (r->emitted) {
      out.push_back(std::move(*r->emitted));
    }
  }
  return out;
}

Result<double> FpRate(std::span<const GestureEvent> events, double trace_minutes) {
  if (!(trace_minutes > 0.0)) {
    return MakeError(ErrorCode::kZeroDuration, "trace duration must be > 0");
  }
  return static_cast<double>(events.size()) / trace_minutes;
}

} // namespace wigest
