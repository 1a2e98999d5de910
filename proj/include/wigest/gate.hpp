#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wigest/classify.hpp"
#include "wigest/result.hpp"

namespace wigest {

enum class GateMode { kNone, kSingleLever, kDoubleLever };

const char *GateModeName(GateMode mode);
Result<GateMode> ParseGateMode(std::string_view name);

struct GateConfig {
  GateMode mode{GateMode::kNone};
  double double_window_s{4.0};
  double idle_timeout_s{30.0};
  double lever_period_min_ms{50.0};
  double lever_period_max_ms{500.0};
  double lever_period_cv_max{0.4};
};

Status Validate(const GateConfig &cfg);

struct GateState {
  enum class Phase { kLocked, kHalfArmed, kArmed };
  Phase phase{Phase::kLocked};
  // HalfArmed: end of the first lever. Armed: end of the last accepted event.
  double since_ms{0.0};
  // Start of the last event fed in, for ordering checks.
  std::optional<double> last_event_ms{};
};

bool IsValidLever(const GestureEvent &e, const GateConfig &cfg);

struct StepResult {
  GateState state{};
  std::optional<GestureEvent> emitted{};
};

Result<StepResult> Step(const GateState &state, const GestureEvent &e, const GateConfig &cfg);

// Runs a whole event stream through a fresh gate.
Result<std::vector<GestureEvent>> ApplyGate(std::span<const GestureEvent> events,
                                            const GateConfig &cfg);

// Events per minute.
Result<double> FpRate(std::span<const GestureEvent> events, double trace_minutes);

} // namespace wigest
