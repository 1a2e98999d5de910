#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wigest/result.hpp"
#include "wigest/trace.hpp"

namespace wigest {

enum class MotionKind { kPush, kPull, kPunch, kLever, kAmbientWalk, kIdle };

const char *MotionKindName(MotionKind kind);
Result<MotionKind> ParseMotionKind(std::string_view name);
bool IsGesture(MotionKind kind);

struct BurstGaps {
  double gap_ms{0.0};
  double prob_per_s{0.0};
};

struct SimConfig {
  double carrier_hz{2.437e9};
  int subcarrier_count{30};
  double subcarrier_spacing_hz{20e6 / 30.0};
  double packet_rate_pps{1000.0};
  std::optional<BurstGaps> burst_gaps{};
  double direct_amp{1.0};
  // Arm reflector strength; reflection amplitude is reflect_gain / d^2.
  double reflect_gain{0.004};
  // A walking body reflects more than an arm.
  double ambient_reflect_gain{0.04};
  // Per-subcarrier amplitude noise std.
  double noise_sigma{0.0};
  double glitch_rate_per_s{0.0};
  double glitch_magnitude{0.0};
  std::uint64_t seed{0};
  // Idle time appended after the last script entry.
  double tail_s{3.0};
  bool record_phase{true};
};

Status Validate(const SimConfig &cfg);

// Shape parameters of the scripted arm paths.
struct MotionShape {
  // Arm speed at the start of an approach, as a fraction of full speed.
  double onset_speed_frac{0.6};
  // Lever retract depth as a fraction of (d_far - d_near).
  double lever_retract_frac{0.4};
  // Ambient walk: radial speed correlation time and stationary speed spread.
  double walk_tau_s{1.0};
  double walk_speed_std_mps{0.5};
  // Mean lengths of walking bouts and of the still pauses between them; a pause
  // length of 0 means walking without pauses.
  double walk_bout_s{4.0};
  double walk_pause_s{30.0};
};

// Ranges used when a corpus draws random gesture geometry.
struct GeometryConfig {
  double d_near_min_m{0.10};
  double d_near_max_m{0.15};
  double d_far_min_m{0.45};
  double d_far_max_m{0.60};
  // Full arm speed expressed as amplitude-fringe cycles per second at the carrier.
  double peak_fringe_hz{5.0};
  double pad_s{3.0};
  double ambient_near_m{1.5};
  double ambient_far_m{3.0};
  MotionShape shape{};
};

struct ScriptEntry {
  double start_s{0.0};
  MotionKind kind{MotionKind::kIdle};
  double duration_s{0.0};
  double d_near_m{0.2};
  double d_far_m{0.6};
};

using GestureScript = std::vector<ScriptEntry>;

struct Label {
  double start_s{0.0};
  MotionKind kind{MotionKind::kIdle};
  double duration_s{0.0};

  bool operator==(const Label &) const = default;
};

struct ArmTrajectory {
  double samples_per_s{1000.0};
  std::vector<double> d_m{};
};

// Closed-form arm distance at normalized time s in [0, 1] for the four gestures
// and Idle.
double ArmPosition(MotionKind kind, double s, double d_near_m, double d_far_m,
                   const MotionShape &shape = {});

// Duration of a gesture at the given full arm speed.
double NominalDuration(MotionKind kind, double d_near_m, double d_far_m, double speed_mps,
                       const MotionShape &shape = {});

double ArmSpeed(const GeometryConfig &geom, double carrier_hz);

Result<ArmTrajectory> Trajectory(MotionKind kind, double duration_s, double d_near_m,
                                 double d_far_m, double samples_per_s,
                                 const MotionShape &shape = {}, std::uint64_t seed = 0);

// Half-wavelength crossings of the round-trip path 2d, summed over monotone
// segments of d.
int ExpectedFringeCount(std::span<const double> d_m, double wavelength_m);

struct SynthOutput {
  Trace trace{};
  std::vector<Label> labels{};
};

Result<SynthOutput> SynthTrace(const SimConfig &cfg, const GestureScript &script,
                               const MotionShape &shape = {});

// Same packets as SynthTrace, aggregated on the fly without storing per-subcarrier
// data. Aggregate(SynthTrace(...).trace, m) equals this output exactly.
Result<Series> SynthSeries(const SimConfig &cfg, const GestureScript &script, Aggregation method,
                           const MotionShape &shape = {});

// One scripted gesture with pad_s of idle before and after, geometry drawn from geom.
GestureScript SingleGestureScript(MotionKind kind, const GeometryConfig &geom, double carrier_hz,
                                  std::uint64_t seed);

// n_per_gesture traces per gesture kind, each holding one gesture.
struct CorpusItem {
  SimConfig cfg{};
  GestureScript script{};
};
std::vector<CorpusItem> CorpusPlan(const SimConfig &base, const GeometryConfig &geom,
                                   int n_per_gesture, std::uint64_t seed);
Result<std::vector<SynthOutput>> SynthCorpus(const SimConfig &base, const GeometryConfig &geom,
                                             int n_per_gesture, std::uint64_t seed);

// All four gestures cycled n times in one script with pad_s gaps.
GestureScript SessionScript(const GeometryConfig &geom, double carrier_hz, int n_per_gesture,
                            std::uint64_t seed);

GestureScript AmbientScript(const GeometryConfig &geom, double minutes);

std::string LabelsToJson(std::span<const Label> labels);
Result<std::vector<Label>> LabelsFromJson(std::string_view text);

} // namespace wigest
