#include "wigest/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <json.hpp>

namespace wigest {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWalkStepS = 0.01;

// Position fraction for a speed rising linearly from `a` to full over s in [0, 1].
double RampIn(double s, double a) {
  s = std::clamp(s, 0.0, 1.0);
  return (a * s + (1.0 - a) * s * s / 2.0) / ((1.0 + a) / 2.0);
}

// Mirror image of RampIn: full speed falling to `a`.
double RampOut(double s, double a) { return 1.0 - RampIn(1.0 - std::clamp(s, 0.0, 1.0), a); }

// RampIn over the first half and RampOut over the second: slow, fast, slow.
double RampInOut(double s, double a) {
  s = std::clamp(s, 0.0, 1.0);
  return s < 0.5 ? RampIn(2.0 * s, a) / 2.0 : 0.5 + RampOut(2.0 * s - 1.0, a) / 2.0;
}

double Lerp(double from, double to, double f) { return from + (to - from) * f; }

struct LeverSegments {
  double b1;
  double b2;
  double d_mid;
};

LeverSegments LeverSplit(double d_near, double d_far, const MotionShape &shape) {
  const double travel = d_far - d_near;
  const double retract = shape.lever_retract_frac * travel;
  const double stretch = 2.0 / (1.0 + shape.onset_speed_frac);
  const double w1 = travel * stretch;
  const double w2 = retract;
  const double w3 = retract * stretch;
  const double total = w1 + w2 + w3;
  return {w1 / total, (w1 + w2) / total, d_near + retract};
}

double PunchSplit(const MotionShape &shape) {
  const double stretch = 2.0 / (1.0 + shape.onset_speed_frac);
  return stretch / (stretch + 1.0);
}

// Radial walking speed relaxes over walk_tau_s towards zero under a random drive
// whose stationary spread is walk_speed_std_mps; the walls at lo and hi reflect.
// Bouts of walking and standing still alternate with exponential lengths.
std::vector<double> WalkPath(double duration_s, double lo, double hi, const MotionShape &shape,
                             std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x77616c6bU};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(lo, hi);
  const auto n = static_cast<std::size_t>(std::ceil(duration_s / kWalkStepS)) + 1;
  std::vector<double> d(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  double pos = uni(rng);
  double vel = 0.0;
  bool walking = true;
  const double tau = shape.walk_tau_s;
  const double drive = shape.walk_speed_std_mps * std::sqrt(2.0 / tau);
  const double p_stop = shape.walk_pause_s > 0.0 ? kWalkStepS / shape.walk_bout_s : 0.0;
  const double p_start = shape.walk_pause_s > 0.0 ? kWalkStepS / shape.walk_pause_s : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = pos;
    const double u = coin(rng);
    walking = walking ? u >= p_stop : u < p_start;
    if (!walking) {
      vel = 0.0;
      continue;
    }
    vel += -vel * kWalkStepS / tau + drive * std::sqrt(kWalkStepS) * gauss(rng);
    pos += vel * kWalkStepS;
    if (pos < lo) {
      pos = 2.0 * lo - pos;
      vel = -vel;
    } else if (pos > hi) {
      pos = 2.0 * hi - pos;
      vel = -vel;
    }
  }
  return d;
}

// Evaluates the scripted reflector distance and gain at any time.
class Scene {
public:
  Scene(const SimConfig &cfg, const GestureScript &script, const MotionShape &shape)
      : cfg_(cfg), script_(script), shape_(shape) {
    std::sort(script_.begin(), script_.end(),
              [](const ScriptEntry &a, const ScriptEntry &b) { return a.start_s < b.start_s; });
    walks_.resize(script_.size());
    for (std::size_t i = 0; i < script_.size(); ++i) {
      const ScriptEntry &e = script_[i];
      if (e.kind == MotionKind::kAmbientWalk) {
        walks_[i] = WalkPath(e.duration_s, e.d_near_m, e.d_far_m, shape_, cfg.seed * 1000003ULL + i);
      }
    }
  }

  [[nodiscard]] bool empty() const { return script_.empty(); }

  [[nodiscard]] double EndS() const {
    double end = 0.0;
    for (const ScriptEntry &e : script_) {
      end = std::max(end, e.start_s + e.duration_s);
    }
    return end + cfg_.tail_s;
  }

  // Returns {distance, gain}.
  [[nodiscard]] std::pair<double, double> At(double t) {
    while (cursor_ + 1 < script_.size() && script_[cursor_ + 1].start_s <= t) {
      ++cursor_;
    }
    const ScriptEntry &e = script_[cursor_];
    const double gain = Gain(e.kind);
    if (t < e.start_s) {
      return {Position(cursor_, 0.0), gain};
    }
    if (t > e.start_s + e.duration_s) {
      return {Position(cursor_, e.duration_s), gain};
    }
    return {Position(cursor_, t - e.start_s), gain};
  }

private:
  [[nodiscard]] double Gain(MotionKind kind) const {
    return kind == MotionKind::kAmbientWalk ? cfg_.ambient_reflect_gain : cfg_.reflect_gain;
  }

  [[nodiscard]] double Position(std::size_t idx, double local_t) const {
    const ScriptEntry &e = script_[idx];
    if (e.kind == MotionKind::kAmbientWalk) {
      const std::vector<double> &w = walks_[idx];
      const double x = local_t / kWalkStepS;
      const auto k = std::min(static_cast<std::size_t>(x), w.size() - 2);
      return Lerp(w[k], w[k + 1], std::min(x - static_cast<double>(k), 1.0));
    }
    const double s = e.duration_s > 0.0 ? local_t / e.duration_s : 1.0;
    return ArmPosition(e.kind, s, e.d_near_m, e.d_far_m, shape_);
  }

  const SimConfig &cfg_;
  GestureScript script_;
  MotionShape shape_;
  std::vector<std::vector<double>> walks_;
  std::size_t cursor_{0};
};

Status ValidateScript(const GestureScript &script) {
  GestureScript sorted = script;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScriptEntry &a, const ScriptEntry &b) { return a.start_s < b.start_s; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const ScriptEntry &e = sorted[i];
    if (!(e.duration_s > 0.0) || e.start_s < 0.0) {
      return MakeError(ErrorCode::kBadRange, "script entries need start_s >= 0 and duration_s > 0");
    }
    if (!(e.d_near_m > 0.0) || !(e.d_near_m < e.d_far_m)) {
      return MakeError(ErrorCode::kBadRange, "script entries need 0 < d_near_m < d_far_m");
    }
    if (i > 0 && sorted[i - 1].start_s + sorted[i - 1].duration_s > e.start_s) {
      return MakeError(ErrorCode::kBadRange, "script entries overlap in time");
    }
  }
  return Ok{};
}

// Shared packet generator. Calls sink(t_us, amp, phase, rssi) per packet; phase is
// empty when cfg.record_phase is false or want_phase is false.
template <typename Sink>
Status Generate(const SimConfig &cfg, const GestureScript &script, const MotionShape &shape,
                bool want_phase, Sink &&sink) {
  if (auto st = Validate(cfg); !st) {
    return st;
  }
  if (auto st = ValidateScript(script); !st) {
    return st;
  }
  Scene scene(cfg, script, shape);
  const double end_s = scene.empty() ? cfg.tail_s : scene.EndS();

  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32), 0x70616b74U};
  std::mt19937_64 rng(seq);
  std::exponential_distribution<double> inter_arrival(cfg.packet_rate_pps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto n_sub = static_cast<std::size_t>(cfg.subcarrier_count);
  std::vector<double> phase_step(n_sub);
  for (std::size_t k = 0; k < n_sub; ++k) {
    const double lambda =
        kSpeedOfLight / (cfg.carrier_hz + static_cast<double>(k) * cfg.subcarrier_spacing_hz);
    // Phase advance per meter of arm distance (round trip 2d).
    phase_step[k] = kTwoPi * 2.0 / lambda;
  }
  const bool phase_on = want_phase && cfg.record_phase;
  const double glitch_p = cfg.glitch_rate_per_s / cfg.packet_rate_pps;

  std::vector<double> amp(n_sub);
  std::vector<double> phase(phase_on ? n_sub : 0);
  double t = 0.0;
  std::int64_t last_us = -1;
  while (t <= end_s) {
    auto t_us = static_cast<std::int64_t>(std::llround(t * 1e6));
    if (t_us <= last_us) {
      t_us = last_us + 1;
    }
    last_us = t_us;

    double d = 0.0;
    double gain = 0.0;
    if (!scene.empty()) {
      std::tie(d, gain) = scene.At(t);
    }
    const double refl = scene.empty() ? 0.0 : gain / (d * d);
    const double theta = kTwoPi * unit(rng);
    const bool glitch = unit(rng) < glitch_p;
    for (std::size_t k = 0; k < n_sub; ++k) {
      const double arg = phase_step[k] * d;
      const std::complex<double> h =
          cfg.direct_amp + refl * std::complex<double>(std::cos(arg), std::sin(arg));
      double a = std::abs(h) + cfg.noise_sigma * gauss(rng);
      if (glitch) {
        a += cfg.glitch_magnitude;
      }
      amp[k] = std::max(a, 0.0);
      if (phase_on) {
        double ph = std::fmod(std::fmod(arg, kTwoPi) + theta, kTwoPi);
        if (ph < 0.0) {
          ph += kTwoPi;
        }
        phase[k] = ph;
      }
    }
    const double mean = std::max(MeanAmplitude(amp), 1e-300);
    sink(t_us, amp, phase, 20.0 * std::log10(mean));

    double gap = inter_arrival(rng);
    if (cfg.burst_gaps && unit(rng) < cfg.burst_gaps->prob_per_s * gap) {
      gap += cfg.burst_gaps->gap_ms / 1000.0;
    }
    t += gap;
  }
  return Ok{};
}

std::vector<Label> LabelsOf(const GestureScript &script) {
  std::vector<Label> labels;
  labels.reserve(script.size());
  for (const ScriptEntry &e : script) {
    labels.push_back({e.start_s, e.kind, e.duration_s});
  }
  std::sort(labels.begin(), labels.end(),
            [](const Label &a, const Label &b) { return a.start_s < b.start_s; });
  return labels;
}

std::uint64_t Mix(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ScriptEntry DrawGesture(MotionKind kind, double start_s, const GeometryConfig &geom,
                        double speed, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> near(geom.d_near_min_m, geom.d_near_max_m);
  std::uniform_real_distribution<double> far(geom.d_far_min_m, geom.d_far_max_m);
  ScriptEntry e;
  e.kind = kind;
  e.start_s = start_s;
  e.d_near_m = near(rng);
  e.d_far_m = far(rng);
  e.duration_s = NominalDuration(kind, e.d_near_m, e.d_far_m, speed, geom.shape);
  return e;
}

constexpr MotionKind kGestures[] = {MotionKind::kPush, MotionKind::kPull, MotionKind::kPunch,
                                    MotionKind::kLever};

} // namespace

const char *MotionKindName(MotionKind kind) {
  switch (kind) {
  case MotionKind::kPush: return "push";
  case MotionKind::kPull: return "pull";
  case MotionKind::kPunch: return "punch";
  case MotionKind::kLever: return "lever";
  case MotionKind::kAmbientWalk: return "ambient_walk";
  case MotionKind::kIdle: return "idle";
  }
  return "idle";
}

Result<MotionKind> ParseMotionKind(std::string_view name) {
  for (MotionKind k : {MotionKind::kPush, MotionKind::kPull, MotionKind::kPunch,
                       MotionKind::kLever, MotionKind::kAmbientWalk, MotionKind::kIdle}) {
    if (name == MotionKindName(k)) {
      return k;
    }
  }
  return MakeError(ErrorCode::kBadKind, "unknown motion kind '" + std::string(name) + "'");
}

bool IsGesture(MotionKind kind) {
  return kind == MotionKind::kPush || kind == MotionKind::kPull || kind == MotionKind::kPunch ||
         kind == MotionKind::kLever;
}

Status Validate(const SimConfig &cfg) {
  if (!(cfg.packet_rate_pps > 0.0)) {
    return MakeError(ErrorCode::kInvalidArgument, "packet_rate_pps must be > 0");
  }
  if (cfg.noise_sigma < 0.0 || cfg.reflect_gain < 0.0 || cfg.ambient_reflect_gain < 0.0) {
    return MakeError(ErrorCode::kInvalidArgument, "noise_sigma and gains must be >= 0");
  }
  if (!(cfg.carrier_hz > 0.0) || cfg.subcarrier_count < 1) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "carrier_hz must be > 0 and subcarrier_count >= 1");
  }
  if (cfg.glitch_rate_per_s < 0.0 || cfg.tail_s < 0.0) {
    return MakeError(ErrorCode::kInvalidArgument, "glitch_rate_per_s and tail_s must be >= 0");
  }
  if (cfg.burst_gaps && (cfg.burst_gaps->gap_ms < 0.0 || cfg.burst_gaps->prob_per_s < 0.0)) {
    return MakeError(ErrorCode::kInvalidArgument, "burst gap settings must be >= 0");
  }
  return Ok{};
}

double ArmPosition(MotionKind kind, double s, double d_near, double d_far,
                   const MotionShape &shape) {
  const double a = shape.onset_speed_frac;
  s = std::clamp(s, 0.0, 1.0);
  switch (kind) {
  case MotionKind::kPush:
    return Lerp(d_far, d_near, RampIn(s, a));
  case MotionKind::kPull:
    return Lerp(d_near, d_far, RampOut(s, a));
  case MotionKind::kPunch: {
    const double split = PunchSplit(shape);
    if (s < split) {
      return Lerp(d_far, d_near, RampIn(s / split, a));
    }
    return Lerp(d_near, d_far, (s - split) / (1.0 - split));
  }
  case MotionKind::kLever: {
    const LeverSegments seg = LeverSplit(d_near, d_far, shape);
    if (s < seg.b1) {
      return Lerp(d_far, d_near, RampInOut(s / seg.b1, a));
    }
    if (s < seg.b2) {
      return Lerp(d_near, seg.d_mid, (s - seg.b1) / (seg.b2 - seg.b1));
    }
    return Lerp(seg.d_mid, d_near, RampOut((s - seg.b2) / (1.0 - seg.b2), a));
  }
  case MotionKind::kAmbientWalk:
  case MotionKind::kIdle:
    return d_far;
  }
  return d_far;
}

double NominalDuration(MotionKind kind, double d_near, double d_far, double speed,
                       const MotionShape &shape) {
  const double travel = d_far - d_near;
  const double stretch = 2.0 / (1.0 + shape.onset_speed_frac);
  const double retract = shape.lever_retract_frac * travel;
  switch (kind) {
  case MotionKind::kPush:
  case MotionKind::kPull:
    return travel * stretch / speed;
  case MotionKind::kPunch:
    return travel * (stretch + 1.0) / speed;
  case MotionKind::kLever:
    return (travel * stretch + retract + retract * stretch) / speed;
  case MotionKind::kAmbientWalk:
  case MotionKind::kIdle:
    return 0.0;
  }
  return 0.0;
}

double ArmSpeed(const GeometryConfig &geom, double carrier_hz) {
  // One amplitude cycle per half wavelength of arm travel.
  return geom.peak_fringe_hz * (kSpeedOfLight / carrier_hz) / 2.0;
}

Result<ArmTrajectory> Trajectory(MotionKind kind, double duration_s, double d_near,
                                 double d_far, double samples_per_s, const MotionShape &shape,
                                 std::uint64_t seed) {
  if (!(duration_s > 0.0) || !(samples_per_s > 0.0)) {
    return MakeError(ErrorCode::kBadRange, "duration_s and samples_per_s must be > 0");
  }
  if (!(d_near > 0.0) || !(d_near < d_far)) {
    return MakeError(ErrorCode::kBadRange, "need 0 < d_near_m < d_far_m");
  }
  const auto n = static_cast<std::size_t>(std::ceil(duration_s * samples_per_s)) + 1;
  ArmTrajectory traj;
  traj.samples_per_s = static_cast<double>(n - 1) / duration_s;
  traj.d_m.resize(n);
  if (kind == MotionKind::kAmbientWalk) {
    const std::vector<double> walk = WalkPath(duration_s, d_near, d_far, shape, seed);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (static_cast<double>(i) / traj.samples_per_s) / kWalkStepS;
      const auto k = std::min(static_cast<std::size_t>(x), walk.size() - 2);
      traj.d_m[i] = Lerp(walk[k], walk[k + 1], std::min(x - static_cast<double>(k), 1.0));
    }
    return traj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    traj.d_m[i] = ArmPosition(kind, s, d_near, d_far, shape);
  }
  return traj;
}

int ExpectedFringeCount(std::span<const double> d_m, double wavelength_m) {
  if (d_m.size() < 2) {
    return 0;
  }
  const double h = wavelength_m / 2.0;
  auto crossings = [h](double a, double b) {
    const double lo = 2.0 * std::min(a, b);
    const double hi = 2.0 * std::max(a, b);
    return static_cast<int>(std::floor(hi / h) - std::floor(lo / h));
  };
  int total = 0;
  std::size_t seg_start = 0;
  int dir = 0;
  for (std::size_t i = 1; i < d_m.size(); ++i) {
    const double step = d_m[i] - d_m[i - 1];
    const int s = step > 0.0 ? 1 : (step < 0.0 ? -1 : 0);
    if (s == 0) {
      continue;
    }
    if (dir != 0 && s != dir) {
      total += crossings(d_m[seg_start], d_m[i - 1]);
      seg_start = i - 1;
    }
    dir = s;
  }
  total += crossings(d_m[seg_start], d_m.back());
  return total;
}

Result<SynthOutput> SynthTrace(const SimConfig &cfg, const GestureScript &script,
                               const MotionShape &shape) {
  SynthOutput out;
  out.trace.meta.carrier_hz = cfg.carrier_hz;
  out.trace.meta.subcarrier_count = cfg.subcarrier_count;
  out.trace.meta.subcarrier_spacing_hz = cfg.subcarrier_spacing_hz;
  out.trace.meta.nominal_rate_pps = cfg.packet_rate_pps;
  out.trace.meta.label = "synth seed=" + std::to_string(cfg.seed);
  auto st = Generate(cfg, script, shape, true,
                     [&](std::int64_t t_us, const std::vector<double> &amp,
                         const std::vector<double> &phase, double rssi) {
                       out.trace.samples.push_back(RawSample{t_us, rssi, amp, phase});
                     });
  if (!st) {
    return st.error();
  }
  out.labels = LabelsOf(script);
  return out;
}

Result<Series> SynthSeries(const SimConfig &cfg, const GestureScript &script, Aggregation method,
                           const MotionShape &shape) {
  if (method.kind == Aggregation::Kind::kSingleSubcarrier &&
      (method.index < 0 || method.index >= cfg.subcarrier_count)) {
    return MakeError(ErrorCode::kInvalidArgument, "subcarrier index out of range");
  }
  Series out;
  auto st = Generate(cfg, script, shape, false,
                     [&](std::int64_t t_us, const std::vector<double> &amp,
                         const std::vector<double> &, double rssi) {
                       out.t_us.push_back(t_us);
                       switch (method.kind) {
                       case Aggregation::Kind::kMeanSubcarrier:
                         out.values.push_back(MeanAmplitude(amp));
                         break;
                       case Aggregation::Kind::kSingleSubcarrier:
                         out.values.push_back(amp[static_cast<std::size_t>(method.index)]);
                         break;
                       case Aggregation::Kind::kRssiLinear:
                         out.values.push_back(std::pow(10.0, rssi / 20.0));
                         break;
                       }
                     });
  if (!st) {
    return st.error();
  }
  return out;
}

GestureScript SingleGestureScript(MotionKind kind, const GeometryConfig &geom, double carrier_hz,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(Mix(seed, 0x67656f6dULL));
  return {DrawGesture(kind, geom.pad_s, geom, ArmSpeed(geom, carrier_hz), rng)};
}

std::vector<CorpusItem> CorpusPlan(const SimConfig &base, const GeometryConfig &geom,
                                   int n_per_gesture, std::uint64_t seed) {
  std::vector<CorpusItem> plan;
  std::uint64_t index = 0;
  for (MotionKind kind : kGestures) {
    for (int i = 0; i < n_per_gesture; ++i, ++index) {
      CorpusItem item;
      item.cfg = base;
      item.cfg.seed = Mix(seed, index);
      item.cfg.tail_s = geom.pad_s;
      item.script = SingleGestureScript(kind, geom, base.carrier_hz, item.cfg.seed);
      plan.push_back(std::move(item));
    }
  }
  return plan;
}

Result<std::vector<SynthOutput>> SynthCorpus(const SimConfig &base, const GeometryConfig &geom,
                                             int n_per_gesture, std::uint64_t seed) {
  if (n_per_gesture < 1) {
    return MakeError(ErrorCode::kInvalidArgument, "n_per_gesture must be >= 1");
  }
  std::vector<SynthOutput> out;
  for (const CorpusItem &item : CorpusPlan(base, geom, n_per_gesture, seed)) {
    auto one = SynthTrace(item.cfg, item.script, geom.shape);
    if (!one) {
      return one.error();
    }
    out.push_back(std::move(one).value());
  }
  return out;
}

GestureScript SessionScript(const GeometryConfig &geom, double carrier_hz, int n_per_gesture,
                            std::uint64_t seed) {
  std::mt19937_64 rng(Mix(seed, 0x73657373ULL));
  const double speed = ArmSpeed(geom, carrier_hz);
  GestureScript script;
  double t = geom.pad_s;
  for (int i = 0; i < n_per_gesture; ++i) {
    for (MotionKind kind : kGestures) {
      ScriptEntry e = DrawGesture(kind, t, geom, speed, rng);
      t += e.duration_s + geom.pad_s;
      script.push_back(e);
    }
  }
  return script;
}

GestureScript AmbientScript(const GeometryConfig &geom, double minutes) {
  ScriptEntry e;
  e.start_s = 0.0;
  e.kind = MotionKind::kAmbientWalk;
  e.duration_s = minutes * 60.0;
  e.d_near_m = geom.ambient_near_m;
  e.d_far_m = geom.ambient_far_m;
  return {e};
}

std::string LabelsToJson(std::span<const Label> labels) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Label &l : labels) {
    arr.push_back({{"start_s", l.start_s}, {"kind", MotionKindName(l.kind)},
                   {"duration_s", l.duration_s}});
  }
  return arr.dump(2) + "\n";
}

Result<std::vector<Label>> LabelsFromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    return MakeError(ErrorCode::kMissingLabels, std::string("labels: ") + e.what());
  }
  if (!doc.is_array()) {
    return MakeError(ErrorCode::kMissingLabels, "labels must be a JSON list");
  }
  std::vector<Label> out;
  for (const auto &item : doc) {
    try {
      auto kind = ParseMotionKind(item.at("kind").get<std::string>());
      if (!kind) {
        return kind.error();
      }
      out.push_back({item.at("start_s").get<double>(), *kind, item.at("duration_s").get<double>()});
    } catch (const nlohmann::json::exception &e) {
      return MakeError(ErrorCode::kMissingLabels, std::string("labels: ") + e.what());
    }
  }
  return out;
}

} // namespace wigest
