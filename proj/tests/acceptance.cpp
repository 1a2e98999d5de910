// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "wigest/classify.hpp"
#include "wigest/condition.hpp"
#include "wigest/config.hpp"
#include "wigest/eval.hpp"
#include "wigest/gate.hpp"
#include "wigest/peaks.hpp"
#include "wigest/synth.hpp"

using namespace wigest;

namespace {

constexpr MotionKind kKinds[] = {MotionKind::kPush, MotionKind::kPull, MotionKind::kPunch,
                                 MotionKind::kLever};
constexpr std::uint64_t kSeed = 1;

// Per-subcarrier noise that puts the idle amplitude SNR at 15 dB.
double NoiseFor15dB() { return SimConfig{}.direct_amp * std::pow(10.0, -15.0 / 20.0); }

struct Outcome {
  bool pass{false};
  std::string detail;
};

class Timer {
public:
  [[nodiscard]] double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

std::string Fmt(const char *fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int UnknownCount(const EvalReport &r) {
  return std::accumulate(r.confusion[4].begin(), r.confusion[4].end(), 0);
}

Outcome NoiselessAccuracy() {
  Config cfg;
  Timer timer;
  auto r = EvaluateCorpus(cfg, 50, kSeed);
  const double secs = timer.Seconds();
  if (!r) {
    return {false, r.error().message};
  }
  const bool pass = r->overall_accuracy == 100.0 && UnknownCount(*r) == 0 && secs < 30.0;
  return {pass, Fmt("accuracy %.2f%% over %d trials, %d unknown, %.1f s (need 100%%, 0, < 30 s)",
                    r->overall_accuracy, r->n_trials, UnknownCount(*r), secs)};
}

// Idle SNR measured on one subcarrier: mean amplitude power over amplitude variance.
double MeasuredIdleSnrDb(double sigma) {
  SimConfig sim;
  sim.noise_sigma = sigma;
  sim.subcarrier_count = 1;
  sim.tail_s = 10.0;
  sim.seed = kSeed;
  auto s = SynthSeries(sim, {}, Aggregation::Single(0));
  if (!s) {
    return 0.0;
  }
  const double n = static_cast<double>(s->size());
  const double mean = std::accumulate(s->values.begin(), s->values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : s->values) {
    var += (v - mean) * (v - mean);
  }
  return 10.0 * std::log10(mean * mean / (var / n));
}

Outcome NoisyAccuracy() {
  Config cfg;
  cfg.sim.noise_sigma = NoiseFor15dB();
  Timer timer;
  auto r = EvaluateCorpus(cfg, 50, kSeed);
  const double secs = timer.Seconds();
  if (!r) {
    return {false, r.error().message};
  }
  const bool pass = r->overall_accuracy >= 90.0 && secs < 60.0;
  return {pass, Fmt("sigma %.4f (idle SNR %.1f dB): accuracy %.2f%% over %d trials, %.1f s "
                    "(need >= 90%%, < 60 s)",
                    cfg.sim.noise_sigma, MeasuredIdleSnrDb(cfg.sim.noise_sigma),
                    r->overall_accuracy, r->n_trials, secs)};
}

// Peaks of the noiseless conditioned trace inside the scripted window against the
// half-wavelength crossing count of the scripted path.
Outcome FringeCount() {
  Config cfg;
  const GeometryConfig &geom = cfg.geometry;
  const double lambda = kSpeedOfLight / cfg.sim.carrier_hz;
  std::string detail;
  bool pass = true;
  for (MotionKind kind : kKinds) {
    int within = 0;
    int worst = 0;
    for (std::uint64_t g = 0; g < 20; ++g) {
      SimConfig sim = cfg.sim;
      sim.seed = kSeed * 1000 + g;
      sim.tail_s = geom.pad_s;
      const GestureScript script = SingleGestureScript(kind, geom, sim.carrier_hz, sim.seed);
      const ScriptEntry &e = script[0];
      auto series = SynthSeries(sim, script, Aggregation::Mean(), geom.shape);
      auto traj = Trajectory(kind, e.duration_s, e.d_near_m, e.d_far_m, 10000.0, geom.shape);
      if (!series || !traj) {
        return {false, "synthesis failed"};
      }
      auto sig = ConditionSeries(*series, cfg.pipeline.condition);
      if (!sig) {
        return {false, sig.error().message};
      }
      int detected = 0;
      for (const Peak &p : DetectPeaks(*sig, NoiseStats{}, cfg.pipeline.peaks)) {
        detected += p.t_ms >= e.start_s * 1000.0 && p.t_ms <= (e.start_s + e.duration_s) * 1000.0;
      }
      const int diff = detected - ExpectedFringeCount(traj->d_m, lambda);
      within += std::abs(diff) <= 2;
      worst = std::abs(diff) > std::abs(worst) ? diff : worst;
    }
    pass = pass && within == 20;
    detail += Fmt("%s %d/20 (worst %+d) ", MotionKindName(kind), within, worst);
  }
  return {pass, detail + "(need all within +-2)"};
}

Outcome ConditioningOracles() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_int_distribution<std::int64_t> gap(1, 3000);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double affine_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = coef(rng);
    const double b = coef(rng);
    Series s;
    for (std::int64_t t = gap(rng); s.size() < 500; t += gap(rng)) {
      s.t_us.push_back(t);
      s.values.push_back(a + b * static_cast<double>(t) / 1e6);
    }
    auto r = Resample(s, 1000.0);
    if (!r) {
      return {false, r.error().message};
    }
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < r->size(); ++i) {
      const double want = a + b * r->TimeMs(i) / 1e3;
      scale = std::max(scale, std::abs(want));
      err = std::max(err, std::abs(r->values[i] - want));
    }
    affine_err = std::max(affine_err, err / scale);
  }

  bool dc_exact = true;
  bool normalize_zero = true;
  for (double c : {0.0, 1.0, -2.5, 0.1, 12345.678}) {
    auto lp = Lowpass(UniformSignal{1000.0, 0, std::vector<double>(1000, c)});
    auto nm = Normalize(UniformSignal{1000.0, 0, std::vector<double>(1000, c)});
    if (!lp || !nm) {
      return {false, "short signal"};
    }
    dc_exact = dc_exact && std::all_of(lp->values.begin(), lp->values.end(),
                                       [c](double v) { return v == c; });
    normalize_zero = normalize_zero && std::all_of(nm->values.begin(), nm->values.end(),
                                                   [](double v) { return v == 0.0; });
  }

  double linear_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(800);
    std::vector<double> y(800);
    std::vector<double> mix(800);
    const double a = coef(rng);
    const double b = coef(rng);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
      mix[i] = a * x[i] + b * y[i];
    }
    auto lx = Lowpass(UniformSignal{1000.0, 0, x});
    auto ly = Lowpass(UniformSignal{1000.0, 0, y});
    auto lm = Lowpass(UniformSignal{1000.0, 0, mix});
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double want = a * lx->values[i] + b * ly->values[i];
      scale = std::max(scale, std::abs(want));
      err = std::max(err, std::abs(lm->values[i] - want));
    }
    linear_err = std::max(linear_err, err / scale);
  }
  const bool pass = affine_err < 1e-12 && dc_exact && normalize_zero && linear_err < 1e-12;
  return {pass, Fmt("affine resample rel err %.2e, lowpass DC exact %s, normalize(const) zero %s, "
                    "lowpass linearity rel err %.2e (need < 1e-12)",
                    affine_err, dc_exact ? "yes" : "no", normalize_zero ? "yes" : "no",
                    linear_err)};
}

Outcome PhaseDecorrelation() {
  SimConfig sim;
  sim.seed = kSeed;
  sim.tail_s = 10.5;
  auto out = SynthTrace(sim, {});
  if (!out) {
    return {false, out.error().message};
  }
  const auto &samples = out->trace.samples;
  double worst_r = 0.0;
  double amp_var = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(sim.subcarrier_count); ++k) {
    std::vector<double> ph;
    double amp_mean = 0.0;
    for (const RawSample &s : samples) {
      ph.push_back(s.csi_phase[k]);
      amp_mean += s.csi_amp[k];
    }
    amp_mean /= static_cast<double>(samples.size());
    for (const RawSample &s : samples) {
      amp_var = std::max(amp_var, (s.csi_amp[k] - amp_mean) * (s.csi_amp[k] - amp_mean));
    }
    const double mean = std::accumulate(ph.begin(), ph.end(), 0.0) / static_cast<double>(ph.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ph.size(); ++i) {
      den += (ph[i] - mean) * (ph[i] - mean);
      if (i > 0) {
        num += (ph[i] - mean) * (ph[i - 1] - mean);
      }
    }
    worst_r = std::max(worst_r, std::abs(num / den));
  }
  const bool pass = samples.size() >= 10000 && worst_r < 0.1 && amp_var == 0.0;
  return {pass, Fmt("%zu packets, max |lag-1 r| over subcarriers %.4f (need < 0.1), amplitude "
                    "variance %.1e (need 0)",
                    samples.size(), worst_r, amp_var)};
}

Outcome RateTrend() {
  Config cfg;
  cfg.sim.noise_sigma = NoiseFor15dB();
  const double rates[] = {20.0, 100.0, 1000.0};
  auto rows = RateSweep(cfg, rates, 20, kSeed, 5);
  if (!rows) {
    return {false, rows.error().message};
  }
  const double a20 = (*rows)[0].accuracy_pct;
  const double a100 = (*rows)[1].accuracy_pct;
  const double a1000 = (*rows)[2].accuracy_pct;
  const bool pass = a1000 >= a100 && a100 >= a20 && a1000 > a20;
  return {pass, Fmt("noisy accuracy over 5 seeds: 20 pps %.2f%%, 100 pps %.2f%%, 1000 pps %.2f%% "
                    "(need non-decreasing, endpoints strictly)",
                    a20, a100, a1000)};
}

// Lever then push with a gap; success when the push gets through a single-lever gate.
double LeverArmingRate(const Config &cfg, int attempts) {
  const GeometryConfig &geom = cfg.geometry;
  GateConfig gate = cfg.gate;
  gate.mode = GateMode::kSingleLever;
  int armed = 0;
  for (int i = 0; i < attempts; ++i) {
    SimConfig sim = cfg.sim;
    sim.seed = kSeed * 7919 + static_cast<std::uint64_t>(i);
    sim.tail_s = geom.pad_s;
    ScriptEntry lever = SingleGestureScript(MotionKind::kLever, geom, sim.carrier_hz, sim.seed)[0];
    ScriptEntry push = SingleGestureScript(MotionKind::kPush, geom, sim.carrier_hz, sim.seed + 1)[0];
    push.start_s = lever.start_s + lever.duration_s + geom.pad_s;
    auto series = SynthSeries(sim, {lever, push}, Aggregation::Mean(), geom.shape);
    if (!series) {
      continue;
    }
    auto events = ClassifySeries(*series, cfg.pipeline);
    if (!events) {
      continue;
    }
    auto emitted = ApplyGate(*events, gate);
    armed += emitted && std::any_of(emitted->begin(), emitted->end(), [&](const GestureEvent &e) {
               return e.gesture == Gesture::kPush && e.start_ms >= push.start_s * 1000.0 - 500.0;
             });
  }
  return static_cast<double>(armed) / attempts;
}

Outcome GateOrdering() {
  Config cfg;
  Timer timer;
  SimConfig sim = cfg.sim;
  sim.seed = kSeed;
  sim.tail_s = 0.0;
  auto series = SynthSeries(sim, AmbientScript(cfg.geometry, 60.0), Aggregation::Mean(),
                            cfg.geometry.shape);
  if (!series) {
    return {false, series.error().message};
  }
  auto events = ClassifySeries(*series, cfg.pipeline);
  if (!events) {
    return {false, events.error().message};
  }
  const double minutes =
      static_cast<double>(series->t_us.back() - series->t_us.front()) / 60e6;
  auto fp = FpEvaluate(*events, minutes, cfg.gate);
  if (!fp) {
    return {false, fp.error().message};
  }
  const auto &r = fp->rate_per_min;
  const double arming = LeverArmingRate(cfg, 100);
  Config noisy = cfg;
  noisy.sim.noise_sigma = NoiseFor15dB();
  const double arming_noisy = LeverArmingRate(noisy, 100);
  const bool pass = r[0] > r[1] && r[1] >= r[2] && r[1] < 0.5 && arming >= 0.95;
  return {pass, Fmt("60 min ambient: none %.3f, single %.3f, double %.3f events/min (need none > "
                    "single >= double, single < 0.5); lever arming %.0f/100 (need >= 95), "
                    "%.0f/100 at 15 dB; %.1f s",
                    r[0], r[1], r[2], arming * 100.0, arming_noisy * 100.0, timer.Seconds())};
}

Outcome ClassificationInvariants() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> len(3, 25);
  std::uniform_real_distribution<double> height(0.0, 10.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  const int n = 10000;
  int scale_ok = 0;
  int reversal_ok = 0;
  int total_ok = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> h(len(rng));
    for (double &x : h) {
      x = height(rng);
    }
    PeakGroup g;
    for (std::size_t k = 0; k < h.size(); ++k) {
      g.peaks.push_back({100.0 * static_cast<double>(k), h[k], Polarity::kCrest});
    }
    g.span = {g.peaks.front().t_ms, g.peaks.back().t_ms};
    PeakGroup scaled = g;
    const double c = scale(rng);
    for (Peak &p : scaled.peaks) {
      p.height *= c;
    }
    PeakGroup reversed = g;
    for (std::size_t k = 0; k < h.size(); ++k) {
      reversed.peaks[k].height = h[h.size() - 1 - k];
    }
    const GestureEvent e = ClassifyGroup(g);
    const Gesture base = e.gesture;
    const Gesture rev = ClassifyGroup(reversed).gesture;
    scale_ok += ClassifyGroup(scaled).gesture == base;
    bool dual = true;
    switch (base) {
    case Gesture::kPush: dual = rev == Gesture::kPull; break;
    case Gesture::kPull: dual = rev == Gesture::kPush; break;
    case Gesture::kPunch: dual = rev == Gesture::kPunch; break;
    case Gesture::kLever: dual = rev == Gesture::kUnknown; break;
    case Gesture::kUnknown:
      dual = rev != Gesture::kPush && rev != Gesture::kPull && rev != Gesture::kPunch;
      break;
    }
    reversal_ok += dual;
    bool alternating = true;
    for (std::size_t k = 1; k < e.pattern.size(); ++k) {
      alternating = alternating && e.pattern[k] != e.pattern[k - 1];
    }
    total_ok += alternating && GestureForPattern(e.pattern) == base;
  }
  const bool pass = scale_ok == n && reversal_ok == n && total_ok == n;
  return {pass, Fmt("%d random sequences: scale %d, reversal %d, totality %d", n, scale_ok,
                    reversal_ok, total_ok)};
}

Outcome Determinism() {
  Config cfg;
  cfg.sim.noise_sigma = 0.1;
  cfg.sim.glitch_rate_per_s = 0.5;
  cfg.sim.glitch_magnitude = 0.2;
  cfg.sim.seed = kSeed;
  const GestureScript script = SessionScript(cfg.geometry, cfg.sim.carrier_hz, 2, kSeed);
  auto a = SynthTrace(cfg.sim, script, cfg.geometry.shape);
  auto b = SynthTrace(cfg.sim, script, cfg.geometry.shape);
  const bool synth_same = a && b && WriteTrace(a->trace) == WriteTrace(b->trace) &&
                          LabelsToJson(a->labels) == LabelsToJson(b->labels);
  auto sa = Aggregate(a->trace, Aggregation::Mean());
  auto ea = ClassifySeries(*sa, cfg.pipeline);
  auto eb = ClassifySeries(*sa, cfg.pipeline);
  bool classify_same = ea && eb && ea->size() == eb->size();
  for (std::size_t i = 0; classify_same && i < ea->size(); ++i) {
    classify_same = (*ea)[i].start_ms == (*eb)[i].start_ms && (*ea)[i].gesture == (*eb)[i].gesture &&
                    (*ea)[i].max_height == (*eb)[i].max_height;
  }
  auto r1 = EvaluateCorpus(cfg, 5, kSeed, Aggregation::Mean(), 1);
  auto r4 = EvaluateCorpus(cfg, 5, kSeed, Aggregation::Mean(), 4);
  const bool eval_same = r1 && r4 && ReportToJson(*r1) == ReportToJson(*r4) &&
                         ReportToCsv(*r1) == ReportToCsv(*r4);
  const bool pass = synth_same && classify_same && eval_same;
  return {pass, Fmt("library: synth %s, classify %s, corpus eval across thread counts %s; CLI "
                    "byte-identity is checked by the cli_determinism test",
                    synth_same ? "identical" : "differs", classify_same ? "identical" : "differs",
                    eval_same ? "identical" : "differs")};
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"noiseless-accuracy", NoiselessAccuracy},
      {"noisy-accuracy", NoisyAccuracy},
      {"fringe-count", FringeCount},
      {"conditioning-oracles", ConditioningOracles},
      {"phase-decorrelation", PhaseDecorrelation},
      {"rate-trend", RateTrend},
      {"gate-ordering", GateOrdering},
      {"classification-invariants", ClassificationInvariants},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    const Outcome o = c.run();
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
