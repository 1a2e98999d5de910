#include "wigest/wigest.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wigest/config.hpp"
#include "wigest/eval.hpp"
#include "wigest/gate.hpp"
#include "wigest/synth.hpp"
#include "wigest/trace.hpp"

struct wg_config {
  wigest::Config cfg;
};

struct wg_trace {
  wigest::Trace trace;
};

struct wg_labels {
  std::vector<wigest::Label> labels;
};

struct wg_events {
  std::vector<wigest::GestureEvent> events;
};

namespace {

using namespace wigest;

thread_local std::string g_last_error;

wg_status Fail(const Error &e) {
  g_last_error = std::string(ErrorCodeName(e.code)) + ": " + e.message;
  return static_cast<wg_status>(e.code);
}

wg_status Fail(ErrorCode code, std::string message) { return Fail(Error{code, std::move(message)}); }

wg_status Succeed() {
  g_last_error.clear();
  return WG_OK;
}

char *CopyString(const std::string &s) {
  char *out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body() and converts stray exceptions into a status.
template <typename Fn> wg_status Guard(Fn body) {
  try {
    return body();
  } catch (const std::bad_alloc &) {
    return Fail(ErrorCode::kInvalidArgument, "out of memory");
  } catch (const std::exception &e) {
    return Fail(ErrorCode::kInvalidArgument, e.what());
  }
}

Result<std::string> ReadFile(const char *path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorCode::kIo, std::string("cannot open '") + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Status WriteFile(const char *path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorCode::kIo, std::string("cannot write '") + path + "'");
  }
  out << text;
  out.flush();
  if (!out) {
    return MakeError(ErrorCode::kIo, std::string("write failed for '") + path + "'");
  }
  return Ok{};
}

Result<Aggregation> AggOrDefault(const char *agg) {
  return agg == nullptr ? Result<Aggregation>(Aggregation::Mean()) : ParseAggregation(agg);
}

PipelineConfig PipelineAt(const Config &cfg, double rate_hz) {
  PipelineConfig p = cfg.pipeline;
  if (rate_hz > 0.0) {
    p.condition.rate_hz = rate_hz;
  }
  return p;
}

Result<std::vector<GestureEvent>> Ungated(const Config &cfg, const Trace &trace, const char *agg,
                                          double rate_hz) {
  auto method = AggOrDefault(agg);
  if (!method) {
    return method.error();
  }
  auto series = Aggregate(trace, *method);
  if (!series) {
    return series.error();
  }
  return ClassifySeries(*series, PipelineAt(cfg, rate_hz));
}

wg_status EmitSynth(Result<SynthOutput> out, wg_trace **trace, wg_labels **labels) {
  if (!out) {
    return Fail(out.error());
  }
  *trace = new wg_trace{std::move(out->trace)};
  if (labels != nullptr) {
    *labels = new wg_labels{std::move(out->labels)};
  }
  return Succeed();
}

} // namespace

extern "C" {

const char *wg_status_name(wg_status status) {
  return ErrorCodeName(static_cast<ErrorCode>(status));
}

const char *wg_last_error(void) { return g_last_error.c_str(); }

void wg_string_free(char *s) { delete[] s; }

wg_status wg_config_new(wg_config **out) {
  if (out == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null output pointer");
  }
  return Guard([&] {
    *out = new wg_config{};
    return Succeed();
  });
}

wg_status wg_config_apply_json(wg_config *cfg, const char *json) {
  if (cfg == nullptr || json == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto st = ApplyOverrides(cfg->cfg, json);
    return st ? Succeed() : Fail(st.error());
  });
}

wg_status wg_config_set_noise_sigma(wg_config *cfg, double sigma) {
  if (cfg == nullptr || !(sigma >= 0.0)) {
    return Fail(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
  }
  cfg->cfg.sim.noise_sigma = sigma;
  return Succeed();
}

wg_status wg_config_set_packet_rate(wg_config *cfg, double pps) {
  if (cfg == nullptr || !(pps > 0.0)) {
    return Fail(ErrorCode::kInvalidArgument, "packet rate must be > 0");
  }
  cfg->cfg.sim.packet_rate_pps = pps;
  return Succeed();
}

void wg_config_free(wg_config *cfg) { delete cfg; }

wg_status wg_synth_gesture(const wg_config *cfg, const char *kind, uint64_t seed,
                           wg_trace **trace, wg_labels **labels) {
  if (cfg == nullptr || kind == nullptr || trace == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto k = ParseMotionKind(kind);
    if (!k) {
      return Fail(k.error());
    }
    if (!IsGesture(*k)) {
      return Fail(ErrorCode::kBadKind, std::string("not a gesture: ") + kind);
    }
    const Config &c = cfg->cfg;
    SimConfig sim = c.sim;
    sim.seed = seed;
    sim.tail_s = c.geometry.pad_s;
    const GestureScript script = SingleGestureScript(*k, c.geometry, sim.carrier_hz, seed);
    return EmitSynth(SynthTrace(sim, script, c.geometry.shape), trace, labels);
  });
}

wg_status wg_synth_session(const wg_config *cfg, int n_per_gesture, uint64_t seed,
                           wg_trace **trace, wg_labels **labels) {
  if (cfg == nullptr || trace == nullptr || n_per_gesture <= 0) {
    return Fail(ErrorCode::kInvalidArgument, "need a config, an output and n > 0");
  }
  return Guard([&] {
    const Config &c = cfg->cfg;
    SimConfig sim = c.sim;
    sim.seed = seed;
    sim.tail_s = c.geometry.pad_s;
    const GestureScript script = SessionScript(c.geometry, sim.carrier_hz, n_per_gesture, seed);
    return EmitSynth(SynthTrace(sim, script, c.geometry.shape), trace, labels);
  });
}

wg_status wg_synth_ambient(const wg_config *cfg, double minutes, uint64_t seed, wg_trace **trace,
                           wg_labels **labels) {
  if (cfg == nullptr || trace == nullptr || !(minutes > 0.0)) {
    return Fail(ErrorCode::kInvalidArgument, "need a config, an output and minutes > 0");
  }
  return Guard([&] {
    const Config &c = cfg->cfg;
    SimConfig sim = c.sim;
    sim.seed = seed;
    sim.tail_s = 0.0;
    return EmitSynth(SynthTrace(sim, AmbientScript(c.geometry, minutes), c.geometry.shape), trace,
                     labels);
  });
}

wg_status wg_trace_read(const char *path, wg_trace **out) {
  if (path == nullptr || out == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return Fail(ErrorCode::kIo, std::string("cannot open '") + path + "'");
    }
    auto t = ParseTrace(in);
    if (!t) {
      return Fail(t.error());
    }
    *out = new wg_trace{std::move(t).value()};
    return Succeed();
  });
}

wg_status wg_trace_parse(const char *text, size_t len, wg_trace **out) {
  if (text == nullptr || out == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto t = ParseTrace(std::string_view(text, len));
    if (!t) {
      return Fail(t.error());
    }
    *out = new wg_trace{std::move(t).value()};
    return Succeed();
  });
}

wg_status wg_trace_write(const wg_trace *trace, const char *path) {
  if (trace == nullptr || path == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto st = WriteFile(path, WriteTrace(trace->trace));
    return st ? Succeed() : Fail(st.error());
  });
}

size_t wg_trace_sample_count(const wg_trace *trace) {
  return trace == nullptr ? 0 : trace->trace.samples.size();
}

double wg_trace_duration_s(const wg_trace *trace) {
  if (trace == nullptr || trace->trace.samples.size() < 2) {
    return 0.0;
  }
  const auto &s = trace->trace.samples;
  return static_cast<double>(s.back().t_us - s.front().t_us) / 1e6;
}

void wg_trace_free(wg_trace *trace) { delete trace; }

wg_status wg_labels_read(const char *path, wg_labels **out) {
  if (path == nullptr || out == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto text = ReadFile(path);
    if (!text) {
      return Fail(ErrorCode::kMissingLabels, text.error().message);
    }
    auto labels = LabelsFromJson(*text);
    if (!labels) {
      return Fail(labels.error());
    }
    *out = new wg_labels{std::move(labels).value()};
    return Succeed();
  });
}

wg_status wg_labels_write(const wg_labels *labels, const char *path) {
  if (labels == nullptr || path == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto st = WriteFile(path, LabelsToJson(labels->labels));
    return st ? Succeed() : Fail(st.error());
  });
}

size_t wg_labels_count(const wg_labels *labels) {
  return labels == nullptr ? 0 : labels->labels.size();
}

void wg_labels_free(wg_labels *labels) { delete labels; }

wg_status wg_classify(const wg_config *cfg, const wg_trace *trace, const char *agg,
                      const char *gate, double rate_hz, wg_events **out) {
  if (cfg == nullptr || trace == nullptr || out == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    GateConfig g = cfg->cfg.gate;
    if (gate != nullptr) {
      auto mode = ParseGateMode(gate);
      if (!mode) {
        return Fail(mode.error());
      }
      g.mode = *mode;
    }
    auto events = Ungated(cfg->cfg, trace->trace, agg, rate_hz);
    if (!events) {
      return Fail(events.error());
    }
    auto gated = ApplyGate(*events, g);
    if (!gated) {
      return Fail(gated.error());
    }
    *out = new wg_events{std::move(gated).value()};
    return Succeed();
  });
}

size_t wg_events_count(const wg_events *events) {
  return events == nullptr ? 0 : events->events.size();
}

wg_status wg_events_get(const wg_events *events, size_t i, wg_event_info *out) {
  if (events == nullptr || out == nullptr || i >= events->events.size()) {
    return Fail(ErrorCode::kInvalidArgument, "event index out of range");
  }
  const GestureEvent &e = events->events[i];
  *out = {GestureName(e.gesture), e.start_ms, e.end_ms, e.peak_count, e.max_height};
  return Succeed();
}

wg_status wg_events_to_json(const wg_events *events, char **json) {
  if (events == nullptr || json == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const GestureEvent &e : events->events) {
      arr.push_back({{"gesture", GestureName(e.gesture)},
                     {"start_ms", e.start_ms},
                     {"end_ms", e.end_ms},
                     {"peak_count", e.peak_count},
                     {"max_height", e.max_height}});
    }
    *json = CopyString(arr.dump(2) + "\n");
    return Succeed();
  });
}

void wg_events_free(wg_events *events) { delete events; }

wg_status wg_eval(const wg_config *cfg, const wg_trace *const *traces,
                  const wg_labels *const *labels, size_t n, const char *agg, double rate_hz,
                  char **report_json, char **report_csv) {
  if (cfg == nullptr || (n > 0 && (traces == nullptr || labels == nullptr))) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    EvalReport report;
    for (size_t i = 0; i < n; ++i) {
      if (traces[i] == nullptr || labels[i] == nullptr) {
        return Fail(ErrorCode::kMissingLabels, "every trace needs its labels");
      }
      auto events = Ungated(cfg->cfg, traces[i]->trace, agg, rate_hz);
      if (!events) {
        return Fail(events.error());
      }
      Tally(report, labels[i]->labels, *events);
    }
    if (report.n_trials == 0) {
      return Fail(ErrorCode::kMissingLabels, "no gesture labels to evaluate against");
    }
    Finalize(report);
    if (report_json != nullptr) {
      *report_json = CopyString(ReportToJson(report));
    }
    if (report_csv != nullptr) {
      *report_csv = CopyString(ReportToCsv(report));
    }
    return Succeed();
  });
}

wg_status wg_eval_corpus(const wg_config *cfg, int n_per_gesture, uint64_t seed, const char *agg,
                         char **report_json, char **report_csv) {
  if (cfg == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto method = AggOrDefault(agg);
    if (!method) {
      return Fail(method.error());
    }
    auto report = EvaluateCorpus(cfg->cfg, n_per_gesture, seed, *method);
    if (!report) {
      return Fail(report.error());
    }
    if (report_json != nullptr) {
      *report_json = CopyString(ReportToJson(*report));
    }
    if (report_csv != nullptr) {
      *report_csv = CopyString(ReportToCsv(*report));
    }
    return Succeed();
  });
}

wg_status wg_fpeval(const wg_config *cfg, const wg_trace *trace, const char *agg, double rate_hz,
                    char **rates_json, char **timeline_csv) {
  if (cfg == nullptr || trace == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    const double minutes = wg_trace_duration_s(trace) / 60.0;
    if (!(minutes > 0.0)) {
      return Fail(ErrorCode::kZeroDuration, "trace spans no time");
    }
    auto events = Ungated(cfg->cfg, trace->trace, agg, rate_hz);
    if (!events) {
      return Fail(events.error());
    }
    auto fp = FpEvaluate(*events, minutes, cfg->cfg.gate);
    if (!fp) {
      return Fail(fp.error());
    }
    if (rates_json != nullptr) {
      *rates_json = CopyString(FpToJson(*fp));
    }
    if (timeline_csv != nullptr) {
      *timeline_csv = CopyString(TimelineToCsv(*fp));
    }
    return Succeed();
  });
}

wg_status wg_rate_sweep(const wg_config *cfg, const double *rates_pps, size_t n_rates,
                        int n_per_gesture, uint64_t seed, int n_seeds, const char *agg,
                        char **csv) {
  if (cfg == nullptr || rates_pps == nullptr || csv == nullptr) {
    return Fail(ErrorCode::kInvalidArgument, "null argument");
  }
  return Guard([&] {
    auto method = AggOrDefault(agg);
    if (!method) {
      return Fail(method.error());
    }
    auto rows = RateSweep(cfg->cfg, std::span<const double>(rates_pps, n_rates), n_per_gesture,
                          seed, n_seeds, *method);
    if (!rows) {
      return Fail(rows.error());
    }
    *csv = CopyString(RateSweepToCsv(*rows));
    return Succeed();
  });
}

} // extern "C"
