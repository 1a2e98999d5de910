// wigest command-line tool. Links only the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wigest/wigest.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct ConfigDeleter {
  void operator()(wg_config *p) const { wg_config_free(p); }
};
struct TraceDeleter {
  void operator()(wg_trace *p) const { wg_trace_free(p); }
};
struct LabelsDeleter {
  void operator()(wg_labels *p) const { wg_labels_free(p); }
};
struct EventsDeleter {
  void operator()(wg_events *p) const { wg_events_free(p); }
};
struct StringDeleter {
  void operator()(char *p) const { wg_string_free(p); }
};
using ConfigPtr = std::unique_ptr<wg_config, ConfigDeleter>;
using TracePtr = std::unique_ptr<wg_trace, TraceDeleter>;
using LabelsPtr = std::unique_ptr<wg_labels, LabelsDeleter>;
using EventsPtr = std::unique_ptr<wg_events, EventsDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Thrown on any library or file failure; maps to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Check(wg_status st) {
  if (st != WG_OK) {
    throw DataError(wg_last_error());
  }
}

struct Common {
  std::uint64_t seed{0};
  std::string out;
  std::string config_path;
  std::optional<double> noise_sigma;
  std::optional<double> pps;
};

void AddCommon(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--out", c.out, "Output path");
  cmd->add_option("--config", c.config_path, "JSON file overriding module defaults")
      ->check(CLI::ExistingFile);
  cmd->add_option("--noise-sigma", c.noise_sigma, "Per-subcarrier amplitude noise std")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--pps", c.pps, "Simulated packet rate")->check(CLI::PositiveNumber);
}

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out.flush()) {
    throw DataError("cannot write '" + path + "'");
  }
}

ConfigPtr MakeConfig(const Common &c) {
  wg_config *raw = nullptr;
  Check(wg_config_new(&raw));
  ConfigPtr cfg(raw);
  if (!c.config_path.empty()) {
    Check(wg_config_apply_json(cfg.get(), ReadText(c.config_path).c_str()));
  }
  if (c.noise_sigma) {
    Check(wg_config_set_noise_sigma(cfg.get(), *c.noise_sigma));
  }
  if (c.pps) {
    Check(wg_config_set_packet_rate(cfg.get(), *c.pps));
  }
  return cfg;
}

std::string LabelsPathFor(const std::string &trace_path) {
  const std::string ext = ".jsonl";
  if (trace_path.size() > ext.size() &&
      trace_path.compare(trace_path.size() - ext.size(), ext.size(), ext) == 0) {
    return trace_path.substr(0, trace_path.size() - ext.size()) + ".labels.json";
  }
  return trace_path + ".labels.json";
}

TracePtr LoadTrace(const std::string &path) {
  wg_trace *raw = nullptr;
  Check(wg_trace_read(path.c_str(), &raw));
  return TracePtr(raw);
}

struct SynthArgs {
  Common common;
  std::string gesture;
  std::string script;
  int n{20};
  double ambient_minutes{0.0};
};

void RunSynth(const SynthArgs &a) {
  ConfigPtr cfg = MakeConfig(a.common);
  wg_trace *trace_raw = nullptr;
  wg_labels *labels_raw = nullptr;
  if (!a.gesture.empty()) {
    Check(wg_synth_gesture(cfg.get(), a.gesture.c_str(), a.common.seed, &trace_raw, &labels_raw));
  } else if (a.script == "all4") {
    Check(wg_synth_session(cfg.get(), a.n, a.common.seed, &trace_raw, &labels_raw));
  } else {
    Check(wg_synth_ambient(cfg.get(), a.ambient_minutes, a.common.seed, &trace_raw, &labels_raw));
  }
  TracePtr trace(trace_raw);
  LabelsPtr labels(labels_raw);
  const std::string out = a.common.out.empty() ? "trace.jsonl" : a.common.out;
  const std::string labels_path = LabelsPathFor(out);
  Check(wg_trace_write(trace.get(), out.c_str()));
  Check(wg_labels_write(labels.get(), labels_path.c_str()));
  std::cerr << "wrote " << out << " (" << wg_trace_sample_count(trace.get()) << " samples) and "
            << labels_path << " (" << wg_labels_count(labels.get()) << " labels)\n";
}

struct ClassifyArgs {
  Common common;
  std::string trace;
  std::string agg{"mean"};
  std::string gate{"none"};
  double rate_hz{1000.0};
};

void RunClassify(const ClassifyArgs &a) {
  ConfigPtr cfg = MakeConfig(a.common);
  TracePtr trace = LoadTrace(a.trace);
  wg_events *raw = nullptr;
  Check(wg_classify(cfg.get(), trace.get(), a.agg.c_str(), a.gate.c_str(), a.rate_hz, &raw));
  EventsPtr events(raw);
  char *json = nullptr;
  Check(wg_events_to_json(events.get(), &json));
  StringPtr text(json);
  WriteText(a.common.out, text.get());
}

struct EvalArgs {
  Common common;
  std::vector<std::string> traces;
  std::vector<std::string> labels;
  int corpus{0};
  std::string agg{"mean"};
  double rate_hz{1000.0};
  std::string csv;
};

void RunEval(const EvalArgs &a) {
  ConfigPtr cfg = MakeConfig(a.common);
  char *json = nullptr;
  char *csv = nullptr;
  if (a.corpus > 0) {
    Check(wg_eval_corpus(cfg.get(), a.corpus, a.common.seed, a.agg.c_str(), &json, &csv));
  } else {
    if (!a.labels.empty() && a.labels.size() != a.traces.size()) {
      throw CLI::ValidationError("--labels", "give one labels file per trace or none");
    }
    std::vector<TracePtr> traces;
    std::vector<LabelsPtr> labels;
    for (std::size_t i = 0; i < a.traces.size(); ++i) {
      traces.push_back(LoadTrace(a.traces[i]));
      const std::string lp = a.labels.empty() ? LabelsPathFor(a.traces[i]) : a.labels[i];
      wg_labels *raw = nullptr;
      Check(wg_labels_read(lp.c_str(), &raw));
      labels.emplace_back(raw);
    }
    std::vector<const wg_trace *> tp;
    std::vector<const wg_labels *> lp;
    for (std::size_t i = 0; i < traces.size(); ++i) {
      tp.push_back(traces[i].get());
      lp.push_back(labels[i].get());
    }
    Check(wg_eval(cfg.get(), tp.data(), lp.data(), tp.size(), a.agg.c_str(), a.rate_hz, &json,
                  &csv));
  }
  StringPtr json_text(json);
  StringPtr csv_text(csv);
  WriteText(a.common.out, json_text.get());
  if (!a.csv.empty()) {
    WriteText(a.csv, csv_text.get());
  }
}

struct FpEvalArgs {
  Common common;
  std::string trace;
  double ambient_minutes{0.0};
  std::string agg{"mean"};
  double rate_hz{1000.0};
  std::string timeline;
};

void RunFpEval(const FpEvalArgs &a) {
  ConfigPtr cfg = MakeConfig(a.common);
  TracePtr trace;
  if (!a.trace.empty()) {
    trace = LoadTrace(a.trace);
  } else {
    wg_trace *raw = nullptr;
    Check(wg_synth_ambient(cfg.get(), a.ambient_minutes, a.common.seed, &raw, nullptr));
    trace.reset(raw);
  }
  char *json = nullptr;
  char *csv = nullptr;
  Check(wg_fpeval(cfg.get(), trace.get(), a.agg.c_str(), a.rate_hz, &json, &csv));
  StringPtr json_text(json);
  StringPtr csv_text(csv);
  WriteText(a.common.out, json_text.get());
  if (!a.timeline.empty()) {
    WriteText(a.timeline, csv_text.get());
  }
}

struct SweepArgs {
  Common common;
  std::vector<double> rates{20, 50, 100, 200, 500, 1000};
  int n{20};
  int seeds{1};
  std::string agg{"mean"};
};

void RunSweep(const SweepArgs &a) {
  ConfigPtr cfg = MakeConfig(a.common);
  char *csv = nullptr;
  Check(wg_rate_sweep(cfg.get(), a.rates.data(), a.rates.size(), a.n, a.common.seed, a.seeds,
                      a.agg.c_str(), &csv));
  StringPtr text(csv);
  WriteText(a.common.out, text.get());
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gesture recognition from Wi-Fi channel amplitude traces"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto *synth_cmd = app.add_subcommand("synth", "Synthesize a trace and its labels");
  AddCommon(synth_cmd, synth.common);
  auto *g_opt = synth_cmd->add_option("--gesture", synth.gesture, "push, pull, punch or lever");
  auto *s_opt = synth_cmd->add_option("--script", synth.script, "Scripted session")
                    ->check(CLI::IsMember({"all4"}));
  synth_cmd->add_option("--n", synth.n, "Repetitions per gesture for --script")
      ->check(CLI::PositiveNumber);
  auto *a_opt = synth_cmd->add_option("--ambient-minutes", synth.ambient_minutes,
                                      "Gesture-free ambient walking trace")
                    ->check(CLI::PositiveNumber);
  g_opt->excludes(s_opt)->excludes(a_opt);
  s_opt->excludes(a_opt);
  synth_cmd->callback([&] {
    if (synth.gesture.empty() && synth.script.empty() && synth.ambient_minutes <= 0.0) {
      throw CLI::RequiredError("--gesture, --script or --ambient-minutes");
    }
  });

  ClassifyArgs classify;
  auto *classify_cmd = app.add_subcommand("classify", "Classify gestures in a trace");
  AddCommon(classify_cmd, classify.common);
  classify_cmd->add_option("trace,--trace", classify.trace, "Trace file")->required();
  classify_cmd->add_option("--agg", classify.agg, "mean, rssi or sub:<k>");
  classify_cmd->add_option("--gate", classify.gate, "none, single or double")
      ->check(CLI::IsMember({"none", "single", "double"}));
  classify_cmd->add_option("--rate-hz", classify.rate_hz, "Resampling rate")
      ->check(CLI::PositiveNumber);

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "Accuracy against ground-truth labels");
  AddCommon(eval_cmd, eval.common);
  auto *t_opt = eval_cmd->add_option("--trace", eval.traces, "Trace files");
  eval_cmd->add_option("--labels", eval.labels, "Label files, default <trace>.labels.json");
  auto *c_opt = eval_cmd->add_option("--corpus", eval.corpus,
                                     "Synthesize N single-gesture traces per kind instead")
                    ->check(CLI::PositiveNumber);
  t_opt->excludes(c_opt);
  eval_cmd->add_option("--agg", eval.agg, "mean, rssi or sub:<k>");
  eval_cmd->add_option("--rate-hz", eval.rate_hz, "Resampling rate")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--csv", eval.csv, "Also write the confusion matrix as CSV");
  eval_cmd->callback([&] {
    if (eval.traces.empty() && eval.corpus == 0) {
      throw CLI::RequiredError("--trace or --corpus");
    }
  });

  FpEvalArgs fpeval;
  auto *fp_cmd = app.add_subcommand("fpeval", "False positives per gate mode");
  AddCommon(fp_cmd, fpeval.common);
  auto *ft_opt = fp_cmd->add_option("--trace", fpeval.trace, "Gesture-free trace");
  auto *fa_opt = fp_cmd->add_option("--ambient-minutes", fpeval.ambient_minutes,
                                    "Synthesize an ambient trace instead")
                     ->check(CLI::PositiveNumber);
  ft_opt->excludes(fa_opt);
  fp_cmd->add_option("--agg", fpeval.agg, "mean, rssi or sub:<k>");
  fp_cmd->add_option("--rate-hz", fpeval.rate_hz, "Resampling rate")->check(CLI::PositiveNumber);
  fp_cmd->add_option("--timeline", fpeval.timeline, "Cumulative per-minute CSV");
  fp_cmd->callback([&] {
    if (fpeval.trace.empty() && fpeval.ambient_minutes <= 0.0) {
      throw CLI::RequiredError("--trace or --ambient-minutes");
    }
  });

  SweepArgs sweep;
  auto *sweep_cmd = app.add_subcommand("rate-sweep", "Accuracy versus packet rate");
  AddCommon(sweep_cmd, sweep.common);
  sweep_cmd->add_option("--rates", sweep.rates, "Packet rates")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n", sweep.n, "Traces per gesture per corpus")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seeds", sweep.seeds, "Corpora averaged per rate")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--agg", sweep.agg, "mean, rssi or sub:<k>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) {
      RunSynth(synth);
    } else if (classify_cmd->parsed()) {
      RunClassify(classify);
    } else if (eval_cmd->parsed()) {
      RunEval(eval);
    } else if (fp_cmd->parsed()) {
      RunFpEval(fpeval);
    } else {
      RunSweep(sweep);
    }
  } catch (const CLI::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
