#include "wigest/config.hpp"

#include <functional>
#include <map>
#include <string>

#include <json.hpp>

namespace wigest {

namespace {

using nlohmann::json;
using Setter = std::function<void(const json &)>;
using Section = std::map<std::string, Setter>;

template <typename T> Setter Bind(T &field) {
  return [&field](const json &v) { field = v.get<T>(); };
}

std::map<std::string, Section> Sections(Config &c) {
  std::map<std::string, Section> s;
  SimConfig &sim = c.sim;
  s["sim"] = {
      {"carrier_hz", Bind(sim.carrier_hz)},
      {"subcarrier_count", Bind(sim.subcarrier_count)},
      {"subcarrier_spacing_hz", Bind(sim.subcarrier_spacing_hz)},
      {"packet_rate_pps", Bind(sim.packet_rate_pps)},
      {"burst_gap_ms",
       [&sim](const json &v) {
         if (v.is_null()) {
           sim.burst_gaps.reset();
           return;
         }
         sim.burst_gaps = BurstGaps{v.at("gap_ms").get<double>(), v.at("prob_per_s").get<double>()};
       }},
      {"direct_amp", Bind(sim.direct_amp)},
      {"reflect_gain", Bind(sim.reflect_gain)},
      {"ambient_reflect_gain", Bind(sim.ambient_reflect_gain)},
      {"noise_sigma", Bind(sim.noise_sigma)},
      {"glitch_rate_per_s", Bind(sim.glitch_rate_per_s)},
      {"glitch_magnitude", Bind(sim.glitch_magnitude)},
      {"seed", Bind(sim.seed)},
      {"tail_s", Bind(sim.tail_s)},
      {"record_phase", Bind(sim.record_phase)},
  };
  GeometryConfig &g = c.geometry;
  s["geometry"] = {
      {"d_near_min_m", Bind(g.d_near_min_m)},   {"d_near_max_m", Bind(g.d_near_max_m)},
      {"d_far_min_m", Bind(g.d_far_min_m)},     {"d_far_max_m", Bind(g.d_far_max_m)},
      {"peak_fringe_hz", Bind(g.peak_fringe_hz)}, {"pad_s", Bind(g.pad_s)},
      {"ambient_near_m", Bind(g.ambient_near_m)}, {"ambient_far_m", Bind(g.ambient_far_m)},
  };
  s["shape"] = {
      {"onset_speed_frac", Bind(g.shape.onset_speed_frac)},
      {"lever_retract_frac", Bind(g.shape.lever_retract_frac)},
      {"walk_tau_s", Bind(g.shape.walk_tau_s)},
      {"walk_speed_std_mps", Bind(g.shape.walk_speed_std_mps)},
      {"walk_bout_s", Bind(g.shape.walk_bout_s)},
      {"walk_pause_s", Bind(g.shape.walk_pause_s)},
  };
  ConditionConfig &cond = c.pipeline.condition;
  s["condition"] = {
      {"rate_hz", Bind(cond.rate_hz)},
      {"max_gap_ms", Bind(cond.max_gap_ms)},
      {"lowpass_window_s", Bind(cond.lowpass_window_s)},
      {"normalize_window_ms", Bind(cond.normalize_window_ms)},
  };
  PeakConfig &pk = c.pipeline.peaks;
  s["peaks"] = {
      {"threshold_factor", Bind(pk.threshold_factor)}, {"group_gap_ms", Bind(pk.group_gap_ms)},
      {"min_group_size", Bind(pk.min_group_size)},     {"max_span_ms", Bind(pk.max_span_ms)},
      {"min_quiet_s", Bind(pk.min_quiet_s)},           {"merge_lobes", Bind(pk.merge_lobes)},
  };
  s["classify"] = {
      {"hysteresis_frac", Bind(c.pipeline.classify.hysteresis_frac)},
      {"min_smoothing_len", Bind(c.pipeline.classify.min_smoothing_len)},
  };
  s["pipeline"] = {{"refine_noise_floor", Bind(c.pipeline.refine_noise_floor)}};
  GateConfig &gate = c.gate;
  s["gate"] = {
      {"mode",
       [&gate](const json &v) {
         auto m = ParseGateMode(v.get<std::string>());
         if (!m) {
           throw std::invalid_argument(m.error().message);
         }
         gate.mode = *m;
       }},
      {"double_window_s", Bind(gate.double_window_s)},
      {"idle_timeout_s", Bind(gate.idle_timeout_s)},
      {"lever_period_min_ms", Bind(gate.lever_period_min_ms)},
      {"lever_period_max_ms", Bind(gate.lever_period_max_ms)},
      {"lever_period_cv_max", Bind(gate.lever_period_cv_max)},
  };
  return s;
}

} // namespace

Status ApplyOverrides(Config &cfg, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    return MakeError(ErrorCode::kInvalidArgument, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) {
    return MakeError(ErrorCode::kInvalidArgument, "config must be a JSON object");
  }
  Config next = cfg;
  auto sections = Sections(next);
  for (const auto &[name, body] : doc.items()) {
    auto sec = sections.find(name);
    if (sec == sections.end()) {
      return MakeError(ErrorCode::kInvalidArgument, "config: unknown section '" + name + "'");
    }
    if (!body.is_object()) {
      return MakeError(ErrorCode::kInvalidArgument, "config: section '" + name + "' must be an object");
    }
    for (const auto &[key, value] : body.items()) {
      auto setter = sec->second.find(key);
      if (setter == sec->second.end()) {
        return MakeError(ErrorCode::kInvalidArgument,
                         "config: unknown key '" + name + "." + key + "'");
      }
      try {
        setter->second(value);
      } catch (const std::exception &e) {
        return MakeError(ErrorCode::kInvalidArgument,
                         "config: bad value for '" + name + "." + key + "': " + e.what());
      }
    }
  }
  if (auto st = Validate(next.sim); !st) {
    return st;
  }
  if (auto st = Validate(next.gate); !st) {
    return st;
  }
  cfg = next;
  return Ok{};
}

} // namespace wigest
