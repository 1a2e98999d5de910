#include "wigest/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace wigest {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
  case ErrorCode::kOk: return "Ok";
  case ErrorCode::kInvalidArgument: return "InvalidArgument";
  case ErrorCode::kMalformedLine: return "MalformedLine";
  case ErrorCode::kNonMonotonicTimestamp: return "NonMonotonicTimestamp";
  case ErrorCode::kSubcarrierCountMismatch: return "SubcarrierCountMismatch";
  case ErrorCode::kMissingMeta: return "MissingMeta";
  case ErrorCode::kEmptyTrace: return "EmptyTrace";
  case ErrorCode::kTooFewPoints: return "TooFewPoints";
  case ErrorCode::kGapTooLarge: return "GapTooLarge";
  case ErrorCode::kSignalTooShort: return "SignalTooShort";
  case ErrorCode::kInsufficientQuietSignal: return "InsufficientQuietSignal";
  case ErrorCode::kTooFewPeaks: return "TooFewPeaks";
  case ErrorCode::kBadKind: return "BadKind";
  case ErrorCode::kBadRange: return "BadRange";
  case ErrorCode::kOutOfOrderEvent: return "OutOfOrderEvent";
  case ErrorCode::kZeroDuration: return "ZeroDuration";
  case ErrorCode::kMissingLabels: return "MissingLabels";
  case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

using nlohmann::json;

bool IsBlank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') {
      return false;
    }
  }
  return true;
}

Error Malformed(std::int64_t line_no, const std::string &why) {
  return MakeError(ErrorCode::kMalformedLine, "line " + std::to_string(line_no) + ": " + why,
                   line_no);
}

Result<TraceMeta> ParseMeta(const json &doc, std::int64_t line_no) {
  if (!doc.is_object() || !doc.contains("meta") || !doc["meta"].is_object()) {
    return MakeError(ErrorCode::kMissingMeta, "first line must be a meta object", line_no);
  }
  const json &m = doc["meta"];
  TraceMeta meta;
  try {
    meta.carrier_hz = m.at("carrier_hz").get<double>();
    meta.subcarrier_count = m.at("subcarrier_count").get<int>();
    meta.subcarrier_spacing_hz = m.at("subcarrier_spacing_hz").get<double>();
    meta.nominal_rate_pps = m.value("nominal_rate_pps", 0.0);
    if (m.contains("label") && !m["label"].is_null()) {
      meta.label = m["label"].get<std::string>();
    }
  } catch (const json::exception &e) {
    return Malformed(line_no, std::string("bad meta: ") + e.what());
  }
  if (!(meta.carrier_hz > 0.0) || meta.subcarrier_count < 1) {
    return Malformed(line_no, "meta requires carrier_hz > 0 and subcarrier_count >= 1");
  }
  return meta;
}

Result<std::vector<double>> ParseNumberArray(const json &arr, std::int64_t line_no,
                                             const char *name) {
  if (!arr.is_array()) {
    return Malformed(line_no, std::string(name) + " must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json &v : arr) {
    if (!v.is_number()) {
      return Malformed(line_no, std::string(name) + " entries must be numbers");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      return Malformed(line_no, std::string(name) + " entries must be finite");
    }
    out.push_back(x);
  }
  return out;
}

Result<RawSample> ParseSample(const json &doc, const TraceMeta &meta, std::int64_t line_no) {
  if (!doc.is_object()) {
    return Malformed(line_no, "sample must be an object");
  }
  RawSample s;
  const auto t = doc.find("t_us");
  const auto rssi = doc.find("rssi_db");
  const auto csi = doc.find("csi");
  if (t == doc.end() || !t->is_number_integer()) {
    return Malformed(line_no, "t_us must be an integer");
  }
  if (rssi == doc.end() || !rssi->is_number()) {
    return Malformed(line_no, "rssi_db must be a number");
  }
  if (csi == doc.end()) {
    return Malformed(line_no, "csi missing");
  }
  s.t_us = t->get<std::int64_t>();
  s.rssi_db = rssi->get<double>();
  auto amp = ParseNumberArray(*csi, line_no, "csi");
  if (!amp) {
    return amp.error();
  }
  s.csi_amp = std::move(amp).value();
  if (s.csi_amp.empty()) {
    return Malformed(line_no, "csi must be non-empty");
  }
  for (double a : s.csi_amp) {
    if (a < 0.0) {
      return Malformed(line_no, "csi amplitudes must be >= 0");
    }
  }
  if (static_cast<int>(s.csi_amp.size()) != meta.subcarrier_count) {
    return MakeError(ErrorCode::kSubcarrierCountMismatch,
                     "line " + std::to_string(line_no) + ": expected " +
                         std::to_string(meta.subcarrier_count) + " amplitudes, got " +
                         std::to_string(s.csi_amp.size()),
                     line_no);
  }
  const auto phase = doc.find("phase");
  if (phase != doc.end() && !phase->is_null()) {
    auto ph = ParseNumberArray(*phase, line_no, "phase");
    if (!ph) {
      return ph.error();
    }
    s.csi_phase = std::move(ph).value();
    if (s.csi_phase.size() != s.csi_amp.size()) {
      return MakeError(ErrorCode::kSubcarrierCountMismatch,
                       "line " + std::to_string(line_no) + ": phase length differs from csi",
                       line_no);
    }
  }
  return s;
}

void AppendDouble(std::string &out, double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, res.ptr);
}

void AppendInt(std::string &out, std::int64_t x) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, res.ptr);
}

void AppendArray(std::string &out, const std::vector<double> &xs) {
  out.push_back('[');
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i != 0) {
      out.push_back(',');
    }
    AppendDouble(out, xs[i]);
  }
  out.push_back(']');
}

} // namespace

Result<Aggregation> ParseAggregation(std::string_view text) {
  if (text == "mean") {
    return Aggregation::Mean();
  }
  if (text == "rssi") {
    return Aggregation::Rssi();
  }
  if (text.substr(0, 4) == "sub:") {
    int k = -1;
    const auto digits = text.substr(4);
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (res.ec == std::errc() && res.ptr == digits.data() + digits.size() && k >= 0) {
      return Aggregation::Single(k);
    }
  }
  return MakeError(ErrorCode::kInvalidArgument,
                   "aggregation must be mean, rssi or sub:<k>, got '" + std::string(text) + "'");
}

Result<Trace> ParseTrace(std::istream &in) {
  Trace trace;
  std::string line;
  std::int64_t line_no = 0;
  bool have_meta = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) {
      continue;
    }
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error &e) {
      if (!have_meta) {
        return MakeError(ErrorCode::kMissingMeta, "first line is not a meta object", line_no);
      }
      return Malformed(line_no, e.what());
    }
    if (!have_meta) {
      auto meta = ParseMeta(doc, line_no);
      if (!meta) {
        return meta.error();
      }
      trace.meta = std::move(meta).value();
      have_meta = true;
      continue;
    }
    auto sample = ParseSample(doc, trace.meta, line_no);
    if (!sample) {
      return sample.error();
    }
    if (!trace.samples.empty() && sample->t_us <= trace.samples.back().t_us) {
      return MakeError(ErrorCode::kNonMonotonicTimestamp,
                       "line " + std::to_string(line_no) + ": t_us " +
                           std::to_string(sample->t_us) + " does not increase",
                       line_no);
    }
    trace.samples.push_back(std::move(sample).value());
  }
  if (!have_meta) {
    return MakeError(ErrorCode::kMissingMeta, "trace has no meta line");
  }
  return trace;
}

Result<Trace> ParseTrace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseTrace(in);
}

void WriteTrace(std::ostream &out, const Trace &trace) {
  json meta = {{"carrier_hz", trace.meta.carrier_hz},
               {"subcarrier_count", trace.meta.subcarrier_count},
               {"subcarrier_spacing_hz", trace.meta.subcarrier_spacing_hz},
               {"nominal_rate_pps", trace.meta.nominal_rate_pps},
               {"label", trace.meta.label}};
  out << json{{"meta", meta}}.dump() << '\n';
  std::string line;
  for (const RawSample &s : trace.samples) {
    line.clear();
    line += "{\"t_us\":";
    AppendInt(line, s.t_us);
    line += ",\"rssi_db\":";
    AppendDouble(line, s.rssi_db);
    line += ",\"csi\":";
    AppendArray(line, s.csi_amp);
    if (!s.csi_phase.empty()) {
      line += ",\"phase\":";
      AppendArray(line, s.csi_phase);
    }
    line += "}\n";
    out << line;
  }
}

std::string WriteTrace(const Trace &trace) {
  std::ostringstream out;
  WriteTrace(out, trace);
  return out.str();
}

Result<Series> Aggregate(const Trace &trace, Aggregation method) {
  if (trace.samples.empty()) {
    return MakeError(ErrorCode::kEmptyTrace, "trace has no samples");
  }
  if (method.kind == Aggregation::Kind::kSingleSubcarrier &&
      (method.index < 0 || method.index >= trace.meta.subcarrier_count)) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "subcarrier index " + std::to_string(method.index) + " out of range");
  }
  Series out;
  out.t_us.reserve(trace.samples.size());
  out.values.reserve(trace.samples.size());
  for (const RawSample &s : trace.samples) {
    out.t_us.push_back(s.t_us);
    switch (method.kind) {
    case Aggregation::Kind::kMeanSubcarrier:
      out.values.push_back(MeanAmplitude(s.csi_amp));
      break;
    case Aggregation::Kind::kSingleSubcarrier:
      out.values.push_back(s.csi_amp[static_cast<std::size_t>(method.index)]);
      break;
    case Aggregation::Kind::kRssiLinear:
      out.values.push_back(std::pow(10.0, s.rssi_db / 20.0));
      break;
    }
  }
  return out;
}

double MeanAmplitude(std::span<const double> amp) {
  thread_local std::vector<double> scratch;
  scratch.assign(amp.begin(), amp.end());
  std::sort(scratch.begin(), scratch.end());
  double sum = 0.0;
  for (double a : scratch) {
    sum += a;
  }
  return sum / static_cast<double>(scratch.size());
}

double SubcarrierWavelength(const TraceMeta &meta, int k) {
  return kSpeedOfLight / (meta.carrier_hz + k * meta.subcarrier_spacing_hz);
}

} // namespace wigest
