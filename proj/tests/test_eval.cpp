#include <doctest.h>

#include <json.hpp>

#include <string>
#include <vector>

#include "wigest/config.hpp"
#include "wigest/eval.hpp"

using namespace wigest;

namespace {

GestureEvent Event(Gesture g, double start_ms, double end_ms) {
  GestureEvent e;
  e.gesture = g;
  e.start_ms = start_ms;
  e.end_ms = end_ms;
  e.peak_count = 5;
  for (double t = start_ms; t <= end_ms; t += 150.0) {
    e.peak_times_ms.push_back(t);
  }
  return e;
}

std::vector<Label> FourLabels() {
  return {{1.0, MotionKind::kPush, 1.0},
          {4.0, MotionKind::kPull, 1.0},
          {7.0, MotionKind::kPunch, 2.0},
          {11.0, MotionKind::kLever, 1.5}};
}

std::vector<GestureEvent> PerfectEvents() {
  return {Event(Gesture::kPush, 1000, 2000), Event(Gesture::kPull, 4000, 5000),
          Event(Gesture::kPunch, 7000, 9000), Event(Gesture::kLever, 11000, 12500)};
}

} // namespace

TEST_CASE("evaluate: perfect predictions") {
  auto r = Evaluate(FourLabels(), PerfectEvents());
  REQUIRE(r.ok());
  CHECK(r->overall_accuracy == 100.0);
  CHECK(r->n_trials == 4);
  CHECK(r->false_positives == 0);
  for (double a : r->per_gesture_accuracy) {
    CHECK(a == 100.0);
  }
}

TEST_CASE("evaluate: every push predicted as pull") {
  auto events = PerfectEvents();
  events[0].gesture = Gesture::kPull;
  auto r = Evaluate(FourLabels(), events);
  REQUIRE(r.ok());
  CHECK(r->per_gesture_accuracy[0] == 0.0);
  CHECK(r->confusion[1][0] == 1);
  CHECK(r->overall_accuracy == 75.0);
}

TEST_CASE("evaluate: misses land in the unknown row and extras are false positives") {
  std::vector<GestureEvent> events = PerfectEvents();
  events.erase(events.begin() + 2);
  events.push_back(Event(Gesture::kPush, 20000, 21000));
  auto r = Evaluate(FourLabels(), events);
  REQUIRE(r.ok());
  CHECK(r->confusion[4][2] == 1);
  CHECK(r->false_positives == 1);
}

TEST_CASE("matching needs half the scripted duration and uses each event once") {
  const std::vector<Label> labels{{1.0, MotionKind::kPush, 1.0}, {1.5, MotionKind::kPull, 1.0}};
  CHECK(MatchEvents(labels, std::vector<GestureEvent>{Event(Gesture::kPush, 1600, 3000)})[0] == -1);
  const auto m = MatchEvents(labels, std::vector<GestureEvent>{Event(Gesture::kPush, 1000, 2500)});
  CHECK(m[0] == 0);
  CHECK(m[1] == -1);
  const std::vector<Label> idle{{0.0, MotionKind::kIdle, 5.0}};
  CHECK(Evaluate(idle, PerfectEvents()).error().code == ErrorCode::kMissingLabels);
}

TEST_CASE("report JSON and CSV carry all cells") {
  auto r = Evaluate(FourLabels(), PerfectEvents());
  REQUIRE(r.ok());
  const auto doc = nlohmann::json::parse(ReportToJson(*r));
  for (const char *key :
       {"n_trials", "overall_accuracy", "per_gesture_accuracy", "confusion", "false_positives"}) {
    CHECK(doc.contains(key));
  }
  const auto &counts = doc["confusion"]["counts"];
  REQUIRE(counts.size() == 5);
  int cells = 0;
  for (const auto &row : counts) {
    cells += static_cast<int>(row.size());
  }
  CHECK(cells == 20);
  CHECK(doc["confusion"]["predicted"].back() == "unknown");
  const std::string csv = ReportToCsv(*r);
  CHECK(csv.rfind("predicted,push,pull,punch,lever\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(csv.find("unknown,0,0,0,0\n") != std::string::npos);
}

TEST_CASE("corpus evaluation: noiseless corpus is perfect and thread-count independent") {
  Config cfg;
  auto one = EvaluateCorpus(cfg, 5, 11, Aggregation::Mean(), 1);
  auto many = EvaluateCorpus(cfg, 5, 11, Aggregation::Mean(), 3);
  REQUIRE(one.ok());
  REQUIRE(many.ok());
  CHECK(one->overall_accuracy == 100.0);
  CHECK(one->n_trials == 20);
  CHECK(ReportToJson(*one) == ReportToJson(*many));
  CHECK(EvaluateCorpus(cfg, 0, 11).error().code == ErrorCode::kInvalidArgument);
}

TEST_CASE("false-positive evaluation") {
  GateConfig gate;
  std::vector<GestureEvent> events;
  // Lever at 0.5 min arms single, a lever pair at 3 min arms double.
  events.push_back(Event(Gesture::kLever, 30000, 30900));
  events.push_back(Event(Gesture::kPush, 40000, 41000));
  events.push_back(Event(Gesture::kUnknown, 45000, 46000));
  events.push_back(Event(Gesture::kLever, 180000, 180900));
  events.push_back(Event(Gesture::kLever, 182000, 182900));
  events.push_back(Event(Gesture::kPunch, 185000, 186000));
  auto fp = FpEvaluate(events, 4.0, gate);
  REQUIRE(fp.ok());
  CHECK(fp->count[0] == 5);
  CHECK(fp->count[1] == 3);
  CHECK(fp->count[2] == 1);
  CHECK(fp->rate_per_min[0] == 1.25);
  REQUIRE(fp->timeline.size() == 4);
  CHECK(fp->timeline[0] == std::array<int, 3>{2, 1, 0});
  CHECK(fp->timeline[3] == std::array<int, 3>{5, 3, 1});
  const std::string csv = TimelineToCsv(*fp);
  CHECK(csv.rfind("minute,none,single,double\n1,2,1,0\n", 0) == 0);
  const auto doc = nlohmann::json::parse(FpToJson(*fp));
  CHECK(doc["events"]["double"] == 1);
  CHECK(FpEvaluate(events, 0.0, gate).error().code == ErrorCode::kZeroDuration);
}

TEST_CASE("false-positive timeline has one row per minute") {
  auto fp = FpEvaluate({}, 60.0, GateConfig{});
  REQUIRE(fp.ok());
  CHECK(fp->timeline.size() == 60);
  CHECK(fp->rate_per_min == std::array<double, 3>{0.0, 0.0, 0.0});
}

TEST_CASE("rate sweep: one rate gives one row") {
  Config cfg;
  const double rates[] = {200.0};
  auto rows = RateSweep(cfg, rates, 2, 5);
  REQUIRE(rows.ok());
  REQUIRE(rows->size() == 1);
  CHECK((*rows)[0].rate_pps == 200.0);
  CHECK((*rows)[0].accuracy_pct == 100.0);
  CHECK(RateSweepToCsv(*rows) == "rate_pps,accuracy_pct\n200,100\n");
  const double bad[] = {0.0};
  CHECK(RateSweep(cfg, bad, 2, 5).error().code == ErrorCode::kInvalidArgument);
}

TEST_CASE("config overrides") {
  Config cfg;
  REQUIRE(ApplyOverrides(cfg, R"({"sim":{"noise_sigma":0.2,"burst_gap_ms":{"gap_ms":80,"prob_per_s":0.1}},
                                  "gate":{"mode":"double"},"peaks":{"min_group_size":4},
                                  "shape":{"walk_pause_s":0}})")
              .ok());
  CHECK(cfg.sim.noise_sigma == 0.2);
  REQUIRE(cfg.sim.burst_gaps.has_value());
  CHECK(cfg.sim.burst_gaps->gap_ms == 80.0);
  CHECK(cfg.gate.mode == GateMode::kDoubleLever);
  CHECK(cfg.pipeline.peaks.min_group_size == 4);
  CHECK(cfg.geometry.shape.walk_pause_s == 0.0);

  const Config before = cfg;
  CHECK(ApplyOverrides(cfg, R"({"sim":{"noise":1}})").error().code == ErrorCode::kInvalidArgument);
  CHECK(ApplyOverrides(cfg, R"({"radio":{}})").error().code == ErrorCode::kInvalidArgument);
  CHECK(ApplyOverrides(cfg, R"({"sim":{"noise_sigma":"high"}})").error().code ==
        ErrorCode::kInvalidArgument);
  CHECK(ApplyOverrides(cfg, R"({"gate":{"lever_period_min_ms":900}})").error().code ==
        ErrorCode::kInvalidArgument);
  CHECK(ApplyOverrides(cfg, "[1]").error().code == ErrorCode::kInvalidArgument);
  CHECK(ApplyOverrides(cfg, "{").error().code == ErrorCode::kInvalidArgument);
  CHECK(cfg.sim.noise_sigma == before.sim.noise_sigma);
  CHECK(cfg.gate.lever_period_min_ms == before.gate.lever_period_min_ms);
}
