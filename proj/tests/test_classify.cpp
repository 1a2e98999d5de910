#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "wigest/classify.hpp"
#include "wigest/synth.hpp"

using namespace wigest;

namespace {

using T = Trend;

PeakGroup GroupOf(const std::vector<double> &heights) {
  PeakGroup g;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    g.peaks.push_back({1000.0 + 100.0 * static_cast<double>(i), heights[i], Polarity::kCrest});
  }
  g.span = {g.peaks.front().t_ms, g.peaks.back().t_ms};
  return g;
}

Gesture GestureOf(const std::vector<double> &heights) { return ClassifyGroup(GroupOf(heights)).gesture; }

std::vector<Trend> Pattern(const std::vector<double> &heights) {
  auto p = TrendPattern(heights);
  REQUIRE(p.ok());
  return *p;
}

std::vector<Trend> ReversedFlipped(std::vector<Trend> p) {
  std::reverse(p.begin(), p.end());
  for (Trend &t : p) {
    t = t == T::kUp ? T::kDown : T::kUp;
  }
  return p;
}

// Random sequence of 1-5 monotone segments with jitter.
std::vector<double> SegmentSequence(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> segs(1, 5);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_real_distribution<double> step(0.0, 2.0);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::vector<double> h{std::uniform_real_distribution<double>(0.5, 5.0)(rng)};
  bool up = rng() % 2 == 0;
  for (int s = segs(rng); s > 0; --s, up = !up) {
    for (int k = len(rng); k > 0; --k) {
      h.push_back(std::max(0.01, h.back() + (up ? 1.0 : -1.0) * step(rng) + jitter(rng)));
    }
  }
  while (h.size() < 3) {
    h.push_back(h.back() + 1.0);
  }
  return h;
}

std::vector<double> UniformSequence(std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> len(3, 30);
  std::uniform_real_distribution<double> v(0.0, 10.0);
  std::vector<double> h(len(rng));
  for (double &x : h) {
    x = v(rng);
  }
  return h;
}

// Small integers so ties and flat runs are common.
std::vector<double> IntegerSequence(std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> len(3, 12);
  std::uniform_int_distribution<int> v(0, 4);
  std::vector<double> h(len(rng));
  for (double &x : h) {
    x = v(rng);
  }
  return h;
}

} // namespace

TEST_CASE("trend pattern examples") {
  CHECK(Pattern({1, 2, 3, 4}) == std::vector<Trend>{T::kUp});
  CHECK(Pattern({4, 3, 2, 1}) == std::vector<Trend>{T::kDown});
  CHECK(Pattern({1, 2, 3, 2.95, 4}) == std::vector<Trend>{T::kUp});
  CHECK(Pattern({3, 3, 3, 3}).empty());
  CHECK(TrendPattern(std::vector<double>{1, 2}).error().code == ErrorCode::kTooFewPeaks);
}

TEST_CASE("median smoothing removes a single-peak spike in long sequences") {
  CHECK(Pattern({1, 2, 3, 9, 4, 5, 6, 7}) == std::vector<Trend>{T::kUp});
}

TEST_CASE("classify group examples") {
  CHECK(GestureOf({1, 2, 3, 4, 5}) == Gesture::kPush);
  CHECK(GestureOf({5, 4, 3, 2, 1}) == Gesture::kPull);
  CHECK(GestureOf({2, 4, 6, 4, 2}) == Gesture::kPunch);
  CHECK(GestureOf({1, 4, 2, 5}) == Gesture::kLever);
  CHECK(GestureOf({3, 3, 3, 3}) == Gesture::kUnknown);
  CHECK(GestureOf({1, 2}) == Gesture::kUnknown);
  CHECK(GestureOf({5, 1, 5, 1, 5, 1, 5, 1, 5}) == Gesture::kUnknown);
}

TEST_CASE("classify group fills the event") {
  const GestureEvent e = ClassifyGroup(GroupOf({1, 2, 3, 4, 5}));
  CHECK(e.peak_count == 5);
  CHECK(e.max_height == 5.0);
  CHECK(e.start_ms == 1000.0);
  CHECK(e.end_ms == 1400.0);
  CHECK(e.peak_times_ms.size() == 5);
  CHECK(e.pattern == std::vector<Trend>{T::kUp});
}

TEST_CASE("pattern mapping is total") {
  CHECK(GestureForPattern(std::vector<Trend>{}) == Gesture::kUnknown);
  CHECK(GestureForPattern(std::vector<Trend>{T::kDown, T::kUp}) == Gesture::kUnknown);
  CHECK(GestureForPattern(std::vector<Trend>{T::kDown, T::kUp, T::kDown}) == Gesture::kUnknown);
  CHECK(GestureForPattern(std::vector<Trend>{T::kUp, T::kDown, T::kUp, T::kDown}) ==
        Gesture::kUnknown);
}

TEST_CASE("gesture names round trip") {
  for (Gesture g : {Gesture::kPush, Gesture::kPull, Gesture::kPunch, Gesture::kLever,
                    Gesture::kUnknown}) {
    CHECK(*ParseGesture(GestureName(g)) == g);
  }
  CHECK(ParseGesture("wave").error().code == ErrorCode::kBadKind);
}

TEST_CASE("property: scale invariance, reversal duality and totality") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  const double dyadic[] = {0.125, 0.5, 2.0, 64.0};
  int checked = 0;
  for (int i = 0; i < 12000; ++i) {
    const int family = i % 3;
    const std::vector<double> h = family == 0   ? SegmentSequence(rng)
                                  : family == 1 ? UniformSequence(rng)
                                                : IntegerSequence(rng);
    const std::vector<Trend> p = Pattern(h);
    const Gesture g = GestureOf(h);

    // Totality: runs alternate and the label follows from the pattern alone.
    for (std::size_t k = 1; k < p.size(); ++k) {
      REQUIRE(p[k] != p[k - 1]);
    }
    REQUIRE(g == GestureForPattern(p));

    // Scale invariance; integer sequences sit on exact hysteresis ties, so they
    // are scaled by powers of two only.
    const double c = family == 2 ? dyadic[i % 4] : scale(rng);
    std::vector<double> scaled = h;
    for (double &x : scaled) {
      x *= c;
    }
    REQUIRE(Pattern(scaled) == p);
    REQUIRE(GestureOf(scaled) == g);

    // Reversal duality.
    std::vector<double> rev(h.rbegin(), h.rend());
    const std::vector<Trend> pr = Pattern(rev);
    REQUIRE(pr == ReversedFlipped(p));
    const Gesture gr = GestureOf(rev);
    if (g == Gesture::kPush) {
      REQUIRE(gr == Gesture::kPull);
    } else if (g == Gesture::kPull) {
      REQUIRE(gr == Gesture::kPush);
    } else if (g == Gesture::kPunch) {
      REQUIRE(gr == Gesture::kPunch);
    } else if (g == Gesture::kLever) {
      REQUIRE(pr == std::vector<Trend>{T::kDown, T::kUp, T::kDown});
      REQUIRE(gr == Gesture::kUnknown);
    }
    ++checked;
  }
  CHECK(checked >= 10000);
}

TEST_CASE("classify trace: noiseless idle gives no events") {
  SimConfig cfg;
  cfg.tail_s = 10.0;
  auto series = SynthSeries(cfg, {}, Aggregation::Mean());
  REQUIRE(series.ok());
  auto events = ClassifySeries(*series);
  REQUIRE(events.ok());
  CHECK(events->empty());
}

TEST_CASE("classify trace: one padded gesture gives one matching event") {
  SimConfig cfg;
  GeometryConfig geom;
  const MotionKind kinds[] = {MotionKind::kPush, MotionKind::kPull, MotionKind::kPunch,
                              MotionKind::kLever};
  const Gesture want[] = {Gesture::kPush, Gesture::kPull, Gesture::kPunch, Gesture::kLever};
  for (int k = 0; k < 4; ++k) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      cfg.seed = seed;
      cfg.tail_s = geom.pad_s;
      const GestureScript script = SingleGestureScript(kinds[k], geom, cfg.carrier_hz, seed);
      auto series = SynthSeries(cfg, script, Aggregation::Mean(), geom.shape);
      REQUIRE(series.ok());
      auto events = ClassifySeries(*series);
      REQUIRE(events.ok());
      INFO(MotionKindName(kinds[k]), " seed ", seed);
      REQUIRE(events->size() == 1);
      const GestureEvent &e = (*events)[0];
      CHECK(e.gesture == want[k]);
      CHECK(e.start_ms < (script[0].start_s + script[0].duration_s) * 1000.0);
      CHECK(e.end_ms > script[0].start_s * 1000.0);
      CHECK(e.start_ms < e.end_ms);
      CHECK(e.peak_count >= 3);
    }
  }
}

TEST_CASE("classify trace: all four gestures with gaps come out in order") {
  SimConfig cfg;
  GeometryConfig geom;
  const Gesture want[] = {Gesture::kPush, Gesture::kPull, Gesture::kPunch, Gesture::kLever};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    auto series = SynthSeries(cfg, SessionScript(geom, cfg.carrier_hz, 1, seed),
                              Aggregation::Mean(), geom.shape);
    REQUIRE(series.ok());
    auto events = ClassifySeries(*series);
    REQUIRE(events.ok());
    REQUIRE(events->size() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK((*events)[static_cast<std::size_t>(k)].gesture == want[k]);
    }
  }
}

TEST_CASE("classify trace: empty series") {
  CHECK(ClassifySeries(Series{}).error().code == ErrorCode::kEmptyTrace);
}

TEST_CASE("classify trace: gaps split the trace into parts") {
  SimConfig cfg;
  cfg.seed = 3;
  GeometryConfig geom;
  const GestureScript script = SingleGestureScript(MotionKind::kPush, geom, cfg.carrier_hz, 3);
  auto series = SynthSeries(cfg, script, Aggregation::Mean(), geom.shape);
  REQUIRE(series.ok());
  Series joined = *series;
  const std::int64_t shift = joined.t_us.back() + 2'000'000;
  for (std::size_t i = 0; i < series->size(); ++i) {
    joined.t_us.push_back(series->t_us[i] + shift);
    joined.values.push_back(series->values[i]);
  }
  auto events = ClassifySeries(joined);
  REQUIRE(events.ok());
  REQUIRE(events->size() == 2);
  CHECK((*events)[0].gesture == Gesture::kPush);
  CHECK((*events)[1].gesture == Gesture::kPush);
  CHECK((*events)[1].start_ms > static_cast<double>(shift) / 1000.0);
}
