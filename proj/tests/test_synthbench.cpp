#include <doctest.h>

#include <set>

#include "tss/synthbench.hpp"

using namespace tss;

namespace {

GeneratorConfig small_cfg() {
  GeneratorConfig g;
  g.n_series = 60;
  g.length = 200;
  g.seed = 7;
  g.evolving_rate = g.surge_up_rate = g.surge_down_rate = g.out_of_bounds_rate = 0.3;
  return g;
}

Summary summary_of(std::vector<std::tuple<std::string, int, int>> windows) {
  Summary s;
  for (auto& [id, start, end] : windows) {
    SummaryEntry e;
    e.window.series_id = id;
    e.window.start = start;
    e.window.end = end;
    e.window.anchor = start;
    s.entries.push_back(std::move(e));
  }
  return s;
}

}  // namespace

TEST_CASE("generate_synthetic produces the configured shape with all event types") {
  auto data = generate_synthetic(small_cfg());
  CHECK(data.dataset.series.size() == 60);
  for (const auto& s : data.dataset.series) CHECK(s.length() == 200);
  std::set<std::string> types;
  for (const auto& a : data.annotations) types.insert(a.event_type);
  CHECK(types ==
        std::set<std::string>{"evolving", "surge_up", "surge_down", "out_of_bounds"});
}

TEST_CASE("generate_synthetic with zero rates gives a pure seasonal dataset") {
  auto cfg = small_cfg();
  cfg.evolving_rate = cfg.surge_up_rate = cfg.surge_down_rate = cfg.out_of_bounds_rate = 0;
  auto data = generate_synthetic(cfg);
  CHECK(data.annotations.empty());
  // values stay within the norm band plus noise tails
  for (const auto& s : data.dataset.series)
    for (double v : s.values) CHECK(std::abs(v) < cfg.amplitude + 6 * cfg.noise_sigma);
}

TEST_CASE("generate_synthetic is deterministic per seed") {
  auto d1 = generate_synthetic(small_cfg());
  auto d2 = generate_synthetic(small_cfg());
  REQUIRE(d1.dataset.series.size() == d2.dataset.series.size());
  for (std::size_t s = 0; s < d1.dataset.series.size(); ++s)
    CHECK(d1.dataset.series[s].values == d2.dataset.series[s].values);  // bitwise
  REQUIRE(d1.annotations.size() == d2.annotations.size());

  auto other = small_cfg();
  other.seed = 8;
  auto d3 = generate_synthetic(other);
  bool any_diff = false;
  for (std::size_t s = 0; s < d1.dataset.series.size() && !any_diff; ++s)
    any_diff = d1.dataset.series[s].values != d3.dataset.series[s].values;
  CHECK(any_diff);
}

TEST_CASE("injected annotations never overlap within a series") {
  auto cfg = small_cfg();
  cfg.evolving_rate = cfg.surge_up_rate = cfg.surge_down_rate = cfg.out_of_bounds_rate = 1.0;
  auto data = generate_synthetic(cfg);
  for (std::size_t i = 0; i < data.annotations.size(); ++i)
    for (std::size_t j = i + 1; j < data.annotations.size(); ++j) {
      const auto& a = data.annotations[i];
      const auto& b = data.annotations[j];
      if (a.series_id != b.series_id) continue;
      CHECK_FALSE(spans_overlap(a.start, a.end, b.start, b.end));
    }
}

TEST_CASE("out-of-bounds events actually exceed the norm thresholds") {
  auto cfg = small_cfg();
  auto data = generate_synthetic(cfg);
  for (const auto& a : data.annotations) {
    if (a.event_type != "out_of_bounds") continue;
    const auto& s = data.dataset.at(a.series_id);
    bool exceeded = false;
    for (int t = a.start; t <= a.end; ++t)
      if (s.values[t] > cfg.tau_high() || s.values[t] < cfg.tau_low()) exceeded = true;
    CHECK(exceeded);
  }
}

TEST_CASE("generator validation") {
  auto cfg = small_cfg();
  cfg.evolving_rate = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  auto cfg2 = small_cfg();
  cfg2.n_series = 0;
  CHECK_THROWS_AS(cfg2.validate(), ValidationError);
}

TEST_CASE("event_coverage counts event types hit") {
  std::vector<EventAnnotation> anns{{"a", 10, 20, "t1"},
                                    {"a", 40, 50, "t2"},
                                    {"b", 10, 20, "t3"},
                                    {"b", 40, 50, "t4"}};
  SUBCASE("3 of 4 types hit") {
    auto s = summary_of({{"a", 15, 25}, {"a", 35, 45}, {"b", 0, 10}});
    CHECK(event_coverage(s, anns) == doctest::Approx(0.75));
  }
  SUBCASE("no hits") {
    auto s = summary_of({{"a", 60, 70}});
    CHECK(event_coverage(s, anns) == 0.0);
  }
  SUBCASE("empty annotations error") {
    auto s = summary_of({{"a", 0, 5}});
    CHECK_THROWS_AS(event_coverage(s, {}), ValidationError);
  }
}

TEST_CASE("event_examples counts windows hitting any event") {
  std::vector<EventAnnotation> anns{{"a", 10, 20, "t1"}, {"a", 14, 14, "t2"}};
  SUBCASE("all windows hit") {
    auto s = summary_of({{"a", 12, 16}, {"a", 18, 25}});
    CHECK(event_examples(s, anns) == 1.0);
  }
  SUBCASE("a window with two events still counts once") {
    auto s = summary_of({{"a", 12, 16}, {"a", 50, 60}});
    CHECK(event_examples(s, anns) == doctest::Approx(0.5));
  }
  SUBCASE("1 of 6") {
    auto s = summary_of({{"a", 12, 16}, {"a", 30, 35}, {"a", 40, 45},
                         {"a", 50, 55}, {"a", 60, 65}, {"a", 70, 75}});
    CHECK(event_examples(s, anns) == doctest::Approx(1.0 / 6));
  }
  SUBCASE("no hits") {
    auto s = summary_of({{"a", 30, 35}});
    CHECK(event_examples(s, anns) == 0.0);
  }
  SUBCASE("empty summary error") {
    Summary s;
    CHECK_THROWS_AS(event_examples(s, anns), ValidationError);
  }
}

TEST_CASE("capture metrics are monotone when windows are added") {
  std::vector<EventAnnotation> anns{{"a", 10, 20, "t1"}, {"a", 40, 50, "t2"}};
  auto s1 = summary_of({{"a", 0, 5}});
  auto s2 = s1;
  s2.entries.push_back(summary_of({{"a", 15, 18}}).entries[0]);
  CHECK(event_coverage(s2, anns) >= event_coverage(s1, anns));
  // event_examples is a per-window fraction; coverage is the monotone one
  CHECK(event_coverage(s1, anns) >= 0.0);
  CHECK(event_coverage(s2, anns) <= 1.0);
  CHECK(event_examples(s2, anns) >= 0.0);
  CHECK(event_examples(s2, anns) <= 1.0);
}

TEST_CASE("bench_scaling emits rows and validates input") {
  GeneratorConfig base = small_cfg();
  base.length = 100;
  std::vector<long> sizes{1000, 3000};
  std::vector<std::string> methods{"random"};
  auto rows = bench_scaling(sizes, methods, 2, base);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.wall_ms >= 0.0);

  std::vector<long> bad{3000, 1000};
  CHECK_THROWS_AS(bench_scaling(bad, methods, 1, base), ValidationError);
  std::vector<std::string> badm{"protodash"};
  CHECK_THROWS_AS(bench_scaling(sizes, badm, 1, base), ValidationError);
}

TEST_CASE("fit helpers") {
  std::vector<double> x{1, 2, 4, 8}, y{3, 6, 12, 24};
  CHECK(loglog_slope(x, y) == doctest::Approx(1.0));
  CHECK(linear_r2(x, y) == doctest::Approx(1.0));
  std::vector<double> quad{1, 4, 16, 64};
  CHECK(loglog_slope(x, quad) == doctest::Approx(2.0));
}
