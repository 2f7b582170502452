#include <gtest/gtest.h>

#include <sstream>

#include "hgreg/resolver/resolver.hpp"

using namespace hgreg;

namespace {

Chart chart(long r, std::vector<long> m, long l = 0) {
  Chart c;
  c.r = r;
  c.m = std::move(m);
  c.l = l;
  c.normalize();
  return c;
}

bool has_shape(const std::vector<Chart>& charts, const Chart& want) {
  return std::any_of(charts.begin(), charts.end(), [&](const Chart& c) { return c.same_shape(want); });
}

std::vector<std::string> shapes(const std::vector<Chart>& charts) {
  std::vector<std::string> out;
  for (const auto& c : charts) out.push_back(c.shape() + " " + c.origin);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Resolver, InitialChartsForCurves) {
  auto charts = initial_charts(std::vector<long>{2, 2});
  EXPECT_TRUE(has_shape(charts, chart(1, {2})));
  // one root direction with two choices of nu, times two orderings
  EXPECT_EQ(charts.size(), 4u);
}

TEST(Resolver, InitialChartsForSurfaces) {
  auto charts = initial_charts(std::vector<long>{2, 2, 2});
  EXPECT_TRUE(has_shape(charts, chart(2, {2})));
  EXPECT_TRUE(has_shape(charts, chart(1, {2, 2})));
  EXPECT_TRUE(has_shape(charts, chart(1, {2}, 1)));
  for (const auto& c : charts) EXPECT_EQ(c.dimension(), 3);
}

TEST(Resolver, UnitExponentGivesFewerCharts) {
  EXPECT_LT(initial_charts(std::vector<long>{1, 2}).size(), initial_charts(std::vector<long>{2, 2}).size());
  EXPECT_LT(initial_charts(std::vector<long>{1, 2, 2}).size(), initial_charts(std::vector<long>{2, 2, 2}).size());
}

TEST(Resolver, Classification) {
  EXPECT_EQ(classify(chart(1, {3, 2})), ChartClass::c);
  EXPECT_EQ(classify(chart(3, {})), ChartClass::d);
  EXPECT_EQ(classify(chart(2, {1})), ChartClass::b);
  EXPECT_EQ(classify(chart(2, {1, 1})), ChartClass::a);
  EXPECT_EQ(classify(chart(2, {2, 1})), ChartClass::non_standard);
  EXPECT_EQ(classify(chart(2, {2})), ChartClass::non_standard);
}

TEST(Resolver, BlowUpOfAllOnes) {
  auto [u1, u2] = blow_up(chart(2, {1, 1}), 1, 1);
  EXPECT_EQ(u1.r, 1);
  EXPECT_TRUE(is_terminal(u1));
  EXPECT_TRUE(u2.same_shape(chart(2, {1}, 1)));
  EXPECT_EQ(classify(u2), ChartClass::b);
}

TEST(Resolver, BlowUpOfSquare) {
  auto [u1, u2] = blow_up(chart(2, {2}), 1, 1);
  EXPECT_TRUE(u1.same_shape(chart(1, {2, 1})));
  EXPECT_EQ(classify(u1), ChartClass::c);
  EXPECT_TRUE(u2.same_shape(chart(2, {1})));
  EXPECT_EQ(classify(u2), ChartClass::b);
}

TEST(Resolver, BlowUpPreservesDimension) {
  for (const auto& c : {chart(3, {4, 2, 1}), chart(2, {3}, 2), chart(4, {1, 1, 1})})
    for (long b = 1; b <= c.s(); ++b)
      for (long a = 1; a <= c.r; ++a) {
        auto [u1, u2] = blow_up(c, a, b);
        EXPECT_EQ(u1.dimension(), c.dimension());
        EXPECT_EQ(u2.dimension(), c.dimension());
        EXPECT_LT(measure(u1), measure(c));
        EXPECT_LT(measure(u2), measure(c));
      }
}

TEST(Resolver, InvalidCenter) {
  try {
    blow_up(chart(2, {2}), 3, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_center);
  }
  EXPECT_THROW(blow_up(chart(2, {2}), 1, 2), Error);
  EXPECT_THROW(blow_up(chart(1, {2}), 1, 1), Error);
}

TEST(Resolver, TerminatesWithStandardCharts) {
  for (const auto& n : std::vector<std::vector<long>>{{2, 2}, {2, 2, 2}, {2, 3, 4}, {3, 3, 3, 3}, {1, 2, 3}}) {
    auto r = resolve(n);
    EXPECT_TRUE(r.all_terminal_standard());
    EXPECT_TRUE(r.measure_decreasing());
    for (const auto& c : r.terminal) EXPECT_EQ(c.dimension(), static_cast<long>(n.size()));
  }
}

TEST(Resolver, DeterministicTrace) {
  auto a = resolve(std::vector<long>{2, 2, 2}), b = resolve(std::vector<long>{2, 2, 2});
  EXPECT_EQ(a.trace_jsonl(), b.trace_jsonl());
  EXPECT_GT(a.steps.size(), 0u);
}

TEST(Resolver, OrderIndependence) {
  for (const auto& n : std::vector<std::vector<long>>{{2, 2, 2}, {2, 3, 4}, {3, 3, 3, 3}}) {
    auto fifo = resolve(n, 1'000'000, WorklistOrder::fifo);
    auto lifo = resolve(n, 1'000'000, WorklistOrder::lifo);
    EXPECT_EQ(shapes(fifo.terminal), shapes(lifo.terminal));
    EXPECT_EQ(fifo.steps.size(), lifo.steps.size());
  }
}

TEST(Resolver, StepLimit) {
  try {
    resolve(std::vector<long>{3, 3, 3, 3}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::step_limit_exceeded);
  }
}

TEST(Resolver, TraceRecords) {
  auto r = resolve(std::vector<long>{2, 2});
  std::istringstream in(r.trace_jsonl());
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    for (const char* key : {"chart_before", "center", "charts_after", "measure_before", "measure_after"})
      EXPECT_TRUE(j.contains(key)) << key;
    ++count;
  }
  EXPECT_EQ(count, r.steps.size());
}
