#include <gtest/gtest.h>

#include <cmath>

#include <limits>

#include "eqstop/error.hpp"
#include "eqstop/stop_set.hpp"

using namespace eqstop;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(StopSet, CanonicalMerging) {
  const ThresholdPolicy p({{2.0, 3.0}, {0.5, 1.0}, {1.0, 1.5}, {2.5, kInf}});
  ASSERT_EQ(p.intervals().size(), 2u);
  EXPECT_EQ(p.intervals()[0], (Interval{0.5, 1.5}));
  EXPECT_EQ(p.intervals()[1], (Interval{2.0, kInf}));
  EXPECT_EQ(p, ThresholdPolicy({{0.5, 1.5}, {2.0, kInf}}));
}

TEST(StopSet, MembershipExactAtEndpoints) {
  const ThresholdPolicy p({{0.5, 1.5}});
  EXPECT_TRUE(p.contains(0.5));
  EXPECT_TRUE(p.contains(1.5));
  EXPECT_FALSE(p.contains(std::nextafter(0.5, 0.0)));
  EXPECT_FALSE(p.contains(std::nextafter(1.5, 2.0)));
}

TEST(StopSet, InteriorAndBoundary) {
  const auto t = ThresholdPolicy::threshold(1.0);
  EXPECT_TRUE(t.on_boundary(1.0));
  EXPECT_TRUE(t.is_interior(1.2));
  EXPECT_FALSE(t.contains(0.9));
  const auto all = ThresholdPolicy::stop_everywhere();
  EXPECT_TRUE(all.is_interior(0.0));
  const ThresholdPolicy point({{0.0, 0.0}});
  EXPECT_FALSE(point.is_interior(0.0));
}

TEST(StopSet, BarriersForThreshold) {
  const auto t = ThresholdPolicy::threshold(1.0);
  EXPECT_EQ(t.signed_barriers(0.3), (std::pair<double, double>{-1.0, 1.0}));
  EXPECT_EQ(t.signed_barriers(-0.3), (std::pair<double, double>{-1.0, 1.0}));
}

TEST(StopSet, BarriersForBand) {
  const ThresholdPolicy p({{0.0, 0.5}, {2.0, kInf}});
  EXPECT_EQ(p.signed_barriers(1.0), (std::pair<double, double>{0.5, 2.0}));
  EXPECT_EQ(p.signed_barriers(-1.0), (std::pair<double, double>{-2.0, -0.5}));
  const ThresholdPolicy low({{0.0, 0.5}});
  EXPECT_EQ(low.signed_barriers(1.0), (std::pair<double, double>{0.5, kInf}));
  const auto never = ThresholdPolicy::never_stop();
  EXPECT_EQ(never.signed_barriers(1.0), (std::pair<double, double>{-kInf, kInf}));
}

TEST(StopSet, ThresholdValue) {
  EXPECT_EQ(ThresholdPolicy::threshold(0.7).threshold_value(), 0.7);
  EXPECT_FALSE(ThresholdPolicy({{0.0, 0.5}}).threshold_value().has_value());
  EXPECT_FALSE(ThresholdPolicy::never_stop().threshold_value().has_value());
}

TEST(StopSet, InvalidIntervals) {
  EXPECT_THROW(ThresholdPolicy({{-0.1, 1.0}}), Error);
  EXPECT_THROW(ThresholdPolicy({{1.0, 0.5}}), Error);
  EXPECT_THROW(ThresholdPolicy::threshold(kInf), Error);
}

TEST(StopSet, Describe) {
  EXPECT_EQ(ThresholdPolicy::threshold(1.0).describe(), "[1, inf)");
  EXPECT_EQ(ThresholdPolicy::never_stop().describe(), "{}");
}

TEST(StopSet, ContainsOnGrid) {
  const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
  EXPECT_TRUE(contains_on_grid(ThresholdPolicy::threshold(0.9), ThresholdPolicy::threshold(1.0), grid));
  EXPECT_FALSE(contains_on_grid(ThresholdPolicy::threshold(1.0), ThresholdPolicy::threshold(0.4), grid));
  // 0.95 is not a grid state, so the two sets agree on the grid.
  EXPECT_TRUE(contains_on_grid(ThresholdPolicy::threshold(1.0), ThresholdPolicy::threshold(0.95), grid));
}
