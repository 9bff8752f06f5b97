#include "eqstop/stop_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eqstop/error.hpp"

namespace eqstop {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ThresholdPolicy::ThresholdPolicy(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.lo >= 0.0) || !std::isfinite(iv.lo) || std::isnan(iv.hi) || iv.hi < iv.lo) {
      fail(ErrorCode::InvalidArgument, "stop-set intervals need 0 <= lo <= hi with finite lo");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

ThresholdPolicy ThresholdPolicy::threshold(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) fail(ErrorCode::InvalidArgument, "threshold must be finite and >= 0");
  return ThresholdPolicy({Interval{a, kInf}});
}

bool ThresholdPolicy::contains(double y) const {
  for (const auto& iv : intervals_) {
    if (y < iv.lo) return false;
    if (y <= iv.hi) return true;
  }
  return false;
}

bool ThresholdPolicy::is_interior(double y) const {
  for (const auto& iv : intervals_) {
    if (y < iv.lo) return false;
    if (y <= iv.hi) {
      const bool left_ok = y > iv.lo || (y == 0.0 && iv.hi > 0.0);
      return left_ok && y < iv.hi;
    }
  }
  return false;
}

ThresholdPolicy::Gap ThresholdPolicy::gap_around(double y) const {
  Gap gap;
  gap.hi = kInf;
  for (const auto& iv : intervals_) {
    if (iv.lo > y) {
      gap.hi = iv.lo;
      break;
    }
    gap.has_lo = true;
    gap.lo = iv.hi;
  }
  return gap;
}

std::pair<double, double> ThresholdPolicy::signed_barriers(double x) const {
  const Gap gap = gap_around(std::abs(x));
  if (!gap.has_lo) return {-gap.hi, gap.hi};
  if (x > 0.0) return {gap.lo, gap.hi};
  return {-gap.hi, -gap.lo};
}

std::optional<double> ThresholdPolicy::threshold_value() const {
  if (intervals_.size() == 1 && std::isinf(intervals_.front().hi)) return intervals_.front().lo;
  return std::nullopt;
}

std::string ThresholdPolicy::describe() const {
  if (intervals_.empty()) return "{}";
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) os << " U ";
    os << '[' << intervals_[i].lo << ", ";
    if (std::isinf(intervals_[i].hi)) os << "inf)";
    else os << intervals_[i].hi << ']';
  }
  return os.str();
}

bool contains_on_grid(const ThresholdPolicy& outer, const ThresholdPolicy& inner,
                      const std::vector<double>& grid) {
  return std::all_of(grid.begin(), grid.end(),
                     [&](double y) { return !inner.contains(y) || outer.contains(y); });
}

}  // namespace eqstop
