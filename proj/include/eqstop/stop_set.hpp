#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqstop {

// Closed interval of R+; hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
};

// Stopping policy tau(x) = inf{s >= 0 : |X_s| in L} with L a finite union of
// closed intervals. Intervals are kept sorted and disjoint, merged when they
// touch, so equal sets compare equal. "Stop on |x| >= a" and "stop on
// |x| > a" are represented by the same closed threshold; the two hitting
// times agree almost surely for Brownian motion.
class ThresholdPolicy {
 public:
  ThresholdPolicy() = default;
  explicit ThresholdPolicy(std::vector<Interval> intervals);

  static ThresholdPolicy threshold(double a);
  static ThresholdPolicy stop_everywhere() { return threshold(0.0); }
  static ThresholdPolicy never_stop() { return ThresholdPolicy(); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  // Membership of y = |x|, exact at the endpoints.
  bool contains(double y) const;
  // y lies in the set and every nearby |x| does too, so the strict entry
  // time L* is zero. 0 counts as interior of [0, hi] with hi > 0.
  bool is_interior(double y) const;
  bool on_boundary(double y) const { return contains(y) && !is_interior(y); }

  // The maximal open interval (lo, hi) of R+ outside the set around y.
  // has_lo is false when no part of the set lies below y.
  struct Gap {
    bool has_lo = false;
    double lo = 0.0;
    double hi = 0.0;
  };
  Gap gap_around(double y) const;

  // Barriers in signed coordinates for a path currently at x with |x|
  // outside the set: the process leaves (lo, hi) exactly when |X| enters L.
  std::pair<double, double> signed_barriers(double x) const;

  // The threshold a if the set is exactly [a, inf).
  std::optional<double> threshold_value() const;

  std::string describe() const;

  bool operator==(const ThresholdPolicy&) const = default;

 private:
  std::vector<Interval> intervals_;
};

// True when every grid state in `inner` is also in `outer`.
bool contains_on_grid(const ThresholdPolicy& outer, const ThresholdPolicy& inner,
                      const std::vector<double>& grid);

}  // namespace eqstop
