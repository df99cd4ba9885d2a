#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qwalk/model.hpp"

namespace qwalk {

using Point = std::vector<int>;

// Exact weighted counts q(start, B; n) for every B in a box and n <= n_max.
class CountTable {
 public:
  CountTable(const Model& m, Point start, int n_max);

  const Point& start() const { return start_; }
  int n_max() const { return n_max_; }
  int dimension() const { return static_cast<int>(start_.size()); }
  const Point& box_hi() const { return hi_; }
  // zero outside the orthant or the box
  FieldElem at(const Point& b, int n) const;
  void set(const Point& b, int n, const FieldElem& v);

 private:
  std::optional<size_t> index(const Point& b) const;
  Point start_;
  int n_max_;
  Point hi_;
  std::vector<std::vector<FieldElem>> layers_;
};

CountTable count_paths(const Model& m, const Point& start, int n_max);

// Streaming exact counts q(start, B; n) for n = 0..n_max at a few endpoints,
// computed with big integers and the reachable cone clipped to the targets.
// Requires rational weights.
std::vector<std::vector<Rational>> count_at_endpoints(const Model& m, const Point& start,
                                                      const std::vector<Point>& endpoints, int n_max);

struct RecurrenceCheck {
  bool pass = true;
  long checked = 0;
  std::string witness;
};
// Start-side recurrence needs the tables of all shifted starts, keyed by start point.
RecurrenceCheck dual_recurrence_check(const Model& m, const std::map<Point, CountTable>& tables, int samples,
                                      unsigned seed = 1);

}  // namespace qwalk
