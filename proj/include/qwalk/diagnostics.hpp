#pragma once

#include <string>
#include <vector>

#include "qwalk/expansion.hpp"

namespace qwalk {

struct ConvergenceRow {
  long n = 0;
  Rational exact;
  BigFloat predicted;
  BigFloat abs_error;
  BigFloat rel_error;
  // (exact - predicted) * n^(c+M) / gamma^n
  BigFloat normalized_remainder;
};

struct ConvergenceReport {
  Point start, end;
  int order = 0;
  Rational c;
  std::vector<ConvergenceRow> rows;
  // least-squares slopes over log n of log|remainder / gamma^n| and of log|normalized remainder|
  double remainder_slope = 0;
  double normalized_slope = 0;
  bool rel_error_decreasing_top_half = false;
};

// Rows only for n in [n_lo, n_hi] (stride n_step) where the twist sum is nonzero.
std::vector<ConvergenceReport> convergence_diagnostics(const AsymptoticExpansion& e, const Model& m,
                                                       const std::vector<Point>& endpoints, int order, long n_lo,
                                                       long n_hi, long n_step = 1, long prec = kDefaultPrecision);
// Same, with precomputed counts[endpoint][n].
std::vector<ConvergenceReport> convergence_diagnostics(const AsymptoticExpansion& e,
                                                       const std::vector<std::vector<Rational>>& counts,
                                                       const std::vector<Point>& endpoints, int order, long n_lo,
                                                       long n_hi, long n_step = 1, long prec = kDefaultPrecision);

std::string convergence_csv(const ConvergenceReport& r);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qwalk
