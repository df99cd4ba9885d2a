#include "qwalk/diagnostics.hpp"

#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2) return 0;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0 ? 0 : sxy / sxx;
}

std::vector<ConvergenceReport> convergence_diagnostics(const AsymptoticExpansion& e,
                                                       const std::vector<std::vector<Rational>>& counts,
                                                       const std::vector<Point>& endpoints, int order, long n_lo,
                                                       long n_hi, long n_step, long prec) {
  if (order < 1 || order > e.order()) throw Error(ErrorCode::InvalidArgument, "order outside the expansion");
  if (n_lo < 1 || n_hi < n_lo || n_step < 1) throw Error(ErrorCode::InvalidArgument, "bad length range");
  if (prec < 64) throw Error(ErrorCode::InvalidArgument, "precision must be at least 64 bits");
  std::vector<ConvergenceReport> out;
  BigFloat gamma = e.gamma.to_bigfloat(prec);
  BigFloat cm(e.c + order, prec);
  BigFloat eps(1.0, prec);
  mpfr_mul_2si(eps.get(), eps.get(), -(prec / 2), MPFR_RNDN);
  for (size_t k = 0; k < endpoints.size(); ++k) {
    ConvergenceReport r;
    r.start = e.start;
    r.end = endpoints[k];
    r.order = order;
    r.c = e.c;
    std::vector<double> xs, ys, ns;
    for (long n = n_lo; n <= n_hi; n += n_step) {
      if (e.twist_sum(endpoints[k], n) == 0) continue;
      if (n >= static_cast<long>(counts[k].size())) throw Error(ErrorCode::InvalidArgument, "length beyond the count horizon");
      ConvergenceRow row;
      row.n = n;
      row.exact = counts[k][n];
      row.predicted = e.predict(endpoints[k], n, order, prec);
      BigFloat ex(row.exact, prec);
      BigFloat diff = ex - row.predicted;
      row.abs_error = diff.abs();
      row.rel_error = ex.is_zero() ? BigFloat(0.0, prec) : row.abs_error / ex.abs();
      if (!ex.is_zero() && row.rel_error < eps)
        throw Error(ErrorCode::PrecisionInsufficient, "remainder below the working precision at n=" + std::to_string(n));
      BigFloat nn(static_cast<double>(n), prec);
      BigFloat gn = gamma.pow_si(n);
      row.normalized_remainder = diff * nn.pow(cm) / gn;
      if (!diff.is_zero()) {
        xs.push_back(nn.log().to_double());
        ys.push_back((row.abs_error / gn).log().to_double());
        ns.push_back(row.normalized_remainder.abs().log().to_double());
      }
      r.rows.push_back(std::move(row));
    }
    r.remainder_slope = least_squares_slope(xs, ys);
    r.normalized_slope = least_squares_slope(xs, ns);
    bool dec = !r.rows.empty();
    for (size_t i = r.rows.size() / 2; i + 1 < r.rows.size(); ++i)
      if (!(r.rows[i + 1].rel_error < r.rows[i].rel_error)) dec = false;
    r.rel_error_decreasing_top_half = dec;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ConvergenceReport> convergence_diagnostics(const AsymptoticExpansion& e, const Model& m,
                                                       const std::vector<Point>& endpoints, int order, long n_lo,
                                                       long n_hi, long n_step, long prec) {
  auto counts = count_at_endpoints(m, e.start, endpoints, static_cast<int>(n_hi));
  return convergence_diagnostics(e, counts, endpoints, order, n_lo, n_hi, n_step, prec);
}

std::string convergence_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os << "n,exact,predicted,rel_error,normalized_remainder\n";
  for (auto& row : r.rows)
    os << row.n << "," << to_string(row.exact) << "," << row.predicted.to_string(25) << ","
       << row.rel_error.to_string(10) << "," << row.normalized_remainder.to_string(10) << "\n";
  return os.str();
}

}  // namespace qwalk
