#include "qwalk/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

std::vector<int> max_positive(const Model& m) {
  std::vector<int> out(m.dimension(), 0);
  for (auto& s : m.steps())
    for (int j = 0; j < m.dimension(); ++j) out[j] = std::max(out[j], s.offset[j]);
  return out;
}

std::vector<int> max_negative(const Model& m) {
  std::vector<int> out(m.dimension(), 0);
  for (auto& s : m.steps())
    for (int j = 0; j < m.dimension(); ++j) out[j] = std::max(out[j], -s.offset[j]);
  return out;
}

std::string point_string(const Point& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

CountTable::CountTable(const Model& m, Point start, int n_max) : start_(std::move(start)), n_max_(n_max) {
  if (static_cast<int>(start_.size()) != m.dimension()) throw Error(ErrorCode::InvalidArgument, "start point has wrong dimension");
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "negative horizon");
  for (int v : start_)
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "start point outside the orthant");
  auto mp = max_positive(m);
  size_t cells = 1;
  for (int j = 0; j < m.dimension(); ++j) {
    hi_.push_back(start_[j] + n_max * mp[j]);
    cells *= static_cast<size_t>(hi_[j] + 1);
  }
  layers_.assign(n_max + 1, std::vector<FieldElem>(cells, FieldElem(0)));
}

std::optional<size_t> CountTable::index(const Point& b) const {
  size_t idx = 0;
  for (size_t j = 0; j < b.size(); ++j) {
    if (b[j] < 0 || b[j] > hi_[j]) return std::nullopt;
    idx = idx * static_cast<size_t>(hi_[j] + 1) + static_cast<size_t>(b[j]);
  }
  return idx;
}

FieldElem CountTable::at(const Point& b, int n) const {
  if (n < 0 || n > n_max_) throw Error(ErrorCode::InvalidArgument, "length outside the table horizon");
  auto i = index(b);
  return i ? layers_[n][*i] : FieldElem(0);
}

void CountTable::set(const Point& b, int n, const FieldElem& v) {
  auto i = index(b);
  if (!i) throw Error(ErrorCode::InvalidArgument, "point outside the table box");
  layers_[n][*i] = v;
}

CountTable count_paths(const Model& m, const Point& start, int n_max) {
  CountTable t(m, start, n_max);
  t.set(start, 0, FieldElem(1));
  const int d = m.dimension();
  for (int n = 1; n <= n_max; ++n) {
    // only points within reach of the start after n steps can be nonzero
    auto mp = max_positive(m), mn = max_negative(m);
    Point lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
      lo[j] = std::max(0, start[j] - n * mn[j]);
      hi[j] = start[j] + n * mp[j];
    }
    Point p = lo;
    while (true) {
      FieldElem acc(0);
      for (auto& s : m.steps()) {
        Point q(d);
        for (int j = 0; j < d; ++j) q[j] = p[j] - s.offset[j];
        FieldElem prev = t.at(q, n - 1);
        if (!prev.is_zero()) acc += s.weight * prev;
      }
      if (!acc.is_zero()) t.set(p, n, acc);
      int j = d - 1;
      while (j >= 0 && ++p[j] > hi[j]) p[j] = lo[j], --j;
      if (j < 0) break;
    }
  }
  return t;
}

std::vector<std::vector<Rational>> count_at_endpoints(const Model& m, const Point& start,
                                                      const std::vector<Point>& endpoints, int n_max) {
  if (!m.rational_weights()) throw Error(ErrorCode::InvalidArgument, "streaming counts need rational weights");
  const int d = m.dimension();
  BigInt denom = 1;
  for (auto& s : m.steps()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), s.weight.rational().get_den_mpz_t());
  std::vector<BigInt> w;
  std::vector<long> shift;
  auto mp = max_positive(m), mn = max_negative(m);
  Point box(d);
  std::vector<size_t> stride(d);
  size_t cells = 1;
  for (int j = d - 1; j >= 0; --j) {
    box[j] = start[j] + n_max * mp[j];
    stride[j] = cells;
    cells *= static_cast<size_t>(box[j] + 1);
  }
  for (auto& s : m.steps()) {
    w.push_back(BigInt(s.weight.rational() * Rational(denom)));
    long off = 0;
    for (int j = 0; j < d; ++j) off += static_cast<long>(s.offset[j]) * static_cast<long>(stride[j]);
    shift.push_back(off);
  }
  std::vector<BigInt> cur(cells), next(cells);
  auto flat = [&](const Point& p) {
    size_t i = 0;
    for (int j = 0; j < d; ++j) i += static_cast<size_t>(p[j]) * stride[j];
    return i;
  };
  cur[flat(start)] = 1;
  std::vector<std::vector<Rational>> out(endpoints.size(), std::vector<Rational>(n_max + 1, Rational(0)));
  for (size_t e = 0; e < endpoints.size(); ++e)
    if (endpoints[e] == start) out[e][0] = 1;
  Point cur_lo = start, cur_hi = start;
  Point prev_lo = start, prev_hi = start;  // active rectangle currently stored in next
  bool next_dirty = false;
  BigInt scale = 1;
  for (int n = 1; n <= n_max; ++n) {
    int r = n_max - n;
    Point lo(d), hi(d);
    bool empty = false;
    for (int j = 0; j < d; ++j) {
      int tlo = std::numeric_limits<int>::max(), thi = std::numeric_limits<int>::min();
      for (auto& b : endpoints) {
        tlo = std::min(tlo, b[j] - r * mp[j]);
        thi = std::max(thi, b[j] + r * mn[j]);
      }
      lo[j] = std::max({0, start[j] - n * mn[j], tlo});
      hi[j] = std::min({box[j], start[j] + n * mp[j], thi});
      if (lo[j] > hi[j]) empty = true;
    }
    if (next_dirty) {
      Point p = prev_lo;
      while (true) {
        next[flat(p)] = 0;
        int j = d - 1;
        while (j >= 0 && ++p[j] > prev_hi[j]) p[j] = prev_lo[j], --j;
        if (j < 0) break;
      }
    }
    scale *= denom;
    if (!empty) {
      Point p = lo;
      while (true) {
        size_t i = flat(p);
        mpz_ptr dst = next[i].get_mpz_t();
        for (size_t s = 0; s < w.size(); ++s) {
          bool inside = true;
          for (int j = 0; j < d; ++j) {
            int q = p[j] - m.steps()[s].offset[j];
            if (q < cur_lo[j] || q > cur_hi[j]) {
              inside = false;
              break;
            }
          }
          if (!inside) continue;
          auto& src = cur[static_cast<size_t>(static_cast<long>(i) - shift[s])];
          if (mpz_sgn(src.get_mpz_t()) != 0) mpz_addmul(dst, w[s].get_mpz_t(), src.get_mpz_t());
        }
        int j = d - 1;
        while (j >= 0 && ++p[j] > hi[j]) p[j] = lo[j], --j;
        if (j < 0) break;
      }
    }
    for (size_t e = 0; e < endpoints.size(); ++e) {
      auto& b = endpoints[e];
      bool inside = !empty;
      for (int j = 0; j < d && inside; ++j) inside = b[j] >= lo[j] && b[j] <= hi[j];
      if (inside) {
        out[e][n] = Rational(next[flat(b)], scale);
        out[e][n].canonicalize();
      }
    }
    std::swap(cur, next);
    prev_lo = cur_lo;
    prev_hi = cur_hi;
    next_dirty = true;
    if (empty) {
      for (int j = 0; j < d; ++j) lo[j] = 1, hi[j] = 0;
    }
    cur_lo = lo;
    cur_hi = hi;
    if (empty) {
      // nothing left to propagate
      for (int k = n + 1; k <= n_max; ++k)
        for (auto& row : out) row[k] = 0;
      break;
    }
  }
  return out;
}

RecurrenceCheck dual_recurrence_check(const Model& m, const std::map<Point, CountTable>& tables, int samples,
                                      unsigned seed) {
  RecurrenceCheck rc;
  if (tables.empty()) return rc;
  std::mt19937 rng(seed);
  std::vector<Point> starts;
  for (auto& [p, t] : tables) starts.push_back(p);
  for (int it = 0; it < samples; ++it) {
    const Point& a = starts[rng() % starts.size()];
    const CountTable& t = tables.at(a);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::max(1, t.n_max())));
    if (n > t.n_max()) continue;
    Point b(a.size());
    for (size_t j = 0; j < b.size(); ++j) b[j] = static_cast<int>(rng() % static_cast<unsigned>(t.box_hi()[j] + 1));
    FieldElem target = t.at(b, n);
    // end-side: q(A,B;n) = sum_s w_s q(A,B-s;n-1)
    FieldElem end_side(0);
    for (auto& s : m.steps()) {
      Point q = b;
      for (size_t j = 0; j < q.size(); ++j) q[j] -= s.offset[j];
      end_side += s.weight * t.at(q, n - 1);
    }
    ++rc.checked;
    if (end_side != target) {
      rc.pass = false;
      rc.witness = "end-side recurrence fails at A=" + point_string(a) + " B=" + point_string(b) + " n=" + std::to_string(n);
      return rc;
    }
    // start-side: q(A,B;n) = sum_s w_s q(A+s,B;n-1), needs every shifted start
    FieldElem start_side(0);
    bool available = true;
    for (auto& s : m.steps()) {
      Point a2 = a;
      bool outside = false;
      for (size_t j = 0; j < a2.size(); ++j) {
        a2[j] += s.offset[j];
        if (a2[j] < 0) outside = true;
      }
      if (outside) continue;
      auto it2 = tables.find(a2);
      if (it2 == tables.end() || it2->second.n_max() < n - 1) {
        available = false;
        break;
      }
      start_side += s.weight * it2->second.at(b, n - 1);
    }
    if (!available) continue;
    ++rc.checked;
    if (start_side != target) {
      rc.pass = false;
      rc.witness = "start-side recurrence fails at A=" + point_string(a) + " B=" + point_string(b) + " n=" + std::to_string(n);
      return rc;
    }
  }
  return rc;
}

}  // namespace qwalk
