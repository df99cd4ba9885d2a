#include "qwalk/linalg.hpp"

#include <cstdlib>

#include "qwalk/errors.hpp"

namespace qwalk {

void Matrix::append_row(const std::vector<FieldElem>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error(ErrorCode::InvalidArgument, "row length mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<size_t> rref(Matrix& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    FieldElem inv = m(r, c).inverse();
    for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      FieldElem f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<std::vector<FieldElem>> solve_linear(const Matrix& a, const std::vector<FieldElem>& b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<FieldElem> x(a.cols(), FieldElem(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

std::vector<std::vector<FieldElem>> nullspace(const Matrix& a) {
  Matrix m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t p : piv) is_pivot[p] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<FieldElem> v(a.cols(), FieldElem(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

FieldElem determinant(Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  size_t n = m.rows();
  FieldElem det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return FieldElem(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    FieldElem inv = m(c, c).inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      FieldElem f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

namespace {

using IMat = std::vector<std::vector<long>>;

IMat identity(size_t n) {
  IMat m(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void row_combine(IMat& m, size_t i, size_t j, long a, long b, long c, long d) {
  // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
  for (size_t k = 0; k < m[i].size(); ++k) {
    long x = m[i][k], y = m[j][k];
    m[i][k] = a * x + b * y;
    m[j][k] = c * x + d * y;
  }
}

void col_combine(IMat& m, size_t i, size_t j, long a, long b, long c, long d) {
  for (auto& row : m) {
    long x = row[i], y = row[j];
    row[i] = a * x + b * y;
    row[j] = c * x + d * y;
  }
}

long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::labs(a);
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

SmithForm smith_normal_form(const std::vector<std::vector<long>>& input) {
  size_t rows = input.size();
  size_t cols = rows ? input[0].size() : 0;
  IMat d = input, u = identity(rows), v = identity(cols);
  size_t t = 0;
  while (t < rows && t < cols) {
    // choose the smallest nonzero entry in the remaining block as pivot
    long best = 0;
    size_t bi = 0, bj = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (d[i][j] != 0 && (best == 0 || std::labs(d[i][j]) < best)) {
          best = std::labs(d[i][j]);
          bi = i;
          bj = j;
        }
    if (best == 0) break;
    std::swap(d[t], d[bi]);
    std::swap(u[t], u[bi]);
    col_combine(d, t, bj, 0, 1, 1, 0);
    col_combine(v, t, bj, 0, 1, 1, 0);
    bool done = false;
    while (!done) {
      done = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        long x, y;
        long a = d[t][t], b = d[i][t];
        long g = b % a == 0 ? (x = 1, y = 0, std::labs(a)) : ext_gcd(a, b, x, y);
        if (b % a == 0 && a < 0) x = -1;
        row_combine(d, t, i, x, y, -b / g, a / g);
        row_combine(u, t, i, x, y, -b / g, a / g);
        done = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        long x, y;
        long a = d[t][t], b = d[t][j];
        long g = b % a == 0 ? (x = 1, y = 0, std::labs(a)) : ext_gcd(a, b, x, y);
        if (b % a == 0 && a < 0) x = -1;
        col_combine(d, t, j, x, y, -b / g, a / g);
        col_combine(v, t, j, x, y, -b / g, a / g);
        done = false;
      }
      if (done) {
        // divisibility condition on the remaining block
        for (size_t i = t + 1; i < rows && done; ++i)
          for (size_t j = t + 1; j < cols && done; ++j)
            if (d[i][j] % d[t][t] != 0) {
              row_combine(d, t, i, 1, 1, 0, 1);
              row_combine(u, t, i, 1, 1, 0, 1);
              done = false;
            }
      }
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    ++t;
  }
  SmithForm s;
  s.U = u;
  s.D = d;
  s.V = v;
  for (size_t i = 0; i < std::min(rows, cols); ++i) s.diagonal.push_back(d[i][i]);
  return s;
}

}  // namespace qwalk
