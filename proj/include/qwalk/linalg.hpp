#pragma once

#include <optional>
#include <vector>

#include "qwalk/field.hpp"

namespace qwalk {

class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, FieldElem(0)) {}
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldElem& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const FieldElem& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  void append_row(const std::vector<FieldElem>& row);

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElem> a_;
};

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(Matrix& m);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<FieldElem>> solve_linear(const Matrix& a, const std::vector<FieldElem>& b);

// Basis of {x : A x = 0}, one vector per free column, in column order.
std::vector<std::vector<FieldElem>> nullspace(const Matrix& a);

FieldElem determinant(Matrix m);

// Integer Smith normal form U*M*V = D with U, V unimodular.
struct SmithForm {
  std::vector<std::vector<long>> U, D, V;
  std::vector<long> diagonal;
};
SmithForm smith_normal_form(const std::vector<std::vector<long>>& m);

}  // namespace qwalk
