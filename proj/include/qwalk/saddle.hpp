#pragma once

#include <vector>

#include "qwalk/cyclotomic.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/model.hpp"
#include "qwalk/ratfunc.hpp"

namespace qwalk {

struct Twist {
  std::vector<RootOfUnity> alphas;
  RootOfUnity zeta;
  bool is_trivial() const;
  std::string to_string() const;
};

struct DominantSaddle {
  std::vector<FieldElem> coords;
  FieldElem gamma;
  // false when the coordinates are certified balls rather than exact numbers
  bool exact = true;
};

struct SaddleSystem {
  std::vector<FieldElem> dominant;
  FieldElem gamma;
  bool exact = true;
  std::vector<Twist> twists;
  Matrix qform;
};

DominantSaddle find_dominant(const Model& m, long prec = kDefaultPrecision);
std::vector<Twist> associated_saddles(const Model& m);
// Q with n log S(x0 e^{i s/sqrt n}) = n log gamma - s^T Q s + O(n^{-1/2})
Matrix local_qform(const Model& m, const std::vector<FieldElem>& saddle);
bool is_positive_definite(const Matrix& q);
SaddleSystem saddle_system(const Model& m);

struct NumeratorAt {
  bool regular = false;
  FieldElem value;
};
NumeratorAt numerator_regular_at(const std::vector<FieldElem>& saddle, const RatFunc& n);

}  // namespace qwalk
