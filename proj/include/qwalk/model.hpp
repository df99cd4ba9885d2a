#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwalk/laurent.hpp"

namespace qwalk {

struct Step {
  std::vector<int> offset;
  FieldElem weight;
};

class Model {
 public:
  Model(std::string name, int dimension, std::vector<Step> steps);

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  const std::vector<Step>& steps() const { return steps_; }
  bool small_steps() const;
  bool rational_weights() const;
  // largest |offset_j| over all steps and coordinates
  int max_offset() const;
  // steps ordered lexicographically by offset, used for set comparisons
  Model sorted() const;

 private:
  std::string name_;
  int dimension_;
  std::vector<Step> steps_;
};

bool same_step_set(const Model& a, const Model& b);

Model parse_model(const std::string& text);
std::string serialize_model(const Model& m);
Model load_model(const std::string& path);

LaurentPoly step_polynomial(const Model& m);
std::vector<FieldElem> drift(const Model& m);
bool check_nondegenerate(const Model& m);
// Order of the common step coset in Z^d / L (L = lattice of step differences);
// 0 when that order is infinite, i.e. no walk can ever return.
long periodicity(const Model& m);

struct Correlation {
  // the cosine argument equals sign * sqrt(arg_squared)
  int sign = 0;
  FieldElem arg_squared;
  std::optional<Rational> pi_over_theta;
  double theta = 0;
  std::string argument_text;
};
Correlation correlation_coefficient(const Model& m);

Model reverse(const Model& m);

struct CramerTransform {
  Model model;
  std::vector<FieldElem> multipliers;
};
CramerTransform cramer_transform(const Model& m);
// Model with weights omega_s * prod multipliers^s
Model reweight(const Model& m, const std::vector<FieldElem>& multipliers);

}  // namespace qwalk
