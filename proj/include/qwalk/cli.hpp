#pragma once

#include <string>
#include <vector>

#include "qwalk/report.hpp"

namespace qwalk {

struct RunConfig {
  std::string command;
  std::string model_path;
  std::string numerator_path;
  std::string expansion_path;
  std::string basis_prefix;
  std::string adjoint_basis_prefix;
  int order = 3;
  Point start;
  std::vector<Point> ends;
  int depth = 8;
  int window = 0;
  long nmin = 40;
  long nmax = 240;
  long precision = kDefaultPrecision;
  OutputFormat format = OutputFormat::Human;
  std::string out;
  bool symbolic = false;
  bool shifted = false;
  double rel_tol = 1e-2;
  double slope_tol = 0.3;
};

// throws InvalidArgument for non-positive parameters or precision below 64 bits
void validate(const RunConfig& cfg);

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

// Exit codes: 0 success, 1 tolerance violated, otherwise the ErrorCode value.
CommandResult run_command(const RunConfig& cfg);

Point parse_point(const std::string& text);

// scale a rational polynomial to coprime integer coefficients with positive leading coefficient
LaurentPoly primitive_part(const LaurentPoly& p);
// PolyBasis from files <prefix>_<n>_<m>.poly
PolyBasis load_basis(const std::string& prefix, std::vector<std::string> vars, int lower, const FieldElem& gamma);

}  // namespace qwalk
