#pragma once

#include <string>
#include <vector>

#include "qwalk/model.hpp"
#include "qwalk/polyio.hpp"

namespace qwalk::testing {

inline Model corpus_model(const std::string& name) { return load_model("data/models/" + name + ".model"); }

inline LaurentPoly fixture(const std::string& name, const std::vector<std::string>& vars, int* pi_twice = nullptr) {
  return load_poly("data/fixtures/" + name + ".poly", vars, pi_twice);
}

inline FieldElem sqrt_of(long r) { return radical_power(Rational(r), Rational(1, 2)); }

// the 16 vertically symmetric small-step models plus three with non-symmetric groups
inline std::vector<std::string> orbit_summable_corpus() {
  return {"vsym_n_e_s_w",          "vsym_n_e_se_s_sw_w",       "vsym_n_e_se_sw_w",   "vsym_n_ne_e_s_w_nw",
          "vsym_n_ne_e_se_s_sw_w_nw", "vsym_n_ne_e_se_sw_w_nw", "vsym_n_ne_s_nw",     "vsym_n_ne_se_s_sw_nw",
          "vsym_n_ne_se_sw_nw",    "vsym_n_se_s_sw",           "vsym_n_se_sw",       "vsym_ne_e_s_w_nw",
          "vsym_ne_e_se_s_sw_w_nw", "vsym_ne_s_nw",            "vsym_ne_se_s_sw_nw", "vsym_ne_se_sw_nw",
          "tandem",                "double_tandem",            "gb"};
}

}  // namespace qwalk::testing
