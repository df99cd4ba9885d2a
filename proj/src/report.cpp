#include "qwalk/report.hpp"

#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/group.hpp"

namespace qwalk {

OutputFormat parse_format(const std::string& name) {
  if (name == "human") return OutputFormat::Human;
  if (name == "structured" || name == "json") return OutputFormat::Structured;
  if (name == "csv") return OutputFormat::Csv;
  throw Error(ErrorCode::InvalidArgument, "unknown output format '" + name + "'");
}

Json field_to_json(const FieldElem& x) {
  auto tokens = format_coefficient(x);
  if (tokens.empty()) return "0";
  if (tokens.size() == 1) return tokens[0];
  return Json(tokens);
}

FieldElem field_from_json(const Json& j) {
  if (j.is_string()) return parse_coefficient(j.get<std::string>()).value;
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "field element must be a string or a list of strings");
  FieldElem acc(0);
  for (auto& t : j) acc += parse_coefficient(t.get<std::string>()).value;
  return acc;
}

Json poly_to_json(const LaurentPoly& p, int pi_twice) { return Json(serialize_poly(p, pi_twice)); }

LaurentPoly poly_from_json(const Json& j, const std::vector<std::string>& vars) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "polynomial must be a list of term lines");
  return parse_poly(j.get<std::vector<std::string>>(), vars);
}

Json twist_to_json(const Twist& t) {
  Json a = Json::array();
  for (auto& x : t.alphas) a.push_back(to_string(x.exponent()));
  return Json{{"alphas", a}, {"zeta", to_string(t.zeta.exponent())}, {"text", t.to_string()}};
}

Twist twist_from_json(const Json& j) {
  Twist t;
  for (auto& a : j.at("alphas")) t.alphas.push_back(RootOfUnity(parse_rational(a.get<std::string>())));
  t.zeta = RootOfUnity(parse_rational(j.at("zeta").get<std::string>()));
  return t;
}

namespace {

Json field_list(const std::vector<FieldElem>& xs) {
  Json a = Json::array();
  for (auto& x : xs) a.push_back(field_to_json(x));
  return a;
}

std::string pi_power_text(int pi_twice) {
  Rational r(pi_twice, 2);
  r.canonicalize();
  return to_string(r);
}

}  // namespace

Json expansion_to_json(const AsymptoticExpansion& e) {
  Json j;
  j["gamma"] = field_to_json(e.gamma);
  j["c"] = to_string(e.c);
  j["pi_power"] = pi_power_text(e.pi_twice);
  j["dominant"] = field_list(e.dominant);
  j["exp_bases"] = field_list(e.exp_bases);
  j["vars"] = e.vars;
  j["start"] = e.start;
  j["lowest_grade"] = e.lowest_grade;
  Json tw = Json::array();
  for (auto& t : e.twists) tw.push_back(twist_to_json(t));
  j["twists"] = tw;
  Json terms = Json::array();
  for (int p = 1; p <= e.order(); ++p) terms.push_back(Json{{"p", p}, {"poly", poly_to_json(e.terms[p - 1])}});
  j["terms"] = terms;
  return j;
}

AsymptoticExpansion expansion_from_json(const Json& j) {
  try {
    AsymptoticExpansion e;
    e.gamma = field_from_json(j.at("gamma"));
    e.c = parse_rational(j.at("c").get<std::string>());
    Rational pp = parse_rational(j.at("pi_power").get<std::string>()) * 2;
    if (pp.get_den() != 1) throw Error(ErrorCode::ParseError, "pi power must be a half-integer");
    e.pi_twice = static_cast<int>(pp.get_num().get_si());
    for (auto& x : j.at("dominant")) e.dominant.push_back(field_from_json(x));
    for (auto& x : j.at("exp_bases")) e.exp_bases.push_back(field_from_json(x));
    e.vars = j.at("vars").get<std::vector<std::string>>();
    e.start = j.at("start").get<Point>();
    e.lowest_grade = j.at("lowest_grade").get<int>();
    for (auto& t : j.at("twists")) e.twists.push_back(twist_from_json(t));
    for (auto& t : j.at("terms")) e.terms.push_back(poly_from_json(t.at("poly"), e.vars));
    return e;
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("malformed expansion report: ") + ex.what());
  }
}

bool same_expansion(const AsymptoticExpansion& a, const AsymptoticExpansion& b) {
  if (!(a.gamma == b.gamma && a.c == b.c && a.pi_twice == b.pi_twice && a.dominant == b.dominant &&
        a.exp_bases == b.exp_bases && a.vars == b.vars && a.start == b.start && a.lowest_grade == b.lowest_grade &&
        a.terms == b.terms && a.twists.size() == b.twists.size()))
    return false;
  for (size_t i = 0; i < a.twists.size(); ++i)
    if (!(a.twists[i].zeta == b.twists[i].zeta && a.twists[i].alphas == b.twists[i].alphas)) return false;
  return true;
}

std::string serialize_expansion(const AsymptoticExpansion& e) { return expansion_to_json(e).dump(2) + "\n"; }

AsymptoticExpansion parse_expansion(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("expansion report is not valid JSON: ") + ex.what());
  }
  return expansion_from_json(j);
}

Json interpolated_to_json(const InterpolatedTerms& t) {
  Json j;
  j["gamma"] = field_to_json(t.gamma);
  j["c"] = to_string(t.c);
  j["pi_power"] = pi_power_text(t.pi_twice);
  j["vars"] = {"k", "l", "u", "v"};
  j["degree_bound"] = t.degree_bound;
  Json tw = Json::array();
  for (auto& x : t.twists) tw.push_back(twist_to_json(x));
  j["twists"] = tw;
  Json terms = Json::array();
  for (size_t p = 0; p < t.terms.size(); ++p)
    terms.push_back(Json{{"p", p + 1}, {"start_degree", t.observed_degree[p]}, {"poly", poly_to_json(t.terms[p])}});
  j["terms"] = terms;
  return j;
}

Json decomposition_to_json(const Decomposition& d, const PolyBasis& basis, const PolyBasis& adjoint) {
  auto label = [](const std::string& name, std::pair<int, int> idx) {
    return name + "_" + std::to_string(idx.first) + "^" + std::to_string(idx.second);
  };
  Json j;
  j["candidates"] = d.candidates;
  j["residual"] = "0";
  Json terms = Json::array();
  for (auto& t : d.terms)
    terms.push_back(Json{{"left", label("h", t.left)}, {"right", label("g", t.right)}, {"coefficient", field_to_json(t.coefficient)}});
  j["terms"] = terms;
  Json b = Json::object(), a = Json::object();
  for (auto& [k, h] : basis.entries) b[label("h", k)] = poly_to_json(h);
  for (auto& [k, h] : adjoint.entries) a[label("g", k)] = poly_to_json(h);
  j["basis"] = b;
  j["adjoint_basis"] = a;
  j["basis_vars"] = basis.vars;
  j["adjoint_vars"] = adjoint.vars;
  return j;
}

Json convergence_to_json(const ConvergenceReport& r) {
  Json j;
  j["start"] = r.start;
  j["end"] = r.end;
  j["order"] = r.order;
  j["c"] = to_string(r.c);
  Json rows = Json::array();
  for (auto& row : r.rows)
    rows.push_back(Json{{"n", row.n},
                        {"exact", to_string(row.exact)},
                        {"predicted", row.predicted.to_string(25)},
                        {"rel_error", row.rel_error.to_string(10)},
                        {"normalized_remainder", row.normalized_remainder.to_string(10)}});
  j["rows"] = rows;
  std::ostringstream s1, s2;
  s1.precision(6);
  s2.precision(6);
  s1 << r.remainder_slope;
  s2 << r.normalized_slope;
  j["remainder_slope"] = s1.str();
  j["normalized_slope"] = s2.str();
  j["rel_error_decreasing_top_half"] = r.rel_error_decreasing_top_half;
  return j;
}

namespace {

Json error_entry(const Error& e) { return Json{{"error", error_name(e.code())}, {"message", e.what()}}; }

template <class F>
Json attempt(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_entry(e);
  }
}

Json correlation_json(const Model& m) {
  auto c = correlation_coefficient(m);
  Json j;
  j["sign"] = c.sign;
  j["argument_squared"] = field_to_json(c.arg_squared);
  j["argument"] = c.argument_text;
  if (c.pi_over_theta) {
    Rational r = 1 / *c.pi_over_theta;
    if (r == 1)
      j["theta"] = "pi";
    else if (r.get_num() == 1)
      j["theta"] = "pi/" + r.get_den().get_str();
    else
      j["theta"] = "pi*" + to_string(r);
    j["pi_over_theta"] = to_string(*c.pi_over_theta);
  } else {
    std::ostringstream th;
    th.precision(12);
    th << c.theta;
    j["theta"] = th.str();
    j["pi_over_theta"] = nullptr;
  }
  return j;
}

Json certificate_json(const Certificate& cert, const Point& start, int depth) {
  Json cj;
  cj["start"] = start;
  cj["depth"] = depth;
  cj["pass"] = cert.pass;
  cj["checked"] = cert.checked;
  if (cert.failure) {
    cj["failure"] = Json{{"endpoint", cert.failure->endpoint},
                         {"n", cert.failure->n},
                         {"expected", field_to_json(cert.failure->expected)},
                         {"got", field_to_json(cert.failure->got)}};
  }
  return cj;
}

}  // namespace

Json analyze_model(const Model& m, const AnalysisOptions& opt) {
  const int d = m.dimension();
  Json j;
  j["name"] = m.name();
  j["dimension"] = d;
  j["steps"] = m.steps().size();
  j["small_steps"] = m.small_steps();
  j["drift"] = field_list(drift(m));
  bool nondeg = check_nondegenerate(m);
  j["nondegenerate"] = nondeg;
  j["period"] = periodicity(m);
  if (!nondeg) {
    j["status"] = error_entry(Error(ErrorCode::DegenerateModel, "all steps lie in a closed half-space"));
    return j;
  }
  auto dr = drift(m);
  bool zero_drift = std::all_of(dr.begin(), dr.end(), [](const FieldElem& v) { return v.is_zero(); });
  if (d == 2)
    j["correlation"] = attempt([&] { return correlation_json(zero_drift ? m : cramer_transform(m).model); });
  j["saddle"] = attempt([&] {
    auto sys = saddle_system(m);
    Json s;
    s["dominant"] = field_list(sys.dominant);
    s["gamma"] = field_to_json(sys.gamma);
    s["exact"] = sys.exact;
    Json tw = Json::array();
    for (auto& t : sys.twists) tw.push_back(t.to_string());
    s["twists"] = tw;
    Json q = Json::array();
    for (size_t r = 0; r < sys.qform.rows(); ++r) {
      Json row = Json::array();
      for (size_t c = 0; c < sys.qform.cols(); ++c) row.push_back(field_to_json(sys.qform(r, c)));
      q.push_back(row);
    }
    s["qform"] = q;
    return s;
  });
  Point start = opt.start.empty() ? Point(d, 0) : opt.start;
  if (opt.numerator) {
    j["group"] = attempt([&] {
      Json gj;
      gj["numerator"] = "supplied";
      auto cert = certify_numerator(m, *opt.numerator, start, opt.certificate_depth);
      gj["certificate"] = certificate_json(cert, start, opt.certificate_depth);
      if (!cert.pass)
        gj["status"] = error_entry(Error(ErrorCode::NotOrbitSummable, "numerator fails the certificate"));
      return gj;
    });
  } else if (d == 2) {
    j["group"] = attempt([&] {
      auto g = group_closure(m);
      Json gj;
      gj["order"] = g.size();
      auto cert = certify_orbit_summable(m, start[0], start[1], opt.certificate_depth);
      gj["certificate"] = certificate_json(cert, start, opt.certificate_depth);
      if (!cert.pass) gj["status"] = error_entry(Error(ErrorCode::NotOrbitSummable, "orbit sum fails the certificate"));
      return gj;
    });
  }
  return j;
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array()) {
    bool scalar = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (scalar && !j.empty() && j.size() <= 8 && !j[0].is_string()) {
      os << path << " = " << j.dump() << "\n";
      return;
    }
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    if (j.empty()) os << path << " = []\n";
  } else if (j.is_string()) {
    os << path << " = " << j.get<std::string>() << "\n";
  } else {
    os << path << " = " << j.dump() << "\n";
  }
}

}  // namespace

std::string render(const Json& j, OutputFormat f) {
  if (f == OutputFormat::Structured) return j.dump(2) + "\n";
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

}  // namespace qwalk
