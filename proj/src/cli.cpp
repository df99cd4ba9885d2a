#include "qwalk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/group.hpp"

namespace qwalk {

Point parse_point(const std::string& text) {
  Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      p.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad point '" + text + "'");
    }
  }
  if (p.empty()) throw Error(ErrorCode::ParseError, "empty point");
  return p;
}

void validate(const RunConfig& cfg) {
  if (cfg.order < 1) throw Error(ErrorCode::InvalidArgument, "--order must be positive");
  if (cfg.depth < 1) throw Error(ErrorCode::InvalidArgument, "--depth must be positive");
  if (cfg.window < 0) throw Error(ErrorCode::InvalidArgument, "--window must be positive");
  if (cfg.command == "count") {
    if (cfg.nmax < 0) throw Error(ErrorCode::InvalidArgument, "--nmax must be nonnegative");
  } else if (cfg.command == "verify" && (cfg.nmin < 1 || cfg.nmax < cfg.nmin)) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= --nmin <= --nmax");
  }
  if (cfg.precision < 64) throw Error(ErrorCode::InvalidArgument, "--precision must be at least 64 bits");
  for (int v : cfg.start)
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "start point outside the orthant");
  for (auto& e : cfg.ends)
    for (int v : e)
      if (v < 0) throw Error(ErrorCode::InvalidArgument, "endpoint outside the orthant");
}

LaurentPoly primitive_part(const LaurentPoly& poly) {
  if (poly.is_zero()) return poly;
  // a common irrational factor is divided out first
  LaurentPoly p = poly.leading_term().second.is_rational() ? poly : poly * poly.leading_term().second.inverse();
  BigInt num_gcd = 0, den_lcm = 1;
  for (auto& [e, c] : p.terms()) {
    if (!c.is_rational()) throw Error(ErrorCode::FieldMismatch, "coefficients are not rational multiples of one number");
    const Rational& q = c.rational();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_term().second.sign() < 0) scale = -scale;
  return p * FieldElem(scale);
}

PolyBasis load_basis(const std::string& prefix, std::vector<std::string> vars, int lower, const FieldElem& gamma) {
  PolyBasis b;
  b.vars = vars;
  b.lower = lower;
  b.eigenvalue = gamma;
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 8; ++m) {
      std::string path = prefix + "_" + std::to_string(n) + "_" + std::to_string(m) + ".poly";
      if (std::filesystem::exists(path)) b.entries[{n, m}] = load_poly(path, vars);
    }
  if (b.entries.empty()) throw Error(ErrorCode::ParseError, "no basis files match " + prefix + "_<n>_<m>.poly");
  return b;
}

namespace {

std::vector<Rational> unit_shift(size_t n, int by) { return std::vector<Rational>(n, Rational(by)); }

Point start_or_origin(const RunConfig& cfg, int d) {
  if (cfg.start.empty()) return Point(d, 0);
  if (static_cast<int>(cfg.start.size()) != d) throw Error(ErrorCode::InvalidArgument, "--start has the wrong dimension");
  return cfg.start;
}

AsymptoticExpansion compute_expansion(const RunConfig& cfg, const Model& m) {
  if (!cfg.expansion_path.empty()) {
    std::ifstream f(cfg.expansion_path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot open expansion report " + cfg.expansion_path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_expansion(buf.str());
  }
  Point start = start_or_origin(cfg, m.dimension());
  if (!cfg.numerator_path.empty())
    return assemble_expansion(m, load_numerator(cfg.numerator_path, m.dimension()), cfg.order, start);
  if (m.dimension() != 2) throw Error(ErrorCode::InvalidArgument, "models in dimension other than 2 need --numerator");
  auto cert = certify_orbit_summable(m, start[0], start[1], cfg.depth);
  if (!cert.pass) throw Error(ErrorCode::NotOrbitSummable, "orbit sum fails the coefficient certificate");
  return expand_from_start(m, start, cfg.order);
}

void shift_terms(std::vector<LaurentPoly>& terms) {
  for (auto& t : terms) t = translate(t, unit_shift(t.nvars(), -1));
}

std::string terms_csv(const std::vector<LaurentPoly>& terms, int pi_twice) {
  std::ostringstream os;
  os << "p,coefficient";
  if (!terms.empty())
    for (auto& v : terms[0].vars()) os << "," << v;
  os << "\n";
  for (size_t p = 0; p < terms.size(); ++p)
    for (auto& line : serialize_poly(terms[p], pi_twice)) {
      std::istringstream is(line);
      std::string tok;
      os << p + 1;
      while (is >> tok) os << "," << tok;
      os << "\n";
    }
  return os.str();
}

CommandResult cmd_expand(const RunConfig& cfg) {
  auto m = load_model(cfg.model_path);
  if (cfg.symbolic) {
    auto it = interpolate_vp(m, cfg.order);
    if (cfg.shifted) shift_terms(it.terms);
    if (cfg.format == OutputFormat::Csv) return {0, terms_csv(it.terms, it.pi_twice)};
    Json j = interpolated_to_json(it);
    j["shifted"] = cfg.shifted;
    return {0, render(j, cfg.format)};
  }
  auto ex = compute_expansion(cfg, m);
  if (cfg.shifted) shift_terms(ex.terms);
  if (cfg.format == OutputFormat::Csv) return {0, terms_csv(ex.terms, ex.pi_twice)};
  if (cfg.format == OutputFormat::Structured && !cfg.shifted) return {0, serialize_expansion(ex)};
  Json j = expansion_to_json(ex);
  if (cfg.shifted) j["shifted"] = true;
  return {0, render(j, cfg.format)};
}

CommandResult cmd_verify(const RunConfig& cfg) {
  auto m = load_model(cfg.model_path);
  auto ex = compute_expansion(cfg, m);
  if (cfg.order > ex.order()) throw Error(ErrorCode::InvalidArgument, "--order exceeds the expansion order");
  std::vector<Point> ends = cfg.ends.empty() ? std::vector<Point>{Point(m.dimension(), 0)} : cfg.ends;
  for (auto& e : ends)
    if (static_cast<int>(e.size()) != m.dimension()) throw Error(ErrorCode::InvalidArgument, "endpoint has the wrong dimension");
  auto reports = convergence_diagnostics(ex, m, ends, cfg.order, cfg.nmin, cfg.nmax, 1, cfg.precision);

  bool pass = true;
  Json out;
  out["order"] = cfg.order;
  out["c"] = to_string(ex.c);
  Json jr = Json::array();
  std::ostringstream csv;
  double target = -(ex.c.get_d() + cfg.order + 1);
  for (auto& r : reports) {
    Json j = convergence_to_json(r);
    bool ok = !r.rows.empty();
    if (ok) ok = r.rows.back().rel_error.to_double() < cfg.rel_tol;
    ok = ok && r.rel_error_decreasing_top_half && std::abs(r.remainder_slope - target) <= cfg.slope_tol;
    j["expected_slope"] = target;
    j["pass"] = ok;
    pass = pass && ok;
    jr.push_back(j);
    if (cfg.format == OutputFormat::Csv) {
      csv << "# end";
      for (int v : r.end) csv << " " << v;
      csv << "\n" << convergence_csv(r);
    }
  }
  out["endpoints"] = jr;
  if (cfg.window > 0 && m.dimension() == 2) {
    Json ph = Json::array();
    for (int p = 1; p <= cfg.order; ++p) {
      PolyharmonicFn f;
      f.poly = ex.terms[p - 1];
      f.exp_bases = ex.exp_bases;
      f.lower = Point(2, 0);
      f.eigenvalue = ex.gamma;
      f.claimed_order = p;
      auto v = verify_polyharmonic(m, f, p, {0, 0}, {cfg.window, cfg.window});
      Json e{{"p", p}, {"window", cfg.window}, {"pass", v.pass}, {"checked", v.checked}};
      if (v.witness) e["witness"] = *v.witness;
      pass = pass && v.pass;
      ph.push_back(e);
    }
    out["polyharmonic"] = ph;
  }
  out["pass"] = pass;
  if (cfg.format == OutputFormat::Csv) return {pass ? 0 : 1, csv.str()};
  return {pass ? 0 : 1, render(out, cfg.format)};
}

CommandResult cmd_decompose(const RunConfig& cfg) {
  auto m = load_model(cfg.model_path);
  if (m.dimension() != 2) throw Error(ErrorCode::InvalidArgument, "decomposition needs a two-dimensional model");
  auto it = interpolate_vp(m, cfg.order);
  int lower = cfg.shifted ? 1 : 0;
  if (cfg.shifted) shift_terms(it.terms);
  PolyBasis basis, adjoint;
  if (!cfg.basis_prefix.empty()) {
    basis = load_basis(cfg.basis_prefix, {"k", "l"}, lower, it.gamma);
    std::string ap = cfg.adjoint_basis_prefix.empty() ? cfg.basis_prefix : cfg.adjoint_basis_prefix;
    adjoint = load_basis(ap, {"u", "v"}, lower, it.gamma);
  } else {
    basis = build_basis(m, it.gamma, cfg.order, {"k", "l"}, lower);
    adjoint = build_basis(reverse(m), it.gamma, cfg.order, {"u", "v"}, lower);
  }
  Json out;
  out["shifted"] = cfg.shifted;
  out["normalization"] = "coprime integer coefficients, positive leading coefficient";
  Json per = Json::array();
  for (int p = 1; p <= cfg.order; ++p) {
    LaurentPoly v = primitive_part(it.terms[p - 1]);
    auto d = decompose(v, basis, adjoint, p);
    Json j = decomposition_to_json(d, basis, adjoint);
    j.erase("basis");
    j.erase("adjoint_basis");
    j["p"] = p;
    j["v"] = poly_to_json(v);
    per.push_back(j);
  }
  out["decompositions"] = per;
  Json full = decomposition_to_json(Decomposition{}, basis, adjoint);
  out["basis"] = full["basis"];
  out["adjoint_basis"] = full["adjoint_basis"];
  out["ladder_verified"] = basis.ladder_verified && adjoint.ladder_verified;
  if (cfg.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "p,left,right,coefficient\n";
    for (auto& j : per)
      for (auto& t : j["terms"]) {
        std::string c = t["coefficient"].is_string() ? t["coefficient"].get<std::string>() : t["coefficient"].dump();
        os << j["p"].get<int>() << "," << t["left"].get<std::string>() << "," << t["right"].get<std::string>() << "," << c << "\n";
      }
    return {0, os.str()};
  }
  return {0, render(out, cfg.format)};
}

CommandResult cmd_count(const RunConfig& cfg) {
  auto m = load_model(cfg.model_path);
  const int d = m.dimension();
  Point start = start_or_origin(cfg, d);
  Point end = cfg.ends.empty() ? Point(d, 0) : cfg.ends[0];
  if (static_cast<int>(end.size()) != d) throw Error(ErrorCode::InvalidArgument, "endpoint has the wrong dimension");
  std::vector<FieldElem> series;
  if (m.rational_weights()) {
    auto c = count_at_endpoints(m, start, {end}, static_cast<int>(cfg.nmax));
    for (auto& q : c[0]) series.push_back(FieldElem(q));
  } else {
    auto t = count_paths(m, start, static_cast<int>(cfg.nmax));
    for (int n = 0; n <= cfg.nmax; ++n) series.push_back(t.at(end, n));
  }
  if (cfg.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "n,count\n";
    for (size_t n = 0; n < series.size(); ++n) os << n << "," << series[n].to_string() << "\n";
    return {0, os.str()};
  }
  Json j{{"start", start}, {"end", end}, {"n", cfg.nmax}, {"count", field_to_json(series.back())}};
  return {0, render(j, cfg.format)};
}

std::optional<ErrorCode> first_error(const Json& j) {
  if (j.is_object()) {
    if (j.contains("error") && j["error"].is_string()) {
      std::string name = j["error"].get<std::string>();
      for (int c = static_cast<int>(ErrorCode::ParseError); c <= static_cast<int>(ErrorCode::InvalidArgument); ++c)
        if (name == error_name(static_cast<ErrorCode>(c))) return static_cast<ErrorCode>(c);
    }
    for (auto& [k, v] : j.items())
      if (auto e = first_error(v)) return e;
  } else if (j.is_array()) {
    for (auto& v : j)
      if (auto e = first_error(v)) return e;
  }
  return std::nullopt;
}

CommandResult cmd_analyze(const RunConfig& cfg) {
  auto m = load_model(cfg.model_path);
  AnalysisOptions opt;
  opt.certificate_depth = cfg.depth;
  opt.start = cfg.start;
  if (!cfg.numerator_path.empty()) opt.numerator = load_numerator(cfg.numerator_path, m.dimension());
  Json j = analyze_model(m, opt);
  auto err = first_error(j);
  return {err ? static_cast<int>(*err) : 0, render(j, cfg.format)};
}

}  // namespace

CommandResult run_command(const RunConfig& cfg) {
  CommandResult r;
  try {
    validate(cfg);
    if (cfg.command == "analyze")
      r = cmd_analyze(cfg);
    else if (cfg.command == "expand")
      r = cmd_expand(cfg);
    else if (cfg.command == "verify")
      r = cmd_verify(cfg);
    else if (cfg.command == "decompose")
      r = cmd_decompose(cfg);
    else if (cfg.command == "count")
      r = cmd_count(cfg);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    Json j{{"error", error_name(e.code())}, {"message", e.what()}};
    r = {e.exit_code(), render(j, cfg.format == OutputFormat::Csv ? OutputFormat::Human : cfg.format)};
  }
  if (!cfg.out.empty()) {
    std::string tmp = cfg.out + ".tmp";
    {
      std::ofstream f(tmp);
      if (!f) return {static_cast<int>(ErrorCode::InvalidArgument), "cannot write " + cfg.out + "\n"};
      f << r.output;
    }
    std::filesystem::rename(tmp, cfg.out);
    r.output.clear();
  }
  return r;
}

}  // namespace qwalk
