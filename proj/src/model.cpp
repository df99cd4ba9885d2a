#include "qwalk/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/polyio.hpp"
#include "qwalk/saddle.hpp"

namespace qwalk {

Model::Model(std::string name, int dimension, std::vector<Step> steps)
    : name_(std::move(name)), dimension_(dimension), steps_(std::move(steps)) {
  if (dimension_ < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (steps_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a model needs at least two steps");
  std::set<std::vector<int>> seen;
  for (auto& s : steps_) {
    if (static_cast<int>(s.offset.size()) != dimension_)
      throw Error(ErrorCode::InvalidArgument, "step offset has wrong length");
    if (std::all_of(s.offset.begin(), s.offset.end(), [](int v) { return v == 0; }))
      throw Error(ErrorCode::InvalidArgument, "zero step");
    if (s.weight.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "step weights must be positive");
    if (!seen.insert(s.offset).second) throw Error(ErrorCode::InvalidArgument, "duplicate step offset");
  }
}

bool Model::small_steps() const {
  for (auto& s : steps_)
    for (int v : s.offset)
      if (v < -1 || v > 1) return false;
  return true;
}

bool Model::rational_weights() const {
  return std::all_of(steps_.begin(), steps_.end(), [](const Step& s) { return s.weight.is_rational(); });
}

int Model::max_offset() const {
  int m = 0;
  for (auto& s : steps_)
    for (int v : s.offset) m = std::max(m, std::abs(v));
  return m;
}

Model Model::sorted() const {
  auto st = steps_;
  std::sort(st.begin(), st.end(), [](const Step& a, const Step& b) { return a.offset < b.offset; });
  return Model(name_, dimension_, st);
}

bool same_step_set(const Model& a, const Model& b) {
  if (a.dimension() != b.dimension() || a.steps().size() != b.steps().size()) return false;
  auto sa = a.sorted(), sb = b.sorted();
  for (size_t i = 0; i < sa.steps().size(); ++i) {
    if (sa.steps()[i].offset != sb.steps()[i].offset) return false;
    if (sa.steps()[i].weight != sb.steps()[i].weight) return false;
  }
  return true;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

FieldElem parse_weight(const std::string& tok) {
  FieldElem w(0);
  std::string cur;
  int depth = 0;
  auto flush = [&]() {
    if (cur.empty()) throw Error(ErrorCode::ParseError, "empty weight term");
    auto c = parse_coefficient(cur);
    if (c.pi_twice != 0) throw Error(ErrorCode::ParseError, "weights cannot carry powers of pi");
    w += c.value;
    cur.clear();
  };
  for (size_t i = 0; i < tok.size(); ++i) {
    char ch = tok[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0 && i > 0) {
      flush();
      continue;
    }
    cur += ch;
  }
  flush();
  return w;
}

}  // namespace

Model parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int dim = -1;
  std::string name;
  std::vector<Step> steps;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (key == "dim") {
      if (!(ls >> dim) || dim < 1) throw Error(ErrorCode::ParseError, "bad dim" + where);
    } else if (key == "name") {
      std::getline(ls, name);
      name = trim(name);
    } else if (key == "step") {
      if (dim < 1) throw Error(ErrorCode::ParseError, "step before dim" + where);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (static_cast<int>(toks.size()) != dim + 1) throw Error(ErrorCode::ParseError, "step needs d offsets and a weight" + where);
      Step s;
      for (int j = 0; j < dim; ++j) {
        try {
          size_t pos = 0;
          s.offset.push_back(std::stoi(toks[j], &pos));
          if (pos != toks[j].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "bad offset '" + toks[j] + "'" + where);
        }
      }
      s.weight = parse_weight(toks[dim]);
      steps.push_back(std::move(s));
    } else {
      throw Error(ErrorCode::ParseError, "unknown key '" + key + "'" + where);
    }
  }
  if (dim < 1) throw Error(ErrorCode::ParseError, "missing dim header");
  try {
    return Model(name, dim, steps);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string serialize_model(const Model& m) {
  std::ostringstream out;
  out << "dim " << m.dimension() << "\n";
  if (!m.name().empty()) out << "name " << m.name() << "\n";
  for (auto& s : m.steps()) {
    out << "step";
    for (int v : s.offset) out << " " << v;
    std::string w;
    for (auto& part : format_coefficient(s.weight)) {
      if (!w.empty()) w += "+";
      w += part;
    }
    out << " " << w << "\n";
  }
  return out.str();
}

Model load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open model file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_model(buf.str());
}

LaurentPoly step_polynomial(const Model& m) {
  LaurentPoly p(default_vars(m.dimension()));
  for (auto& s : m.steps()) p.add_term(s.offset, s.weight);
  return p;
}

std::vector<FieldElem> drift(const Model& m) {
  std::vector<FieldElem> d(m.dimension(), FieldElem(0));
  for (auto& s : m.steps())
    for (int j = 0; j < m.dimension(); ++j)
      if (s.offset[j] != 0) d[j] += s.weight * FieldElem(s.offset[j]);
  return d;
}

namespace {

long det_int(std::vector<std::vector<long>> a) {
  Matrix m(a.size(), a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) m(i, j) = FieldElem(a[i][j]);
  return determinant(m).rational().get_num().get_si();
}

long int_rank(const std::vector<std::vector<int>>& vecs, int d) {
  Matrix m(vecs.size(), d);
  for (size_t i = 0; i < vecs.size(); ++i)
    for (int j = 0; j < d; ++j) m(i, j) = FieldElem(vecs[i][j]);
  return static_cast<long>(rref(m).size());
}

// normal vector orthogonal to d-1 given vectors (cofactor expansion)
std::vector<long> normal_of(const std::vector<std::vector<int>>& rows, int d) {
  std::vector<long> c(d);
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<long>> minor;
    for (auto& r : rows) {
      std::vector<long> row;
      for (int k = 0; k < d; ++k)
        if (k != j) row.push_back(r[k]);
      minor.push_back(row);
    }
    long det = minor.empty() ? 1 : det_int(minor);
    c[j] = ((j % 2) ? -det : det);
  }
  return c;
}

}  // namespace

bool check_nondegenerate(const Model& m) {
  const int d = m.dimension();
  std::vector<std::vector<int>> offs;
  for (auto& s : m.steps()) offs.push_back(s.offset);
  if (int_rank(offs, d) < d) return false;
  // The origin is interior iff no closed half-space through 0 contains every
  // step. If one exists, an extreme one is cut out by d-1 independent steps.
  const size_t n = offs.size();
  std::vector<size_t> idx(d - 1);
  std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
    if (pos == idx.size()) {
      std::vector<std::vector<int>> rows;
      for (size_t i : idx) rows.push_back(offs[i]);
      auto c = normal_of(rows, d);
      if (std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) return false;
      bool all_pos = true, all_neg = true;
      for (auto& s : offs) {
        long dot = 0;
        for (int j = 0; j < d; ++j) dot += c[j] * s[j];
        if (dot < 0) all_pos = false;
        if (dot > 0) all_neg = false;
      }
      return all_pos || all_neg;
    }
    for (size_t i = start; i < n; ++i) {
      idx[pos] = i;
      if (rec(pos + 1, i + 1)) return true;
    }
    return false;
  };
  return !rec(0, 0);
}

long periodicity(const Model& m) {
  const int d = m.dimension();
  auto& st = m.steps();
  std::vector<std::vector<long>> mat(d, std::vector<long>(st.size() - 1));
  for (size_t i = 1; i < st.size(); ++i)
    for (int j = 0; j < d; ++j) mat[j][i - 1] = st[i].offset[j] - st[0].offset[j];
  auto snf = smith_normal_form(mat);
  long period = 1;
  for (int i = 0; i < d; ++i) {
    long w = 0;
    for (int j = 0; j < d; ++j) w += snf.U[i][j] * st[0].offset[j];
    long di = i < static_cast<int>(snf.diagonal.size()) ? std::labs(snf.diagonal[i]) : 0;
    if (di == 0) {
      if (w != 0) return 0;
      continue;
    }
    long r = ((w % di) + di) % di;
    long ord = di / std::gcd(di, r);
    period = std::lcm(period, ord);
  }
  return period;
}

Correlation correlation_coefficient(const Model& m) {
  if (m.dimension() != 2) throw Error(ErrorCode::InvalidArgument, "correlation coefficient needs d = 2");
  auto dr = drift(m);
  if (!dr[0].is_zero() || !dr[1].is_zero()) throw Error(ErrorCode::NonzeroDrift, "apply the Cramer transform first");
  FieldElem m11(0), m12(0), m22(0);
  for (auto& s : m.steps()) {
    m11 += s.weight * FieldElem(s.offset[0] * s.offset[0]);
    m12 += s.weight * FieldElem(s.offset[0] * s.offset[1]);
    m22 += s.weight * FieldElem(s.offset[1] * s.offset[1]);
  }
  Correlation c;
  c.sign = -m12.sign();
  c.arg_squared = m12 * m12 / (m11 * m22);
  double arg = c.sign * std::sqrt(c.arg_squared.to_double());
  c.theta = std::acos(std::clamp(arg, -1.0, 1.0));
  if (c.arg_squared.is_rational()) {
    const Rational a2 = c.arg_squared.rational();
    struct Known {
      Rational sq;
      int sign;
      Rational pi_over_theta;
      const char* text;
    };
    const Known table[] = {
        {Rational(0), 0, Rational(2), "0"},
        {Rational(1, 4), 1, Rational(3), "1/2"},
        {Rational(1, 4), -1, Rational(3, 2), "-1/2"},
        {Rational(1, 2), 1, Rational(4), "1/sqrt(2)"},
        {Rational(1, 2), -1, Rational(4, 3), "-1/sqrt(2)"},
        {Rational(3, 4), 1, Rational(6), "sqrt(3)/2"},
        {Rational(3, 4), -1, Rational(6, 5), "-sqrt(3)/2"},
        {Rational(1), -1, Rational(1), "-1"},
    };
    for (auto& k : table) {
      if (k.sq == a2 && k.sign == c.sign) {
        c.pi_over_theta = k.pi_over_theta;
        c.argument_text = k.text;
      }
    }
    if (a2 == 1 && c.sign == 1) c.argument_text = "1";
  }
  if (c.argument_text.empty()) {
    c.argument_text = (c.sign < 0 ? "-sqrt(" : "sqrt(") + c.arg_squared.to_string() + ")";
    if (c.sign == 0) c.argument_text = "0";
  }
  return c;
}

Model reverse(const Model& m) {
  auto st = m.steps();
  for (auto& s : st)
    for (auto& v : s.offset) v = -v;
  return Model(m.name().empty() ? "" : m.name() + " reversed", m.dimension(), st);
}

Model reweight(const Model& m, const std::vector<FieldElem>& multipliers) {
  auto st = m.steps();
  for (auto& s : st)
    for (int j = 0; j < m.dimension(); ++j) s.weight *= multipliers[j].pow(s.offset[j]);
  return Model(m.name(), m.dimension(), st);
}

CramerTransform cramer_transform(const Model& m) {
  auto dom = find_dominant(m);
  return {reweight(m, dom.coords), dom.coords};
}

}  // namespace qwalk
