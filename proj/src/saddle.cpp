#include "qwalk/saddle.hpp"

#include <numeric>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/polyio.hpp"

namespace qwalk {

bool Twist::is_trivial() const {
  if (!zeta.is_one()) return false;
  for (auto& a : alphas)
    if (!a.is_one()) return false;
  return true;
}

std::string Twist::to_string() const {
  std::string out = "(";
  for (size_t i = 0; i < alphas.size(); ++i) out += (i ? "," : "") + alphas[i].to_string();
  return out + ";" + zeta.to_string() + ")";
}

namespace {

struct Objective {
  BigFloat value;
  std::vector<BigFloat> grad;
  std::vector<std::vector<BigFloat>> hess;
};

// F(z) = log S(e^z) with its gradient and Hessian
Objective evaluate(const Model& m, const std::vector<BigFloat>& z, long prec) {
  const int d = m.dimension();
  BigFloat total(0.0, prec);
  std::vector<BigFloat> g(d, BigFloat(0.0, prec));
  std::vector<std::vector<BigFloat>> h(d, std::vector<BigFloat>(d, BigFloat(0.0, prec)));
  for (auto& s : m.steps()) {
    BigFloat e(0.0, prec);
    for (int j = 0; j < d; ++j) e += z[j] * BigFloat(static_cast<double>(s.offset[j]), prec);
    BigFloat w = s.weight.to_bigfloat(prec) * e.exp();
    total += w;
    for (int j = 0; j < d; ++j) {
      BigFloat sj(static_cast<double>(s.offset[j]), prec);
      g[j] += w * sj;
      for (int k = 0; k < d; ++k) h[j][k] += w * sj * BigFloat(static_cast<double>(s.offset[k]), prec);
    }
  }
  for (int j = 0; j < d; ++j) g[j] = g[j] / total;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) h[j][k] = h[j][k] / total - g[j] * g[k];
  return {total.log(), g, h};
}

std::vector<BigFloat> solve_dense(std::vector<std::vector<BigFloat>> a, std::vector<BigFloat> b) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (a[r][c].abs() > a[piv][c].abs()) piv = r;
    if (a[piv][c].is_zero()) throw Error(ErrorCode::NotPositiveDefinite, "singular Hessian at the saddle");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      BigFloat f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
      b[r] = b[r] - f * b[c];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] = b[i] / a[i][i];
  return b;
}

// best rational approximation with denominator below 10^12 within tol, if any
std::optional<Rational> recognize_rational(const BigFloat& y, const BigFloat& tol) {
  long prec = y.precision();
  BigFloat r = y;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 80; ++it) {
    BigInt a;
    BigFloat fl(prec);
    mpfr_floor(fl.get(), r.get());
    mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (q1 > BigInt("1000000000000")) return std::nullopt;
    Rational cand(p1, q1);
    cand.canonicalize();
    if ((y - BigFloat(cand, prec)).abs() < tol) return cand;
    BigFloat frac = r - fl;
    if (frac.is_zero()) return std::nullopt;
    r = BigFloat(1.0, prec) / frac;
  }
  return std::nullopt;
}

std::vector<FieldElem> exact_gradient(const Model& m, const std::vector<FieldElem>& x) {
  std::vector<FieldElem> g(m.dimension(), FieldElem(0));
  for (auto& s : m.steps()) {
    FieldElem mono = s.weight;
    for (int j = 0; j < m.dimension(); ++j) mono *= x[j].pow(s.offset[j]);
    for (int j = 0; j < m.dimension(); ++j)
      if (s.offset[j] != 0) g[j] += mono * FieldElem(s.offset[j]);
  }
  return g;
}

}  // namespace

DominantSaddle find_dominant(const Model& m, long prec) {
  if (!check_nondegenerate(m)) throw Error(ErrorCode::DegenerateModel, "all steps lie in a closed half-space");
  const int d = m.dimension();
  auto S = step_polynomial(m);
  auto dr = drift(m);
  if (std::all_of(dr.begin(), dr.end(), [](const FieldElem& v) { return v.is_zero(); })) {
    std::vector<FieldElem> ones(d, FieldElem(1));
    return {ones, S.eval(ones), true};
  }
  // damped Newton on the convex function log S(e^z)
  std::vector<BigFloat> z(d, BigFloat(0.0, prec));
  BigFloat tiny(1.0, prec);
  mpfr_mul_2si(tiny.get(), tiny.get(), -(prec - 24), MPFR_RNDN);
  std::vector<BigFloat> last_step(d, BigFloat(1.0, prec));
  for (int it = 0; it < 400; ++it) {
    auto ob = evaluate(m, z, prec);
    BigFloat gnorm(0.0, prec);
    for (auto& g : ob.grad) gnorm += g * g;
    if (gnorm.sqrt() < tiny) break;
    std::vector<BigFloat> negg;
    for (auto& g : ob.grad) negg.push_back(-g);
    auto step = solve_dense(ob.hess, negg);
    BigFloat t(1.0, prec);
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<BigFloat> trial = z;
      for (int j = 0; j < d; ++j) trial[j] += t * step[j];
      if (evaluate(m, trial, prec).value < ob.value + tiny) {
        z = trial;
        break;
      }
      t = t * BigFloat(0.5, prec);
    }
    for (int j = 0; j < d; ++j) last_step[j] = t * step[j];
  }
  std::vector<BigFloat> xs;
  for (auto& zj : z) xs.push_back(zj.exp());

  BigFloat tol(1.0, prec);
  mpfr_mul_2si(tol.get(), tol.get(), -(prec / 2), MPFR_RNDN);
  std::vector<FieldElem> exact;
  for (int j = 0; j < d && static_cast<int>(exact.size()) == j; ++j) {
    for (long q = 1; q <= 12; ++q) {
      BigFloat y = xs[j].pow_si(q);
      auto r = recognize_rational(y, tol * y.abs());
      if (r && *r > 0) {
        exact.push_back(radical_power(*r, Rational(1, q)));
        break;
      }
    }
  }
  if (static_cast<int>(exact.size()) == d) {
    try {
      auto g = exact_gradient(m, exact);
      if (std::all_of(g.begin(), g.end(), [](const FieldElem& v) { return v.is_zero(); }))
        return {exact, S.eval(exact), true};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FieldMismatch) throw;
    }
  }
  std::vector<FieldElem> balls;
  for (int j = 0; j < d; ++j) {
    BigFloat rad = (last_step[j].abs() + tiny) * BigFloat(16.0, prec) * xs[j];
    balls.push_back(FieldElem(Ball(xs[j], rad)));
  }
  return {balls, S.eval(balls), false};
}

std::vector<Twist> associated_saddles(const Model& m) {
  const int d = m.dimension();
  auto& st = m.steps();
  std::vector<std::vector<long>> mat(d, std::vector<long>(st.size() - 1));
  for (size_t i = 1; i < st.size(); ++i)
    for (int j = 0; j < d; ++j) mat[j][i - 1] = st[i].offset[j] - st[0].offset[j];
  auto snf = smith_normal_form(mat);
  std::vector<long> orders(d);
  for (int i = 0; i < d; ++i) {
    long di = i < static_cast<int>(snf.diagonal.size()) ? std::labs(snf.diagonal[i]) : 0;
    if (di == 0) throw Error(ErrorCode::DegenerateModel, "step differences do not span a full-rank lattice");
    orders[i] = di;
  }
  std::vector<Twist> out;
  std::vector<long> w(d, 0);
  while (true) {
    Twist t;
    for (int j = 0; j < d; ++j) {
      Rational e(0);
      for (int i = 0; i < d; ++i) e += Rational(w[i] * snf.U[i][j], orders[i]);
      t.alphas.push_back(RootOfUnity(e));
    }
    RootOfUnity z;
    for (int j = 0; j < d; ++j) z = z * t.alphas[j].pow(st[0].offset[j]);
    t.zeta = z;
    out.push_back(t);
    int i = d - 1;
    while (i >= 0 && ++w[i] == orders[i]) w[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Matrix local_qform(const Model& m, const std::vector<FieldElem>& saddle) {
  const int d = m.dimension();
  auto S = step_polynomial(m);
  FieldElem gamma = S.eval(saddle);
  Matrix q(d, d);
  std::vector<FieldElem> grad(d, FieldElem(0));
  for (auto& s : m.steps()) {
    FieldElem p = s.weight;
    for (int j = 0; j < d; ++j) p *= saddle[j].pow(s.offset[j]);
    for (int j = 0; j < d; ++j) grad[j] += p * FieldElem(s.offset[j]);
    p /= gamma * FieldElem(2);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (s.offset[i] * s.offset[j] != 0) q(i, j) += p * FieldElem(s.offset[i] * s.offset[j]);
  }
  for (auto& g : grad)
    if (g.is_exact() && !g.is_zero()) throw Error(ErrorCode::InvalidArgument, "point is not a critical point of S");
  if (!is_positive_definite(q)) throw Error(ErrorCode::NotPositiveDefinite, "local quadratic form is not positive definite");
  return q;
}

bool is_positive_definite(const Matrix& q) {
  for (size_t k = 1; k <= q.rows(); ++k) {
    Matrix minor(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor(i, j) = q(i, j);
    if (determinant(minor).sign() <= 0) return false;
  }
  return true;
}

SaddleSystem saddle_system(const Model& m) {
  auto dom = find_dominant(m);
  SaddleSystem sys;
  sys.dominant = dom.coords;
  sys.gamma = dom.gamma;
  sys.exact = dom.exact;
  sys.twists = associated_saddles(m);
  sys.qform = local_qform(m, dom.coords);
  return sys;
}

NumeratorAt numerator_regular_at(const std::vector<FieldElem>& saddle, const RatFunc& n) {
  FieldElem den = n.den().eval(saddle);
  if (den.is_exact() ? den.is_zero() : den.ball().contains_zero()) return {false, FieldElem(0)};
  return {true, n.num().eval(saddle) / den};
}

}  // namespace qwalk
