#include "qwalk/field.hpp"

#include <numeric>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

NumberField::NumberField(Rational radicand, int degree) : radicand_(std::move(radicand)), degree_(degree) {
  if (radicand_ <= 0 || degree_ < 1) throw Error(ErrorCode::InvalidArgument, "bad number field");
}

Ball NumberField::theta(long prec) const { return Ball::root(radicand_, static_cast<unsigned long>(degree_), prec); }

FieldPtr make_field(const Rational& radicand, int degree) {
  if (radicand <= 0) throw Error(ErrorCode::InvalidArgument, "radicand must be positive");
  if (degree == 1 || radicand == 1) return nullptr;
  auto fn = factor_small(radicand.get_num());
  auto fd = factor_small(radicand.get_den());
  long g = degree;
  for (auto& [p, e] : fn) g = std::gcd(g, e);
  for (auto& [p, e] : fd) g = std::gcd(g, e);
  Rational base(1);
  for (auto& [p, e] : fn) base *= rational_pow(Rational(p), e / g);
  for (auto& [p, e] : fd) base /= rational_pow(Rational(p), e / g);
  int q = degree / static_cast<int>(g);
  if (q == 1) return nullptr;
  return std::make_shared<const NumberField>(base, q);
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (*a == *b) return a;
  if (a->radicand() == b->radicand()) {
    if (b->degree() % a->degree() == 0) return b;
    if (a->degree() % b->degree() == 0) return a;
    int l = std::lcm(a->degree(), b->degree());
    return std::make_shared<const NumberField>(a->radicand(), l);
  }
  throw Error(ErrorCode::FieldMismatch, "incompatible radical fields");
}

FieldElem::FieldElem(Radical r) : v_(std::move(r)) {}

FieldElem FieldElem::normalize(Radical r) {
  if (!r.field) return FieldElem(r.c.empty() ? Rational(0) : r.c[0]);
  for (size_t i = 1; i < r.c.size(); ++i)
    if (r.c[i] != 0) return FieldElem(std::move(r));
  return FieldElem(r.c[0]);
}

FieldElem FieldElem::from_coords(FieldPtr field, std::vector<Rational> coords) {
  if (!field) {
    if (coords.size() != 1) throw Error(ErrorCode::InvalidArgument, "rational needs one coordinate");
    return FieldElem(coords[0]);
  }
  coords.resize(static_cast<size_t>(field->degree()), Rational(0));
  return normalize(Radical{std::move(field), std::move(coords)});
}

FieldElem FieldElem::theta_power(FieldPtr field, long m) {
  if (!field) return FieldElem(1);
  long q = field->degree();
  long r = ((m % q) + q) % q;
  long k = (m - r) / q;
  std::vector<Rational> c(static_cast<size_t>(q), Rational(0));
  c[static_cast<size_t>(r)] = rational_pow(field->radicand(), k);
  return normalize(Radical{std::move(field), std::move(c)});
}

const Rational& FieldElem::rational() const {
  if (kind() != Kind::Rational) throw Error(ErrorCode::InvalidArgument, "field element is not rational");
  return std::get<Rational>(v_);
}

FieldPtr FieldElem::field() const {
  if (kind() == Kind::Radical) return std::get<Radical>(v_).field;
  return nullptr;
}

std::vector<Rational> FieldElem::coords() const {
  switch (kind()) {
    case Kind::Rational: return {std::get<Rational>(v_)};
    case Kind::Radical: return std::get<Radical>(v_).c;
    default: throw Error(ErrorCode::InvalidArgument, "ball has no exact coordinates");
  }
}

const Ball& FieldElem::ball() const {
  if (kind() != Kind::Ball) throw Error(ErrorCode::InvalidArgument, "not a ball");
  return std::get<Ball>(v_);
}

Ball FieldElem::to_ball(long prec) const {
  switch (kind()) {
    case Kind::Rational: return Ball(std::get<Rational>(v_), prec);
    case Kind::Radical: {
      const auto& r = std::get<Radical>(v_);
      Ball theta = r.field->theta(prec + 32);
      Ball acc(prec + 32);
      for (size_t i = r.c.size(); i-- > 0;) acc = acc * theta + Ball(r.c[i], prec + 32);
      return acc;
    }
    default: return std::get<Ball>(v_);
  }
}

double FieldElem::to_double() const { return to_ball(128).mid().to_double(); }

BigFloat FieldElem::to_bigfloat(long prec) const { return to_ball(prec).mid(); }

bool FieldElem::is_zero() const {
  switch (kind()) {
    case Kind::Rational: return std::get<Rational>(v_) == 0;
    case Kind::Radical: return false;
    default: {
      const auto& b = std::get<Ball>(v_);
      return b.mid().is_zero() && b.rad().is_zero();
    }
  }
}

bool FieldElem::is_one() const { return kind() == Kind::Rational && std::get<Rational>(v_) == 1; }

int FieldElem::sign() const {
  switch (kind()) {
    case Kind::Rational: return sgn(std::get<Rational>(v_));
    case Kind::Radical:
      for (long prec = 128; prec <= (1L << 16); prec *= 2) {
        int s = to_ball(prec).certain_sign();
        if (s != 0) return s;
      }
      throw Error(ErrorCode::PrecisionInsufficient, "could not decide sign of radical");
    default: {
      int s = std::get<Ball>(v_).certain_sign();
      if (s == 0 && !is_zero()) throw Error(ErrorCode::PrecisionInsufficient, "sign of ball undecided");
      return s;
    }
  }
}

struct FieldOps {
  using Radical = FieldElem::Radical;

  static Radical as_radical(const FieldElem& x, const FieldPtr& f) {
    FieldElem e = embed(x, f);
    if (e.kind() == FieldElem::Kind::Radical) return std::get<Radical>(e.v_);
    std::vector<Rational> c(static_cast<size_t>(f->degree()), Rational(0));
    c[0] = std::get<Rational>(e.v_);
    return Radical{f, std::move(c)};
  }

  static long ball_prec(const FieldElem& a, const FieldElem& b) {
    long p = kDefaultPrecision;
    if (a.kind() == FieldElem::Kind::Ball) p = a.ball().precision();
    if (b.kind() == FieldElem::Kind::Ball) p = std::max(p, b.ball().precision());
    return p;
  }

  template <class RatOp, class RadOp, class BallOp>
  static FieldElem binary(const FieldElem& a, const FieldElem& b, RatOp rat, RadOp rad, BallOp ball) {
    using K = FieldElem::Kind;
    if (a.kind() == K::Rational && b.kind() == K::Rational)
      return FieldElem(rat(std::get<Rational>(a.v_), std::get<Rational>(b.v_)));
    if (a.kind() == K::Ball || b.kind() == K::Ball) {
      long p = ball_prec(a, b);
      return FieldElem(ball(a.to_ball(p), b.to_ball(p)));
    }
    FieldPtr f = common_field(a.field(), b.field());
    return FieldElem::normalize(rad(as_radical(a, f), as_radical(b, f)));
  }

  static Radical mul(const Radical& a, const Radical& b) {
    size_t q = a.c.size();
    std::vector<Rational> c(q, Rational(0));
    const Rational& R = a.field->radicand();
    for (size_t i = 0; i < q; ++i) {
      if (a.c[i] == 0) continue;
      for (size_t j = 0; j < q; ++j) {
        if (b.c[j] == 0) continue;
        size_t k = i + j;
        if (k >= q)
          c[k - q] += a.c[i] * b.c[j] * R;
        else
          c[k] += a.c[i] * b.c[j];
      }
    }
    return Radical{a.field, std::move(c)};
  }

  static Radical inverse(const Radical& a) {
    // solve (mult-by-a) x = e_0 by Gaussian elimination
    size_t q = a.c.size();
    std::vector<std::vector<Rational>> m(q, std::vector<Rational>(q + 1, Rational(0)));
    const Rational& R = a.field->radicand();
    for (size_t j = 0; j < q; ++j)
      for (size_t i = 0; i < q; ++i) {
        size_t k = i + j;
        if (k >= q)
          m[k - q][j] += a.c[i] * R;
        else
          m[k][j] += a.c[i];
      }
    m[0][q] = 1;
    for (size_t col = 0; col < q; ++col) {
      size_t piv = col;
      while (piv < q && m[piv][col] == 0) ++piv;
      if (piv == q) throw Error(ErrorCode::DivisionByZero, "singular field element");
      std::swap(m[piv], m[col]);
      Rational inv = 1 / m[col][col];
      for (size_t j = col; j <= q; ++j) m[col][j] *= inv;
      for (size_t r = 0; r < q; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational f = m[r][col];
        for (size_t j = col; j <= q; ++j) m[r][j] -= f * m[col][j];
      }
    }
    std::vector<Rational> c(q);
    for (size_t i = 0; i < q; ++i) c[i] = m[i][q];
    return Radical{a.field, std::move(c)};
  }
};

FieldElem embed(const FieldElem& x, const FieldPtr& target) {
  if (x.kind() == FieldElem::Kind::Ball) return x;
  FieldPtr src = x.field();
  if (!src || !target) {
    if (src && !target) throw Error(ErrorCode::FieldMismatch, "cannot embed radical into Q");
    return x;
  }
  if (*src == *target) return x;
  if (src->radicand() != target->radicand() || target->degree() % src->degree() != 0)
    throw Error(ErrorCode::FieldMismatch, "cannot embed field");
  int step = target->degree() / src->degree();
  std::vector<Rational> c(static_cast<size_t>(target->degree()), Rational(0));
  auto sc = x.coords();
  for (size_t i = 0; i < sc.size(); ++i) c[i * static_cast<size_t>(step)] = sc[i];
  return FieldElem::from_coords(target, std::move(c));
}

FieldElem FieldElem::operator-() const {
  switch (kind()) {
    case Kind::Rational: return FieldElem(Rational(-std::get<Rational>(v_)));
    case Kind::Radical: {
      Radical r = std::get<Radical>(v_);
      for (auto& x : r.c) x = -x;
      return FieldElem(std::move(r));
    }
    default: return FieldElem(-std::get<Ball>(v_));
  }
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  return FieldOps::binary(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); },
      [](FieldOps::Radical x, const FieldOps::Radical& y) {
        for (size_t i = 0; i < x.c.size(); ++i) x.c[i] += y.c[i];
        return x;
      },
      [](const Ball& x, const Ball& y) { return x + y; });
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  return FieldOps::binary(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); },
      [](const FieldOps::Radical& x, const FieldOps::Radical& y) { return FieldOps::mul(x, y); },
      [](const Ball& x, const Ball& y) { return x * y; });
}

FieldElem FieldElem::inverse() const {
  switch (kind()) {
    case Kind::Rational:
      if (std::get<Rational>(v_) == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
      return FieldElem(Rational(1 / std::get<Rational>(v_)));
    case Kind::Radical: return normalize(FieldOps::inverse(std::get<Radical>(v_)));
    default: {
      const Ball& b = std::get<Ball>(v_);
      return FieldElem(Ball(Rational(1), b.precision()) / b);
    }
  }
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  using K = FieldElem::Kind;
  if (a.kind() == K::Ball || b.kind() == K::Ball) {
    if (a.kind() != b.kind()) return false;
    const Ball& x = a.ball();
    const Ball& y = b.ball();
    return mpfr_equal_p(x.mid().get(), y.mid().get()) && mpfr_equal_p(x.rad().get(), y.rad().get());
  }
  if (a.kind() == K::Rational && b.kind() == K::Rational) return a.rational() == b.rational();
  if (a.kind() != b.kind()) return false;
  try {
    return (a - b).is_zero();
  } catch (const Error&) {
    return false;
  }
}

namespace {
std::string radical_factor(const FieldPtr& f, long i) {
  long q = f->degree();
  long g = std::gcd(i, q);
  std::ostringstream os;
  os << "rad(" << to_string(f->radicand()) << "," << i / g << "/" << q / g << ")";
  return os.str();
}
}  // namespace

std::string FieldElem::to_string() const {
  switch (kind()) {
    case Kind::Rational: return qwalk::to_string(std::get<Rational>(v_));
    case Kind::Radical: {
      const auto& r = std::get<Radical>(v_);
      std::string out;
      for (size_t i = 0; i < r.c.size(); ++i) {
        if (r.c[i] == 0) continue;
        std::string term = qwalk::to_string(r.c[i]);
        if (i > 0) term += "*" + radical_factor(r.field, static_cast<long>(i));
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
      }
      return out;
    }
    default: return "~" + std::get<Ball>(v_).mid().to_string(30);
  }
}

FieldElem FieldElem::sqrt() const {
  if (kind() == Kind::Rational) {
    const Rational& q = std::get<Rational>(v_);
    if (q == 0) return FieldElem(0);
    if (q > 0) {
      auto [s, m] = extract_square(q);
      if (m == 1) return FieldElem(s);
      FieldPtr f = make_field(Rational(m), 2);
      return FieldElem::from_coords(f, {Rational(0), s});
    }
  }
  if (kind() == Kind::Radical) {
    // c*theta^j has a square root c'*phi^m in Q(theta) or in Q(theta^(1/2))
    const auto& r = std::get<Radical>(v_);
    int nz = 0;
    size_t j = 0;
    for (size_t i = 0; i < r.c.size(); ++i)
      if (r.c[i] != 0) {
        ++nz;
        j = i;
      }
    if (nz == 1 && r.c[j] > 0) {
      for (int scale : {1, 2}) {
        FieldPtr f = scale == 1 ? r.field : std::make_shared<const NumberField>(r.field->radicand(), 2 * r.field->degree());
        long q = f->degree();
        long jj = static_cast<long>(j) * scale;
        for (long shift : {0L, q}) {
          long m = jj + shift;
          if (m % 2) continue;
          Rational rest = r.c[j] / rational_pow(f->radicand(), shift / q);
          auto [s, sq] = extract_square(rest);
          if (sq == 1) return FieldElem(s) * theta_power(f, m / 2);
        }
      }
    }
  }
  Ball b = to_ball();
  return FieldElem(Ball::sqrt(b));
}

}  // namespace qwalk
