#include "qhecke/hecke.hpp"

#include "accumulate.hpp"
#include "qhecke/error.hpp"

namespace qhecke {

using i128 = __int128;

void HeckeParams::validate() const {
  if (a < 0 || b < 0 || c < 0) fail(ErrorKind::InvalidArgument, "double-sum parameters must be nonnegative");
  if (a == 0 && b == 0 && c == 0) fail(ErrorKind::InvalidArgument, "double-sum parameters are all zero");
  if (b == 0 && (a == 0 || c == 0))
    fail(ErrorKind::InvalidArgument, "b = 0 needs a > 0 and c > 0");
}

std::string to_string(const HeckeCall& call) {
  std::string name = call.kind == HeckeKind::TypeI ? "f" : "g";
  return name + "(" + std::to_string(call.params.a) + "," + std::to_string(call.params.b) + "," +
         std::to_string(call.params.c) + "; " + to_string(call.x) + ", " + to_string(call.y) + "; " +
         to_string(call.nome) + ")";
}

std::string to_string(const HeckeTerm& term) {
  const Monomial& p = term.prefactor;
  std::string body = to_string(term.call);
  if (p == Monomial::scalar(Rational(1))) return body;
  if (p == Monomial::scalar(Rational(-1))) return "-" + body;
  return to_string(p) + "*" + body;
}

namespace {

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

std::int64_t to_i64(const Rational& r) { return to_int64(r); }

// F(u, v) = A u^2 + B u v + C v^2 + L u + M v over u >= u0, v >= v0, all in
// scaled integers. visit(u, v, F) is called for every point with F <= bound.
template <class Visit>
void enumerate_quadrant(i128 A, i128 B, i128 C, i128 L, i128 M, i128 u0, i128 v0, i128 bound, Visit&& visit) {
  auto f = [&](i128 u, i128 v) { return A * u * u + B * u * v + C * v * v + L * u + M * v; };

  auto scan_row = [&](i128 u) {
    i128 P = B * u + M;
    if (C > 0) {
      i128 start = ceil_div(-P, 2 * C);
      if (start < v0) start = v0;
      for (i128 v = start;; ++v) {
        i128 e = f(u, v);
        if (e > bound) break;
        visit(u, v, e);
      }
      for (i128 v = start - 1; v >= v0; --v) {
        i128 e = f(u, v);
        if (e > bound) break;
        visit(u, v, e);
      }
      return;
    }
    if (P < 0 || (P == 0 && f(u, v0) <= bound))
      fail(ErrorKind::NonConvergent, "a row of the double sum has infinitely many terms below the bound");
    if (P == 0) return;
    for (i128 v = v0;; ++v) {
      i128 e = f(u, v);
      if (e > bound) break;
      visit(u, v, e);
    }
  };

  // Row minimum certificate T(u) = a2 u^2 + a1 u + a0, valid for u >= U1.
  i128 U1 = u0;
  i128 a2 = A, a1, a0;
  i128 grow = M + C * (2 * v0 + 1);  // f(u, v0 + 1) - f(u, v0) = B u + grow
  if (B > 0 || grow >= 0) {
    if (B > 0 && B * U1 + grow < 0) U1 = ceil_div(-grow, B);
    a1 = L + B * v0;
    a0 = C * v0 * v0 + M * v0;
  } else {
    if (C == 0) fail(ErrorKind::NonConvergent, "double sum has an unbounded direction (c = 0, slope <= 0)");
    i128 vs = ceil_div(-M, 2 * C);
    if (vs < v0) vs = v0;
    i128 h = C * vs * vs + M * vs;
    i128 h2 = C * (vs - 1) * (vs - 1) + M * (vs - 1);
    if (vs - 1 >= v0 && h2 < h) h = h2;
    a1 = L;
    a0 = h;
  }
  if (a2 < 0 || (a2 == 0 && a1 <= 0))
    fail(ErrorKind::NonConvergent, "row minima of the double sum do not grow");
  i128 U2 = U1;
  if (a2 > 0) {
    // smallest u with a2 (2u + 1) + a1 >= 0
    i128 cand = ceil_div(-a1 - a2, 2 * a2);
    if (cand > U2) U2 = cand;
  }
  for (i128 u = u0;; ++u) {
    if (u >= U2 && a2 * u * u + a1 * u + a0 > bound) break;
    scan_row(u);
  }
}

struct Scaled {
  std::int64_t S;
  i128 t, al, be;
};

Scaled scale(const HeckeCall& call) {
  const Rational& t = call.nome.exp;
  std::int64_t S = 2 * detail::grid_den({t, call.x.exp, call.y.exp});
  Rational s(static_cast<long>(S));
  return Scaled{S, to_i64(Rational(t * s)), to_i64(Rational(call.x.exp * s)), to_i64(Rational(call.y.exp * s))};
}

}  // namespace

QSeries lattice_sum(const HeckeCall& call, Quadrant which, const Rational& order) {
  call.params.validate();
  require_nome(call.nome);
  if (call.x.is_zero() || call.y.is_zero()) fail(ErrorKind::InvalidArgument, "double sum at a zero argument");
  const long a = call.params.a, b = call.params.b, c = call.params.c;
  Scaled sc = scale(call);
  i128 bound = static_cast<i128>(to_int64(floor_of(Rational(order * Rational(static_cast<long>(sc.S))))));
  detail::TermAccumulator acc(sc.S);

  const bool unit = (call.x.coeff == 1 || call.x.coeff == -1) && (call.y.coeff == 1 || call.y.coeff == -1);
  const bool xneg = call.x.coeff == -1, yneg = call.y.coeff == -1, nneg = call.nome.coeff == -1;

  auto add_point = [&](std::int64_t r, std::int64_t s, i128 e, int quadrant_sign) {
    std::int64_t eint = a * binom2(r) + b * r * s + c * binom2(s);
    if (unit) {
      bool neg = ((r + s) & 1) != 0;
      if (xneg && (r & 1)) neg = !neg;
      if (yneg && (s & 1)) neg = !neg;
      if (nneg && (eint & 1)) neg = !neg;
      if (quadrant_sign < 0) neg = !neg;
      acc.add_scaled(static_cast<std::int64_t>(e), Rational(neg ? -1 : 1));
    } else {
      Rational coeff = ipow(call.x.coeff, r) * ipow(call.y.coeff, s) * ipow(call.nome.coeff, eint);
      if ((r + s) & 1) coeff = -coeff;
      if (quadrant_sign < 0) coeff = -coeff;
      acc.add_scaled(static_cast<std::int64_t>(e), coeff);
    }
  };

  const i128 A = sc.t * a / 2, B = sc.t * b, C = sc.t * c / 2;
  if (which != Quadrant::Negative) {
    enumerate_quadrant(A, B, C, sc.al - A, sc.be - C, 0, 0, bound, [&](i128 u, i128 v, i128 e) {
      add_point(static_cast<std::int64_t>(u), static_cast<std::int64_t>(v), e, 1);
    });
  }
  if (which != Quadrant::Positive) {
    int sign = (call.kind == HeckeKind::TypeI) ? -1 : 1;
    enumerate_quadrant(A, B, C, A - sc.al, C - sc.be, 1, 1, bound, [&](i128 u, i128 v, i128 e) {
      add_point(-static_cast<std::int64_t>(u), -static_cast<std::int64_t>(v), e, sign);
    });
  }
  return acc.finish(order);
}

QSeries eval_hecke(const HeckeCall& call, const Rational& order) { return lattice_sum(call, Quadrant::Both, order); }

QSeries eval_terms(const std::vector<HeckeTerm>& terms, const Rational& order) {
  QSeries out = QSeries::zero(order);
  for (const auto& t : terms) out += eval_hecke(t.call, order - t.prefactor.exp) * t.prefactor;
  return out.truncated(order);
}

int sg(long n) { return n >= 0 ? 1 : -1; }
int sg_literal(long n) { return n >= 1 ? 1 : -1; }

QSeries sg_theta(const Monomial& w, const Monomial& p, long shift, const Rational& order, bool literal) {
  require_nome(p);
  if (w.is_zero()) fail(ErrorKind::InvalidArgument, "sg-weighted theta sum at zero");
  const Rational& t = p.exp;
  detail::TermAccumulator acc(detail::grid_den({t, w.exp}));
  Rational half_t = t / 2;
  detail::for_each_in_parabola(half_t, Rational(w.exp - half_t), Rational(0), std::nullopt, std::nullopt, order,
                               [&](std::int64_t n) {
                                 std::int64_t b = binom2(n);
                                 Rational coeff = ipow(p.coeff, b) * ipow(w.coeff, n);
                                 if (n % 2 != 0) coeff = -coeff;
                                 int sign = literal ? sg_literal(n - shift) : sg(n - shift);
                                 if (sign < 0) coeff = -coeff;
                                 acc.add(Rational(t * Rational(static_cast<long>(b)) + w.exp * Rational(static_cast<long>(n))),
                                         coeff);
                               });
  return acc.finish(order);
}

namespace {

QSeries scaled_eval(const Monomial& pre, const HeckeCall& call, const Rational& order) {
  return eval_hecke(call, order - pre.exp) * pre;
}

QSeries scaled_theta(const Monomial& pre, const Monomial& x, const Monomial& p, const Rational& order) {
  return theta(x, p, order - pre.exp) * pre;
}

HeckeCall reflected(const HeckeCall& call) {
  const auto& [a, b, c] = call.params;
  const Monomial& p = call.nome;
  HeckeCall out = call;
  out.x = p.pow(std::int64_t{2 * a + b}) / call.x;
  out.y = p.pow(std::int64_t{2 * c + b}) / call.y;
  return out;
}

Monomial reflection_factor(const HeckeCall& call) {
  const auto& [a, b, c] = call.params;
  return call.nome.pow(std::int64_t{a + b + c}) / (call.x * call.y);
}

struct Shifted {
  Monomial pre;
  HeckeCall call;
};

Shifted shifted(const HeckeCall& call, long l, long k) {
  if (l < 0 || k < 0) fail(ErrorKind::InvalidArgument, "shift amounts must be nonnegative");
  const auto& [a, b, c] = call.params;
  const Monomial& p = call.nome;
  Monomial pre = (-call.x).pow(std::int64_t{l}) * (-call.y).pow(std::int64_t{k}) *
                 p.pow(a * binom2(std::int64_t{l}) + b * l * k + c * binom2(std::int64_t{k}));
  HeckeCall out = call;
  out.x = p.pow(std::int64_t{a * l + b * k}) * call.x;
  out.y = p.pow(std::int64_t{b * l + c * k}) * call.y;
  return Shifted{pre, out};
}

}  // namespace

QSeries f_shift_rhs(const HeckeCall& call, long l, long k, const Rational& order) {
  const auto& [a, b, c] = call.params;
  const Monomial& p = call.nome;
  if ((l > 0 && c == 0) || (k > 0 && a == 0))
    fail(ErrorKind::InvalidArgument, "shift corrections need a theta function with positive modulus");
  HeckeCall base = call;
  base.kind = HeckeKind::TypeI;
  Shifted sh = shifted(base, l, k);
  QSeries out = scaled_eval(sh.pre, sh.call, order);
  for (long m = 0; m < l; ++m) {
    Monomial pre = (-call.x).pow(std::int64_t{m}) * p.pow(a * binom2(std::int64_t{m}));
    out += scaled_theta(pre, p.pow(std::int64_t{m * b}) * call.y, p.pow(std::int64_t{c}), order);
  }
  for (long m = 0; m < k; ++m) {
    Monomial pre = (-call.y).pow(std::int64_t{m}) * p.pow(c * binom2(std::int64_t{m}));
    out += scaled_theta(pre, p.pow(std::int64_t{m * b}) * call.x, p.pow(std::int64_t{a}), order);
  }
  return out.truncated(order);
}

QSeries g_shift_rhs(const HeckeCall& call, long l, long k, const Rational& order, bool literal_sg,
                    bool with_k_correction) {
  const auto& [a, b, c] = call.params;
  const Monomial& p = call.nome;
  if ((l > 0 && c == 0) || (k > 0 && with_k_correction && a == 0))
    fail(ErrorKind::InvalidArgument, "shift corrections need a theta function with positive modulus");
  HeckeCall base = call;
  base.kind = HeckeKind::TypeII;
  Shifted sh = shifted(base, l, k);
  QSeries out = scaled_eval(sh.pre, sh.call, order);
  for (long r = 0; r < l; ++r) {
    Monomial pre = (-call.x).pow(std::int64_t{r}) * p.pow(a * binom2(std::int64_t{r}));
    Monomial w = p.pow(std::int64_t{b * r}) * call.y;
    out += sg_theta(w, p.pow(std::int64_t{c}), 0, order - pre.exp, literal_sg) * pre;
  }
  if (with_k_correction) {
    for (long s = 0; s < k; ++s) {
      Monomial pre = (-call.y).pow(std::int64_t{s}) * p.pow(c * binom2(std::int64_t{s}));
      Monomial w = p.pow(std::int64_t{b * s}) * call.x;
      out += sg_theta(w, p.pow(std::int64_t{a}), l, order - pre.exp, literal_sg) * pre;
    }
  }
  return out.truncated(order);
}

CheckReport check_f_functional(const HeckeCall& call, const Rational& order) {
  HeckeCall f = call;
  f.kind = HeckeKind::TypeI;
  QSeries rhs = -scaled_eval(reflection_factor(f), reflected(f), order);
  return compare_series("f reflection " + to_string(f), eval_hecke(f, order), rhs, order);
}

CheckReport check_g_functional(const HeckeCall& call, const Rational& order) {
  HeckeCall g = call;
  g.kind = HeckeKind::TypeII;
  QSeries rhs = scaled_eval(reflection_factor(g), reflected(g), order);
  return compare_series("g reflection " + to_string(g), eval_hecke(g, order), rhs, order);
}

CheckReport check_f_shift(const HeckeCall& call, long l, long k, const Rational& order) {
  HeckeCall f = call;
  f.kind = HeckeKind::TypeI;
  return compare_series("f shift l=" + std::to_string(l) + " k=" + std::to_string(k) + " " + to_string(f),
                        eval_hecke(f, order), f_shift_rhs(f, l, k, order), order);
}

CheckReport check_g_shift(const HeckeCall& call, long l, long k, const Rational& order, bool literal_sg) {
  HeckeCall g = call;
  g.kind = HeckeKind::TypeII;
  return compare_series("g shift l=" + std::to_string(l) + " k=" + std::to_string(k) + " " + to_string(g),
                        eval_hecke(g, order), g_shift_rhs(g, l, k, order, literal_sg), order);
}

std::vector<HeckeTerm> f_parity_split(const HeckeCall& call) {
  const auto& [a, b, c] = call.params;
  const Monomial& p = call.nome;
  Monomial p4 = p.pow(std::int64_t{4});
  std::vector<HeckeTerm> out;
  for (long j = 0; j <= 1; ++j)
    for (long i = 0; i <= 1; ++i) {
      Monomial pre = call.x.pow(std::int64_t{i}) * call.y.pow(std::int64_t{j}) * p.pow(std::int64_t{b * i * j});
      if ((i + j) % 2 != 0) pre = -pre;
      Monomial X = -(call.x.pow(std::int64_t{2}) * p.pow(std::int64_t{a * (2 * i + 1) + 2 * b * j}));
      Monomial Y = -(call.y.pow(std::int64_t{2}) * p.pow(std::int64_t{c * (2 * j + 1) + 2 * b * i}));
      out.push_back(HeckeTerm{pre, HeckeCall{call.params, X, Y, p4, call.kind}});
    }
  return out;
}

QSeries kronecker_eval(const Monomial& x, const Monomial& y, const Monomial& nome, const Rational& order) {
  require_nome(nome);
  if (ThetaArg{x, nome}.degenerate() || ThetaArg{y, nome}.degenerate())
    fail(ErrorKind::DegenerateDenominator, "Kronecker denominator vanishes at x=" + to_string(x) + ", y=" + to_string(y));
  return evaluate_to(order, [&](const Rational& w) {
    QSeries pp = poch_inf(nome, nome, w);
    QSeries num = pp * pp * poch_inf(x * y, nome, w) * poch_inf(nome / (x * y), nome, w);
    QSeries den = poch_inf(x, nome, w) * poch_inf(nome / x, nome, w) * poch_inf(y, nome, w) * poch_inf(nome / y, nome, w);
    return num * inverse(den, Order(w - num.valuation_or_order()));
  });
}

}  // namespace qhecke
