#include "qhecke/appell.hpp"

#include "accumulate.hpp"
#include "qhecke/error.hpp"

namespace qhecke {

namespace {

Factor theta_factor(Monomial x, Monomial p, bool inverted = false) {
  return Factor{[x, p](const Rational& w) { return theta(x, p, w); }, inverted};
}

Factor m_factor(Monomial x, Monomial z, Monomial p) {
  return Factor{[x, z, p](const Rational& w) { return appell_m(x, z, p, w); }, false};
}

Factor series_factor(std::function<QSeries(const Rational&)> f, bool inverted = false) {
  return Factor{std::move(f), inverted};
}

// nome^e for rational e; fractional powers require a +1 coefficient.
Monomial npow(const Monomial& nome, const Rational& e) { return nome.pow(e); }

}  // namespace

QSeries appell_numerator(const AppellCall& call, const Rational& order) {
  const Monomial& p = call.nome;
  require_nome(p);
  const Monomial xz = call.x * call.z;
  detail::TermAccumulator acc(detail::grid_den({p.exp, call.x.exp, call.z.exp}));
  const Rational& t = p.exp;
  Rational half_t = t / 2;
  detail::for_each_in_parabola(half_t, Rational(call.z.exp - half_t), Rational(0), std::nullopt, std::nullopt, order,
                               [&](std::int64_t r) {
                                 Monomial num = p.pow(binom2(r)) * call.z.pow(r);
                                 if (r % 2 != 0) num = -num;
                                 Monomial w = p.pow(r - 1) * xz;
                                 if (w.exp > 0) {
                                   Monomial term = num;
                                   while (term.exp <= order) {
                                     acc.add(term.exp, term.coeff);
                                     term = term * w;
                                   }
                                 } else if (w.exp < 0) {
                                   Monomial winv = w.inverse();
                                   Monomial term = -(num * winv);
                                   while (term.exp <= order) {
                                     acc.add(term.exp, term.coeff);
                                     term = term * winv;
                                   }
                                 } else {
                                   if (w.coeff == 1)
                                     fail(ErrorKind::PoleAtTerm, "Appell sum has a pole at term r = " + std::to_string(r));
                                   acc.add(num.exp, num.coeff / (1 - w.coeff));
                                 }
                               });
  return acc.finish(order);
}

QSeries eval_m(const AppellCall& call, const Rational& order) {
  require_nome(call.nome);
  if (call.x.is_zero() || call.z.is_zero()) fail(ErrorKind::InvalidArgument, "Appell sum at a zero argument");
  if (ThetaArg{call.z, call.nome}.degenerate())
    fail(ErrorKind::DegenerateZ, "j(z; nome) vanishes at z = " + to_string(call.z));
  AppellCall c = call;
  return product_to(order, Monomial::scalar(Rational(1)),
                    {series_factor([c](const Rational& w) { return appell_numerator(c, w); }),
                     theta_factor(c.z, c.nome, true)});
}

QSeries f121_rhs(const Monomial& x, const Monomial& y, const Monomial& p, const Rational& order) {
  const Monomial one = Monomial::scalar(Rational(1));
  Monomial p2 = p.pow(std::int64_t{2}), p3 = p.pow(std::int64_t{3});
  QSeries a = product_to(order, one, {theta_factor(y, p), m_factor(p2 * x / y.pow(std::int64_t{2}), y / x, p3)});
  QSeries b = product_to(order, one, {theta_factor(x, p), m_factor(p2 * y / x.pow(std::int64_t{2}), x / y, p3)});
  return (a + b).truncated(order);
}

QSeries f131_appell_part(const Monomial& x, const Monomial& y, const Monomial& p, long l, const Rational& order) {
  const Monomial one = Monomial::scalar(Rational(1));
  Monomial p5 = p.pow(std::int64_t{5}), p8 = p.pow(std::int64_t{8}), p2l = p.pow(std::int64_t{2 * l});
  QSeries a = product_to(order, one, {theta_factor(y, p), m_factor(-(p5 * x / y.pow(std::int64_t{3})), p2l * y / x, p8)});
  QSeries b = product_to(order, one, {theta_factor(x, p), m_factor(-(p5 * y / x.pow(std::int64_t{3})), x / (p2l * y), p8)});
  return (a + b).truncated(order);
}

QSeries f131_correction(const Monomial& x, const Monomial& y, const Monomial& p, long l, const Rational& order) {
  Monomial pre = p.pow(std::int64_t{4 * l + 1} + binom2(std::int64_t{l})) * x.pow(std::int64_t{l + 1}) * y;
  if (l % 2 == 0) pre = -pre;  // -(-1)^l
  ThetaArg d1{-(p.pow(std::int64_t{2 * l + 3}) * x.pow(std::int64_t{2})), p.pow(std::int64_t{8})};
  ThetaArg d2{-(p.pow(std::int64_t{6 * l + 3}) * y.pow(std::int64_t{2})), p.pow(std::int64_t{8})};
  if (d1.degenerate() || d2.degenerate())
    fail(ErrorKind::DegenerateDenominator, "correction quotient has a vanishing denominator at l = " + std::to_string(l));
  Monomial xy = x * y;
  return product_to(order, pre,
                    {theta_factor(p.pow(std::int64_t{2}), p.pow(std::int64_t{4})),
                     theta_factor(p.pow(std::int64_t{8}), p.pow(std::int64_t{16})),
                     theta_factor(p.pow(std::int64_t{4 * l + 3}) * xy, p.pow(std::int64_t{8})),
                     theta_factor(p.pow(std::int64_t{8 * l + 14}) * xy.pow(std::int64_t{2}), p.pow(std::int64_t{16})),
                     theta_factor(d1.x, d1.nome, true), theta_factor(d2.x, d2.nome, true)});
}

QSeries f131_rhs(const Monomial& x, const Monomial& y, const Monomial& p, long l, const Rational& order) {
  return (f131_appell_part(x, y, p, l, order) + f131_correction(x, y, p, l, order)).truncated(order);
}

namespace {

void require_positive_discriminant(const HeckeParams& hp) {
  if (hp.a <= 0 || hp.b <= 0 || hp.c <= 0 || hp.discriminant() <= 0)
    fail(ErrorKind::InvalidArgument, "needs positive a, b, c with b^2 - ac > 0");
}

}  // namespace

QSeries G_abc(const HeckeParams& hp, const Monomial& x, const Monomial& y, const Monomial& z1, const Monomial& z0,
              const Monomial& nome, const Rational& order) {
  require_positive_discriminant(hp);
  require_nome(nome);
  const long a = hp.a, b = hp.b, c = hp.c, D = hp.discriminant();
  const Monomial& q = nome;
  QSeries out = QSeries::zero(order);
  for (long t = 0; t < a; ++t) {
    Monomial pre = (-y).pow(std::int64_t{t}) * q.pow(c * binom2(std::int64_t{t}));
    Monomial arg = -(q.pow(a * binom2(std::int64_t{b + 1}) - c * binom2(std::int64_t{a + 1}) - t * D) *
                     (-y).pow(std::int64_t{a}) / (-x).pow(std::int64_t{b}));
    out += product_to(order, pre, {theta_factor(q.pow(std::int64_t{b * t}) * x, q.pow(std::int64_t{a})),
                                   m_factor(arg, z0, q.pow(std::int64_t{a * D}))});
  }
  for (long t = 0; t < c; ++t) {
    Monomial pre = (-x).pow(std::int64_t{t}) * q.pow(a * binom2(std::int64_t{t}));
    Monomial arg = -(q.pow(c * binom2(std::int64_t{b + 1}) - a * binom2(std::int64_t{c + 1}) - t * D) *
                     (-x).pow(std::int64_t{c}) / (-y).pow(std::int64_t{b}));
    out += product_to(order, pre, {theta_factor(q.pow(std::int64_t{b * t}) * y, q.pow(std::int64_t{c})),
                                   m_factor(arg, z1, q.pow(std::int64_t{c * D}))});
  }
  return out.truncated(order);
}

QSeries theta_abc(const HeckeParams& hp, const Monomial& x, const Monomial& y, const Monomial& nome,
                  const Rational& order, std::optional<long> f_terms) {
  require_positive_discriminant(hp);
  require_nome(nome);
  const Rational a(hp.a), b(hp.b), c(hp.c), D(hp.discriminant());
  const Monomial& q = nome;
  auto Q = [&](const Rational& e) { return npow(q, e); };
  const Monomial mx = -x, my = -y;
  const Rational dfrac = c / 2 - Rational(floor_of(Rational(c / 2)));
  const Rational efrac = a / 2 - Rational(floor_of(Rational(a / 2)));
  const long nf = f_terms.value_or(hp.b);

  QSeries out = QSeries::zero(order);
  for (long ds = 0; ds < hp.b; ++ds)
    for (long es = 0; es < hp.b; ++es) {
      const Rational d = Rational(ds) + dfrac, e = Rational(es) + efrac;
      const Rational dd = d - c / 2, ee = e + a / 2;
      Monomial head = Q(Rational(a * binom2(dd) + b * dd * ee + c * binom2(ee))) * mx.pow(dd) * my.pow(ee);

      const Monomial nb = Q(Rational(b * D));
      Monomial num3 = Q(Rational(D * (d + e) + a * c - b * (a + c) / 2)) * mx.pow(Rational(b - c)) * my.pow(Rational(b - a));
      Monomial den4 = Q(Rational(D * e + a * (c - b) / 2)) * mx.pow(b) * my.pow(Rational(-a));
      Monomial den5 = Q(Rational(D * d + c * (a - b) / 2)) * my.pow(b) * mx.pow(Rational(-c));
      if (ThetaArg{den4, nb}.degenerate() || ThetaArg{den5, nb}.degenerate())
        fail(ErrorKind::DegenerateDenominator,
             "theta aggregate denominator vanishes at d*=" + std::to_string(ds) + ", e*=" + std::to_string(es));

      for (long f = 0; f < nf; ++f) {
        const Rational F(f);
        Monomial pre = head * Q(Rational(a * b * b * binom2(F) + (a * (b * d + b * b + c * e) - a * c * (b + 1) / 2) * F)) *
                       my.pow(Rational(a * F));
        Monomial arg1 = -(Q(Rational(c * (a * d + b * e + a * (b - 1) / 2 + a * b * F))) * mx.pow(c));
        Monomial arg2 = -(Q(Rational(a * ((d + b * (b + 1) / 2 + b * F) * D + c * (a - b) / 2))) * mx.pow(Rational(-a * c)) *
                          my.pow(Rational(a * b)));
        Factor pb{[nb](const Rational& w) {
                    QSeries s = poch_inf(nb, nb, w);
                    return s * s * s;
                  },
                  false};
        out += product_to(order, pre,
                          {theta_factor(arg1, Q(Rational(c * b * b))), theta_factor(arg2, Q(Rational(a * b * b * D))), pb,
                           theta_factor(num3, nb), theta_factor(den4, nb, true), theta_factor(den5, nb, true)});
      }
    }
  return out.truncated(order);
}

QSeries general_expansion(const HeckeParams& hp, const Monomial& x, const Monomial& y, const Monomial& nome,
                          const Rational& order) {
  const Monomial m1 = Monomial::scalar(Rational(-1));
  const long D = hp.discriminant();
  QSeries g = G_abc(hp, x, y, m1, m1, nome, order);
  QSeries th = product_to(order, Monomial::scalar(Rational(1)),
                          {series_factor([&](const Rational& w) { return theta_abc(hp, x, y, nome, w); }),
                           theta_factor(m1, nome.pow(std::int64_t{hp.a * D}), true),
                           theta_factor(m1, nome.pow(std::int64_t{hp.c * D}), true)});
  return (g + th).truncated(order);
}

QSeries mock_psi(const Rational& order) {
  QSeries out = QSeries::constant(Rational(1), order);
  QSeries term = QSeries::constant(Rational(1));  // q^{n^2} / (q;q^2)_n
  for (long n = 1; n * n <= order; ++n) {
    term = over_one_minus(term * Monomial::q(Rational(2 * n - 1)), Monomial::q(Rational(2 * n - 1)), Order(order));
    out += term;
  }
  return out.truncated(order);
}

QSeries mock_mu3(const Rational& order) {
  const Monomial q = Monomial::q();
  QSeries m = appell_m(-q.pow(std::int64_t{3}), -Monomial::q(0), q.pow(std::int64_t{12}), order);
  QSeries quotient = product_to(order, Monomial::scalar(Rational(1)),
                                {series_factor([](const Rational& w) { return pow(big_j(6, 12, w), 2); }),
                                 series_factor([](const Rational& w) { return pow(big_jm(3, w), 3); }, true)});
  return (4 * m - quotient).truncated(order);
}

QSeries mock_phi(const Rational& order) {
  return 2 * appell_m(Monomial::q(), -Monomial::q(0), Monomial::q(3), order);
}

QSeries sigma_series(const Rational& order) {
  QSeries out = QSeries::constant(Rational(1), order);
  QSeries recip = QSeries::constant(Rational(1));  // 1 / ((1+q)...(1+q^n))
  for (long n = 1; n * (n + 1) / 2 <= order; ++n) {
    recip = over_one_minus(recip, -Monomial::q(Rational(n)), Order(order - Rational(n * (n + 1) / 2)));
    out += recip * Monomial::q(Rational(n * (n + 1) / 2));
  }
  return out.truncated(order);
}

QSeries theta2_series(const Rational& order) {
  const Monomial q = Monomial::q();
  auto qp = [q](long e) { return q.pow(std::int64_t{e}); };
  auto inner = [qp](const Rational& w) {
    QSeries sum = QSeries::zero(w);
    for (long r = 0; r <= 1; ++r)
      sum += product_to(w, qp(2 * r),
                        {theta_factor(-qp(7 + 3 * r), qp(6)), theta_factor(-qp(6 * r), qp(12)),
                         theta_factor(qp(7), qp(6), true), theta_factor(-qp(3 * r), qp(6), true)});
    return sum.truncated(w);
  };
  return product_to(order, Monomial::scalar(Rational(1)),
                    {series_factor([](const Rational& w) { return pow(big_jm(6, w), 3); }),
                     theta_factor(-qp(2), qp(3), true), theta_factor(-Monomial::q(0), qp(12), true),
                     series_factor(inner)});
}

}  // namespace qhecke
