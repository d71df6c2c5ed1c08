#include "qhecke/theta.hpp"

#include "accumulate.hpp"
#include "qhecke/error.hpp"

namespace qhecke {

bool ThetaArg::degenerate() const {
  if (x.is_zero()) return false;
  Rational k = x.exp / nome.exp;
  if (!is_integer(k)) return false;
  return x.coeff == ipow(nome.coeff, to_int64(k));
}

QSeries theta_sum(const ThetaArg& arg, const Rational& order) {
  require_nome(arg.nome);
  if (arg.x.is_zero()) fail(ErrorKind::InvalidArgument, "theta function at x = 0");
  const Rational& t = arg.nome.exp;
  const Rational& alpha = arg.x.exp;
  detail::TermAccumulator acc(detail::grid_den({t, alpha}));
  Rational half_t = t / 2;
  detail::for_each_in_parabola(half_t, Rational(alpha - half_t), Rational(0), std::nullopt, std::nullopt, order,
                               [&](std::int64_t n) {
                                 std::int64_t b = binom2(n);
                                 Rational c = ipow(arg.nome.coeff, b) * ipow(arg.x.coeff, n);
                                 if (n % 2 != 0) c = -c;
                                 Rational nn(static_cast<long>(n));
                                 acc.add(Rational(t * Rational(static_cast<long>(b)) + alpha * nn), c);
                               });
  return acc.finish(order);
}

QSeries theta_prod(const ThetaArg& arg, const Rational& order) {
  require_nome(arg.nome);
  if (arg.x.is_zero()) fail(ErrorKind::InvalidArgument, "theta function at x = 0");
  const Monomial& p = arg.nome;
  Monomial x = arg.x;
  Monomial pref = Monomial::scalar(Rational(1));
  // j(x) = -x j(px) and j(x) = -p x^-1 j(x/p).
  while (x.exp <= 0) {
    pref = pref * (-x);
    x = x * p;
  }
  while (x.exp > p.exp) {
    pref = pref * (-(p / x));
    x = x / p;
  }
  Rational inner = order - pref.exp;
  QSeries out = poch_inf(x, p, inner) * poch_inf(p / x, p, inner) * poch_inf(p, p, inner);
  return (out * pref).truncated(order);
}

QSeries big_j(long a, long m, const Rational& order) {
  if (m <= 0) fail(ErrorKind::InvalidArgument, "J needs a positive modulus");
  return theta(Monomial::q(Rational(a)), Monomial::q(Rational(m)), order);
}

QSeries big_jbar(long a, long m, const Rational& order) {
  if (m <= 0) fail(ErrorKind::InvalidArgument, "Jbar needs a positive modulus");
  return theta(-Monomial::q(Rational(a)), Monomial::q(Rational(m)), order);
}

QSeries big_jm(long m, const Rational& order) { return big_j(m, 3 * m, order); }

std::vector<SplitTerm> theta_split(const ThetaArg& arg, long m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "theta split needs m >= 1");
  std::vector<SplitTerm> out;
  const Monomial& p = arg.nome;
  Monomial zm = arg.x.pow(static_cast<std::int64_t>(m));
  Monomial sign = Monomial::scalar(Rational((m + 1) % 2 == 0 ? 1 : -1));
  for (long k = 0; k < m; ++k) {
    Monomial pre = p.pow(binom2(static_cast<std::int64_t>(k))) * arg.x.pow(static_cast<std::int64_t>(k));
    if (k % 2 != 0) pre = -pre;
    Monomial x = sign * p.pow(binom2(static_cast<std::int64_t>(m)) + m * k) * zm;
    out.push_back(SplitTerm{pre, ThetaArg{x, p.pow(static_cast<std::int64_t>(m) * m)}});
  }
  return out;
}

QSeries evaluate_split(const std::vector<SplitTerm>& terms, const Rational& order) {
  QSeries out = QSeries::zero(order);
  for (const auto& t : terms) out += theta_sum(t.arg, order - t.prefactor.exp) * t.prefactor;
  return out.truncated(order);
}

CheckReport compare_series(std::string name, const QSeries& lhs, const QSeries& rhs, const Rational& order) {
  return CheckReport{std::move(name), order, first_mismatch(lhs, rhs, order)};
}

namespace {

// J_k in the nome p: (p^k; p^k)_inf.
QSeries nome_jm(const Monomial& p, std::int64_t k, const Rational& order) {
  return theta(p.pow(k), p.pow(3 * k), order);
}

std::string label(const char* what, const ThetaArg& a) {
  return std::string(what) + " x=" + to_string(a.x) + " nome=" + to_string(a.nome);
}

}  // namespace

std::vector<CheckReport> check_theta_identities(const Rational& order) {
  const std::vector<ThetaArg> specs = {
      {Monomial::q(make_rational(1, 2)), Monomial::q()},
      {-Monomial::q(), Monomial::q()},
      {Monomial::q(-1), Monomial::q(2)},
      {-Monomial::q(make_rational(3, 2)), Monomial::q(2)},
      {Monomial::q(3), Monomial::q(4)},
      {Monomial{Rational(2), Rational(1)}, Monomial::q(3)},
      {Monomial::q(make_rational(1, 2)), -Monomial::q()},
  };
  std::vector<CheckReport> out;
  for (const auto& a : specs) {
    const Monomial& x = a.x;
    const Monomial& p = a.nome;
    out.push_back(compare_series(label("reflection", a), theta(x, p, order), theta(p / x, p, order), order));

    QSeries rhs = theta(x, p, order + x.exp) * (-x.inverse());
    out.push_back(compare_series(label("quasi-period", a), theta(p * x, p, order), rhs, order));

    // j(x^2;p^2) = j(x;p) j(-x;p) J_2 / J_1^2; every factor has valuation 0
    // once x sits in the fundamental strip, so shift the comparison there.
    Rational w = order + 4 * (x.exp < 0 ? -x.exp : x.exp) + 4 * p.exp;
    QSeries j1 = nome_jm(p, 1, w);
    QSeries x2 = theta(x, p, w) * theta(-x, p, w) * nome_jm(p, 2, w) * inverse(j1 * j1, w);
    out.push_back(compare_series(label("duplication", a), theta(x.pow(std::int64_t{2}), p.pow(std::int64_t{2}), order),
                                 x2.truncated(order), order));

    QSeries j2 = nome_jm(p, 2, w);
    QSeries prod = theta(x, p.pow(std::int64_t{2}), w) * theta(p * x, p.pow(std::int64_t{2}), w) * j1 * inverse(j2 * j2, w);
    out.push_back(compare_series(label("nome-halving", a), theta(x, p, order), prod.truncated(order), order));
  }
  return out;
}

}  // namespace qhecke
