#include "doctest.h"
#include "qhecke/error.hpp"
#include "qhecke/series.hpp"
#include "support.hpp"

using namespace qhecke;
using namespace testing_support;

namespace {

// Brute force: expand prod_{i=1}^{n} (1 - q^{i*step}) with plain integer vectors.
std::vector<long> brute_euler(long step, long upto) {
  std::vector<long> c(static_cast<std::size_t>(upto + 1), 0);
  c[0] = 1;
  for (long i = 1; i * step <= upto; ++i)
    for (long e = upto; e >= i * step; --e) c[static_cast<std::size_t>(e)] -= c[static_cast<std::size_t>(e - i * step)];
  return c;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(parse_rational("-3/6") == R(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(binom2(R(1, 2)) == R(-1, 8));
  CHECK(floor_of(R(-1, 2)) == -1);
  CHECK(ceil_of(R(-1, 2)) == 0);
  CHECK(ipow(R(-2), 3) == -8);
  CHECK(ipow(R(2), -2) == R(1, 4));
}

TEST_CASE("addition") {
  QSeries s = poly({1, 2, 3});
  CHECK(same_to(s + QSeries::zero(), s, R(5)));
  QSeries t = poly({1, -1}) + poly({0, 1});
  CHECK(t.term_count() == 1);
  CHECK(t.coeff(R(0)) == 1);
  CHECK(t.coeff(R(1)) == 0);
  QSeries u = poly({1, 0, 1}) + poly({1, 0, -1});
  CHECK(u.as_monomial()->coeff == 2);
  CHECK(*(poly({1}, 0, R(3)) + poly({1}, 0, R(7))).order() == 3);
}

TEST_CASE("multiplication") {
  QSeries geo = inverse(poly({1, -1}), R(20));
  QSeries one = poly({1, -1}) * geo;
  CHECK(same_to(one, QSeries::constant(R(1)), R(20)));
  CHECK(same_to(poly({1, 1}) * poly({1, 1}), poly({1, 2, 1}), R(10)));
  QSeries shifted = poly({1}, -1) * poly({1, 1}, 1);
  CHECK(same_to(shifted, poly({1, 1}), R(10)));
  // order = min(a.ord + v(b), b.ord + v(a))
  QSeries a = poly({1, 1}, -2, R(5));
  QSeries b = poly({1}, 3, R(10));
  CHECK(*(a * b).order() == 8);
}

TEST_CASE("inverse") {
  QSeries inv = inverse(poly({1, -1}), R(10));
  for (long e = 0; e <= 10; ++e) CHECK(inv.coeff(R(e)) == 1);
  CHECK(inverse(QSeries::constant(R(2))).as_monomial()->coeff == R(1, 2));
  QSeries shifted = inverse(poly({1, -1}, 2), R(8));
  CHECK(*shifted.valuation() == -2);
  for (long e = -2; e <= 8; ++e) CHECK(shifted.coeff(R(e)) == 1);
  CHECK_THROWS_AS(inverse(QSeries::zero(R(5))), Error);
  try {
    inverse(QSeries::zero(R(5)));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroSeries);
  }
}

TEST_CASE("finite pochhammer") {
  CHECK(same_to(poch_finite(Monomial::q(), Monomial::q(), 0), QSeries::constant(R(1)), R(5)));
  CHECK(same_to(poch_finite(Monomial::q(), Monomial::q(), 2), poly({1, -1, -1, 1}), R(10)));
  CHECK(same_to(poch_finite(-Monomial::q(), Monomial::q(2), 2), poly({1, 1, 0, 1, 1}), R(10)));
  // Several factors with negative exponent: (q^-3; q)_4 = (1-q^-3)(1-q^-2)(1-q^-1)(1-1) = 0.
  CHECK(poch_finite(Monomial::q(-3), Monomial::q(), 4, R(2)).is_zero());
  QSeries neg = poch_finite(Monomial::q(-2), Monomial::q(), 2, R(5));
  // (1-q^-2)(1-q^-1) = q^-3 - q^-2 - q^-1 + 1
  CHECK(same_to(neg, poly({1, -1, -1, 1}, -3), R(5)));
}

TEST_CASE("infinite pochhammer matches brute force") {
  auto c = brute_euler(1, 12);
  QSeries p = poch_inf(Monomial::q(), Monomial::q(), R(12));
  for (long e = 0; e <= 12; ++e) CHECK(p.coeff(R(e)) == c[static_cast<std::size_t>(e)]);
  CHECK(same_to(p, poly({1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1}), R(12)));
  auto c2 = brute_euler(2, 6);
  QSeries p2 = poch_inf(Monomial::q(2), Monomial::q(2), R(6));
  for (long e = 0; e <= 6; ++e) CHECK(p2.coeff(R(e)) == c2[static_cast<std::size_t>(e)]);
  CHECK(same_to(poch_inf(Monomial{R(0), R(0)}, Monomial::q(), R(5)), QSeries::constant(R(1)), R(5)));
}

TEST_CASE("property: ring axioms") {
  Gen g(11);
  for (int i = 0; i < 40; ++i) {
    QSeries a = g.random_series(g.integer(-3, 3), g.integer(1, 6), 5, R(12));
    QSeries b = g.random_series(g.integer(-3, 3), g.integer(1, 6), 5, R(14));
    QSeries c = g.random_series(g.integer(-3, 3), g.integer(1, 6), 5, R(10));
    CHECK(same_to((a + b) + c, a + (b + c), R(6)));
    CHECK(same_to(a * b, b * a, R(6)));
    CHECK(same_to(a * (b + c), a * b + a * c, R(4)));
  }
}

TEST_CASE("property: a * inv(a) = 1") {
  Gen g(7);
  for (int i = 0; i < 100; ++i) {
    QSeries a = g.random_series(g.integer(-3, 3), g.integer(1, 5), 4, R(20));
    QSeries prod = a * inverse(a);
    CHECK(prod.order().has_value());
    CHECK(same_to(prod, QSeries::constant(R(1)), *prod.order()));
  }
}

TEST_CASE("property: poch_inf truncation stability") {
  Gen g(3);
  for (int i = 0; i < 20; ++i) {
    Monomial x = g.monomial(-2, 3, 2);
    Monomial nome = Monomial{Rational(g.coin() ? 1 : -1), R(g.integer(1, 3))};
    QSeries lo = poch_inf(x, nome, R(20));
    QSeries hi = poch_inf(x, nome, R(30));
    CHECK(same_to(lo, hi.truncated(R(20)), R(20)));
  }
}

TEST_CASE("property: euler pentagonal") {
  const long N = 80;
  std::vector<Term> terms;
  for (long k = -10; k <= 10; ++k) {
    long e = k * (3 * k - 1) / 2;
    if (e <= N) terms.push_back(Term{R(e), R(k % 2 == 0 ? 1 : -1)});
  }
  QSeries pent = QSeries::from_terms(terms, R(N));
  CHECK(same_to(poch_inf(Monomial::q(), Monomial::q(), R(N)), pent, R(N)));
}

TEST_CASE("coefficient past the order is an error") {
  QSeries s = poly({1, 1}, 0, R(3));
  CHECK_THROWS_AS(s.coeff(R(4)), Error);
}

TEST_CASE("fractional exponents") {
  QSeries s = QSeries::monomial(Monomial::q(R(1, 2))) + QSeries::monomial(Monomial::q(R(1, 3)));
  CHECK(s.granularity() == 6);
  QSeries sq = s * s;
  CHECK(sq.coeff(R(5, 6)) == 2);
  CHECK_THROWS_AS((-Monomial::q()).pow(R(1, 2)), Error);
}

TEST_CASE("product_to sizes factors by their true valuation") {
  // q^300 * (q^-100 (1 + q))^4 / (1 - q) to order 120: the first probe, at
  // order -180, sees nothing of the numerator factors.
  Rational widest(0);
  auto numer = [&](const Rational& w) {
    if (w > widest) widest = w;
    return (poly({1, 1}) * Monomial::q(R(-100))).truncated(w);
  };
  auto denom = [&](const Rational& w) {
    if (w > widest) widest = w;
    return poly({1, -1}).truncated(w);
  };
  std::vector<Factor> fs(4, Factor{numer, false});
  fs.push_back(Factor{denom, true});
  QSeries s = product_to(R(120), Monomial::q(R(300)), fs);
  // (1 + q)^4 / (1 - q) = 1 + 5q + 11q^2 + 15q^3 + 16(q^4 + q^5 + ...)
  QSeries want = poly({1, 5, 11, 15}, 0, R(220));
  for (long e = 4; e <= 220; ++e) want += QSeries::monomial(Monomial::q(R(e))) * R(16);
  want = want * Monomial::q(R(-100));
  CHECK(same_to(s, want.truncated(R(120)), R(120)));
  CHECK(s.order() == Order(R(120)));
  CHECK(widest <= R(250));
}
