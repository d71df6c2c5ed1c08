#include "doctest.h"
#include "qhecke/appell.hpp"
#include "qhecke/error.hpp"
#include "support.hpp"

using namespace qhecke;
using namespace testing_support;

namespace {

Monomial q(long e) { return Monomial::q(R(e)); }
Monomial mq(long e) { return -Monomial::q(R(e)); }
const Monomial minus_one = Monomial::scalar(R(-1));

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

// sum_n (-1)^n q^{n^2} (q;q^2)_n / (-q^2;q^2)_n^2, with q -> q^s.
QSeries mu_oracle(long s, long N) {
  QSeries out = QSeries::zero(R(N));
  for (long n = 0; s * n * n <= N; ++n) {
    QSeries num = poch_finite(q(s), q(2 * s), n, R(N));
    QSeries den = poch_finite(mq(2 * s), q(2 * s), n, R(N));
    QSeries t = num * inverse(den * den, R(N)) * Monomial{R(n % 2 ? -1 : 1), R(s * n * n)};
    out += t.truncated(R(N));
  }
  return out;
}

// sum_n (-1)^n q^{n^2} (q;q^2)_n / (-q;q)_{2n}.
QSeries phi_oracle(long N) {
  QSeries out = QSeries::zero(R(N));
  for (long n = 0; n * n <= N; ++n) {
    QSeries num = poch_finite(q(1), q(2), n, R(N));
    QSeries den = poch_finite(mq(1), q(1), 2 * n, R(N));
    out += (num * inverse(den, R(N)) * Monomial{R(n % 2 ? -1 : 1), R(n * n)}).truncated(R(N));
  }
  return out;
}

QSeries psi_oracle(long N) {
  QSeries out = QSeries::zero(R(N));
  for (long n = 0; n * n <= N; ++n)
    out += (inverse(poch_finite(q(1), q(2), n, R(N)), R(N)) * q(n * n)).truncated(R(N));
  return out;
}

}  // namespace

TEST_CASE("appell relations at fixed points") {
  const Rational N(60);
  QSeries lhs = appell_m(q(2), minus_one, q(3), N);
  QSeries rhs = QSeries::constant(R(1)) - appell_m(q(1), minus_one, q(3), N);
  CHECK(same_to(lhs, rhs, N));
  QSeries mid = QSeries::constant(R(1)) - appell_m(Monomial::q(R(-1)), minus_one, q(3), N + 1) * Monomial::q(R(-1));
  CHECK(same_to(lhs, mid.truncated(N), N));

  QSeries a = appell_m(q(2), mq(1), q(5), R(40));
  QSeries b = appell_m(Monomial::q(R(-2)), -Monomial::q(R(-1)), q(5), R(42)) * Monomial::q(R(-2));
  CHECK(same_to(a, b.truncated(R(40)), R(40)));

  QSeries c = appell_m(q(4), minus_one, q(3), R(40));
  QSeries d = QSeries::constant(R(1)) - appell_m(q(1), minus_one, q(3), R(39)) * q(1);
  CHECK(same_to(c, d.truncated(R(40)), R(40)));
}

TEST_CASE("appell errors") {
  CHECK(kind_of([] { appell_m(q(1), q(3), q(3), R(10)); }) == ErrorKind::DegenerateZ);
  // r = 1 denominator 1 - x z = 0 at x = q^-1, z = q.
  CHECK(kind_of([] { appell_m(Monomial::q(R(-1)), q(1), q(3), R(10)); }) == ErrorKind::PoleAtTerm);
}

TEST_CASE("f121 expansion") {
  const HeckeParams p{1, 2, 1};
  CHECK(same_to(f121_rhs(q(1), q(3), q(1), R(40)), eval_f(f_call(p, q(1), q(3), q(1)), R(40)), R(40)));
  CHECK(same_to(f121_rhs(mq(1), q(3), q(1), R(40)), eval_f(f_call(p, mq(1), q(3), q(1)), R(40)), R(40)));
  // x = q, y = q^2: the first Appell argument q^2 x / y^2 = q^-1 meets z = q.
  CHECK(kind_of([] { f121_rhs(q(1), q(2), q(1), R(20)); }) == ErrorKind::PoleAtTerm);
  CHECK(kind_of([] { f121_rhs(q(1), q(1), q(1), R(20)); }) == ErrorKind::DegenerateZ);
}

TEST_CASE("f131 expansion") {
  const HeckeParams p{1, 3, 1};
  QSeries direct = eval_f(f_call(p, q(1), q(2), q(1)), R(40));
  QSeries l1 = f131_rhs(q(1), q(2), q(1), 1, R(40));
  QSeries l3 = f131_rhs(q(1), q(2), q(1), 3, R(40));
  CHECK(same_to(l1, l3, R(40)));
  CHECK(same_to(l1, direct, R(40)));

  QSeries target = theta(q(2), q(4), R(100));
  CHECK(same_to(f131_rhs(q(2), q(2), q(4), 1, R(100)), target, R(100)));
  CHECK(same_to(eval_f(f_call(p, q(2), q(2), q(4)), R(100)), target, R(100)));

  // Odd l: the corrections at x = y = q^{1/2} and x = y = -q^{1/2} (nome -q) cancel.
  Monomial h = Monomial::q(R(1, 2));
  for (long l : {1L, 3L}) {
    QSeries c1 = f131_correction(h, h, -Monomial::q(), l, R(40));
    QSeries c2 = f131_correction(-h, -h, -Monomial::q(), l, R(40));
    CHECK((c1 + c2).is_zero());
  }
}

TEST_CASE("G and theta aggregate") {
  const HeckeParams p443{4, 4, 3}, p121{1, 2, 1};
  // First summand of G_{4,4,3}(-q^3,-q^2,-1,-1;q) vanishes.
  QSeries first = QSeries::zero(R(60));
  for (long t = 0; t <= 3; ++t)
    first += appell_m(mq(6 - 4 * t), minus_one, q(16), R(60 + t * (t + 1) / 2)) * Monomial::q(R(-t * (t + 1) / 2));
  CHECK(first.truncated(R(60)).is_zero());

  QSeries g121 = G_abc(p121, q(1), q(2), minus_one, minus_one, q(1), R(40));
  CHECK(g121.is_zero());
  CHECK(same_to(general_expansion(p121, q(1), q(2), q(1), R(40)), eval_f(f_call(p121, q(1), q(2), q(1)), R(40)), R(40)));
  CHECK(same_to(general_expansion(p121, mq(2), q(3), q(1), R(40)), eval_f(f_call(p121, mq(2), q(3), q(1)), R(40)), R(40)));
  CHECK(kind_of([&] { general_expansion(p121, mq(1), q(3), q(1), R(20)); }) == ErrorKind::PoleAtTerm);
  CHECK(same_to(general_expansion(p443, mq(3), mq(2), q(1), R(40)), eval_f(f_call(p443, mq(3), mq(2), q(1)), R(40)), R(40)));
  CHECK(same_to(general_expansion(p443, q(3), q(2), q(1), R(40)), eval_f(f_call(p443, q(3), q(2), q(1)), R(40)), R(40)));
}

TEST_CASE("G_{4,4,3} closed form from the proof") {
  const Rational N(60);
  const HeckeParams p443{4, 4, 3};
  QSeries g = G_abc(p443, mq(3), mq(2), minus_one, minus_one, q(1), N);
  // Theta2 starts at q^-1, so its cofactor is taken one order higher.
  const Rational N1 = N + 1;
  QSeries jb13 = big_jbar(1, 3, N1), jb03 = big_jbar(0, 3, N);
  QSeries quotient = pow(big_j(6, 12, N), 2) * inverse(pow(big_jm(3, N), 3), N);
  QSeries rhs = jb13 * (QSeries::constant(R(1)) - R(1, 2) * mock_phi(N1) + theta2_series(N1)) +
                R(1, 4) * jb03 * (mock_mu3(N) + quotient);
  CHECK(same_to(g, rhs.truncated(N), N));
}

TEST_CASE("msplit second identity") {
  const Rational N(60);
  QSeries lhs = appell_m(mq(7), minus_one, q(12), N) - appell_m(mq(1), minus_one, q(12), N + 1) * Monomial::q(R(-1));
  QSeries rhs = appell_m(q(2), minus_one, q(3), N) + theta2_series(N);
  CHECK(same_to(lhs.truncated(N), rhs, N));
}

TEST_CASE("mock builders") {
  CHECK(same_to(mock_psi(R(5)), poly({1, 1, 1, 1, 2, 2}, 0, R(5)), R(5)));
  CHECK(same_to(mock_psi(R(60)), psi_oracle(60), R(60)));
  CHECK(same_to(sigma_series(R(4)), poly({1, 1, -1, 2, -2}, 0, R(4)), R(4)));
  CHECK(same_to(mock_phi(R(50)), phi_oracle(50), R(50)));
  QSeries m4 = 4 * appell_m(mq(3), minus_one, q(12), R(60));
  QSeries j3inv = inverse(pow(big_jm(3, R(60)), 3), R(60));
  CHECK(same_to(mock_mu3(R(60)), (m4 - pow(big_j(6, 12, R(60)), 2) * j3inv).truncated(R(60)), R(60)));
  // The q-series mu(q^3) needs the fourth power; the printed square first
  // differs at q^6.
  QSeries oracle = mu_oracle(3, 60);
  CHECK(same_to((m4 - pow(big_j(6, 12, R(60)), 4) * j3inv).truncated(R(60)), oracle, R(60)));
  auto miss = first_mismatch(mock_mu3(R(60)), oracle, R(60));
  REQUIRE(miss.has_value());
  CHECK(miss->exponent == R(6));
  CHECK(miss->lhs == R(-3));
  CHECK(miss->rhs == R(1));
  for (auto* f : {&mock_psi, &mock_mu3, &mock_phi, &sigma_series}) {
    QSeries s = (*f)(R(100));
    CHECK(s.has_integer_coefficients());
  }
}

TEST_CASE("theta2 denominators are nonzero") {
  // Theta2 itself carries half-integer coefficients and a q^-1 term.
  QSeries t2 = theta2_series(R(20));
  CHECK(t2.coeff(R(-1)) == R(-1, 2));
  CHECK_FALSE(t2.has_integer_coefficients());
  CHECK_FALSE((ThetaArg{mq(2), q(3)}.degenerate()));
  CHECK_FALSE((ThetaArg{minus_one, q(12)}.degenerate()));
  CHECK_FALSE((ThetaArg{q(7), q(6)}.degenerate()));
  CHECK_FALSE((ThetaArg{minus_one, q(6)}.degenerate()));
  CHECK_FALSE((ThetaArg{mq(3), q(6)}.degenerate()));
  CHECK(theta(q(7), q(6), R(10)).leading_coeff() != 0);
}

TEST_CASE("property: appell relations at random calls") {
  Gen g(77);
  int done = 0;
  while (done < 20) {
    Monomial x{Rational(g.coin() ? 1 : -1), g.exponent(-4, 4, 2)};
    Monomial z{Rational(g.coin() ? 1 : -1), g.exponent(-3, 3, 2)};
    Monomial p = Monomial::q(R(g.integer(1, 5)));
    try {
      QSeries m = appell_m(x, z, p, R(40));
      QSeries r1 = appell_m(x.inverse(), z.inverse(), p, R(40) + x.exp) * x.inverse();
      QSeries r2 = QSeries::constant(R(1)) - appell_m(x, z, p, R(40) - x.exp) * x;
      QSeries m2 = appell_m(p * x, z, p, R(40));
      CHECK(same_to(m, r1.truncated(R(40)), R(40)));
      CHECK(same_to(m2, r2.truncated(R(40)), R(40)));
      ++done;
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::PoleAtTerm || e.kind() == ErrorKind::DegenerateZ));
    }
  }
}

TEST_CASE("property: expansions at random pairs") {
  Gen g(88);
  int f121 = 0, f131 = 0;
  while (f121 < 10 || f131 < 10) {
    Monomial x{Rational(g.coin() ? 1 : -1), R(g.integer(1, 5))};
    Monomial y{Rational(g.coin() ? 1 : -1), R(g.integer(1, 5))};
    try {
      if (f121 < 10) {
        QSeries rhs = f121_rhs(x, y, q(1), R(30));
        CHECK(same_to(rhs, eval_f(f_call({1, 2, 1}, x, y, q(1)), R(30)), R(30)));
        ++f121;
      }
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::PoleAtTerm || e.kind() == ErrorKind::DegenerateZ));
    }
    try {
      if (f131 < 10) {
        QSeries base = eval_f(f_call({1, 3, 1}, x, y, q(1)), R(30));
        for (long l : {-2L, -1L, 1L, 2L, 3L}) CHECK(same_to(f131_rhs(x, y, q(1), l, R(30)), base, R(30)));
        ++f131;
      }
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::PoleAtTerm || e.kind() == ErrorKind::DegenerateZ ||
             e.kind() == ErrorKind::DegenerateDenominator || e.kind() == ErrorKind::NonConvergent));
    }
  }
}
