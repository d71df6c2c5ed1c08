#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhecke/rational.hpp"

namespace qhecke {

// Truncation bound of a series: every coefficient at an exponent <= order is
// exact. std::nullopt means the series is known exactly (a Laurent polynomial).
using Order = std::optional<Rational>;

Order min_order(const Order& a, const Order& b);
Order shift_order(const Order& o, const Rational& by);
bool order_at_least(const Order& o, const Rational& bound);
std::string to_string(const Order& o);

// coeff * q^exp.
struct Monomial {
  Rational coeff{1};
  Rational exp{0};

  static Monomial q(const Rational& e = 1) { return Monomial{Rational(1), e}; }
  static Monomial scalar(const Rational& c) { return Monomial{c, Rational(0)}; }

  bool is_zero() const { return coeff == 0; }
  Monomial operator-() const { return Monomial{-coeff, exp}; }
  Monomial pow(std::int64_t n) const;
  // Rational powers are only defined for a +1 coefficient; anything else would
  // need a branch of (-1)^(p/r) and is rejected.
  Monomial pow(const Rational& e) const;
  Monomial inverse() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return Monomial{a.coeff * b.coeff, a.exp + b.exp};
  }
  friend Monomial operator/(const Monomial& a, const Monomial& b) { return a * b.inverse(); }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.coeff == b.coeff && (a.coeff == 0 || a.exp == b.exp);
  }
};

std::string to_string(const Monomial& m);

// A nome is +-q^t with t > 0.
void require_nome(const Monomial& nome);

struct Term {
  Rational exp;
  Rational coeff;
};

// Truncated formal Laurent series in q with rational exponents and exact
// rational coefficients.
//
// Storage is dense on the grid of exponents k/granularity; zeros inside the
// window are implicit, the window itself never starts or ends on a zero and
// never extends past the order.
class QSeries {
 public:
  QSeries() = default;

  static QSeries zero(Order order = std::nullopt);
  static QSeries constant(const Rational& c, Order order = std::nullopt);
  static QSeries monomial(const Monomial& m, Order order = std::nullopt);
  static QSeries from_terms(const std::vector<Term>& terms, Order order);
  // Dense constructor: coefficient i sits at exponent (lo + i) / den.
  static QSeries from_grid(std::int64_t den, std::int64_t lo, std::vector<Rational> coeffs, Order order);

  const Order& order() const { return order_; }
  bool is_exact() const { return !order_.has_value(); }
  bool is_zero() const { return c_.empty(); }
  std::int64_t granularity() const { return den_; }

  std::optional<Rational> valuation() const;
  // Lower bound for every exponent that is or may become nonzero.
  Rational valuation_or_order() const;
  Rational leading_coeff() const;
  Rational coeff(const Rational& e) const;
  std::vector<Term> terms() const;
  std::size_t term_count() const;
  bool has_integer_coefficients() const;
  std::optional<Monomial> as_monomial() const;

  QSeries truncated(const Rational& order) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& b);
  QSeries& operator-=(const QSeries& b);
  QSeries& operator*=(const Rational& s);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
  friend QSeries operator*(const Rational& s, QSeries a) { return a *= s; }
  friend QSeries operator*(const QSeries& a, const Monomial& m);
  friend QSeries operator*(const Monomial& m, const QSeries& a) { return a * m; }

  friend QSeries inverse(const QSeries& a, const Order& cap);
  friend QSeries times_one_minus(const QSeries& s, const Monomial& w);
  friend QSeries over_one_minus(const QSeries& s, const Monomial& w, const Order& cap);

 private:
  std::int64_t den_ = 1;
  std::int64_t lo_ = 0;
  std::vector<Rational> c_;
  Order order_;

  std::int64_t hi_index_bound(std::int64_t den) const;
  void normalize();
  QSeries regridded(std::int64_t den) const;
};

// Multiplicative inverse. The result is exact to the attainable order of a,
// further capped by cap. An exact non-monomial input needs a cap.
QSeries inverse(const QSeries& a, const Order& cap = std::nullopt);
QSeries divide(const QSeries& a, const QSeries& b, const Order& cap = std::nullopt);
QSeries pow(const QSeries& a, std::int64_t k, const Order& cap = std::nullopt);

// s * (1 - w), exact.
QSeries times_one_minus(const QSeries& s, const Monomial& w);
// s / (1 - w) for a monomial w with positive exponent, by the recurrence
// b_e = a_e + coeff(w) b_{e - exp(w)}.
QSeries over_one_minus(const QSeries& s, const Monomial& w, const Order& cap);

struct Mismatch {
  Rational exponent;
  Rational lhs;
  Rational rhs;
};

// First exponent <= upto where the two series differ. Both must be exact to
// upto.
std::optional<Mismatch> first_mismatch(const QSeries& a, const QSeries& b, const Rational& upto);

// (x; nome)_n.
QSeries poch_finite(const Monomial& x, const Monomial& nome, std::int64_t n, const Order& order = std::nullopt);
// (x; nome)_infinity, exact to order.
QSeries poch_inf(const Monomial& x, const Monomial& nome, const Rational& order);

std::string to_string(const QSeries& s, std::size_t max_terms = 12);

// Calls build(W) for working orders W >= N until the result is exact to N,
// then truncates to N. For computations whose attained order falls short of
// the requested one (negative valuations in a product or quotient).
QSeries evaluate_to(const Rational& N, const std::function<QSeries(const Rational&)>& build);

// One factor of a product, built on demand at a requested order; inverted
// factors enter as 1/build(.).
struct Factor {
  std::function<QSeries(const Rational&)> build;
  bool inverted = false;
};

// pre * prod(factors), exact to N. Each factor is first probed at the target
// order to learn its valuation, then rebuilt (only when needed) at the order
// that the other factors' valuations demand.
QSeries product_to(const Rational& N, const Monomial& pre, const std::vector<Factor>& factors);

}  // namespace qhecke
