#pragma once

#include <random>
#include <vector>

#include "qhecke/series.hpp"

namespace testing_support {

using qhecke::Monomial;
using qhecke::QSeries;
using qhecke::Rational;
using qhecke::Term;

inline Rational R(long p, long r = 1) { return qhecke::make_rational(p, r); }

// Series from integer coefficients starting at exponent lo.
inline QSeries poly(std::vector<long> coeffs, long lo = 0, qhecke::Order order = std::nullopt) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) terms.push_back(Term{R(lo + static_cast<long>(i)), R(coeffs[i])});
  return QSeries::from_terms(terms, order);
}

inline bool same_to(const QSeries& a, const QSeries& b, const Rational& upto) {
  return !qhecke::first_mismatch(a, b, upto).has_value();
}

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational exponent(long lo, long hi, long max_den) {
    long den = integer(1, max_den);
    return R(integer(lo * den, hi * den), den);
  }

  Monomial monomial(long lo, long hi, long max_den = 1) {
    return Monomial{Rational(coin() ? 1 : -1), exponent(lo, hi, max_den)};
  }

  QSeries random_series(long lo, long len, long max_coeff, qhecke::Order order) {
    std::vector<Term> terms;
    for (long i = 0; i < len; ++i) terms.push_back(Term{R(lo + i), R(integer(-max_coeff, max_coeff))});
    if (terms.front().coeff == 0) terms.front().coeff = 1;
    return QSeries::from_terms(terms, order);
  }

 private:
  std::mt19937 rng_;
};

}  // namespace testing_support
