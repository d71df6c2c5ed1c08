#pragma once

#include <optional>

#include "qhecke/hecke.hpp"
#include "qhecke/series.hpp"

namespace qhecke {

struct AppellCall {
  Monomial x;
  Monomial z;
  Monomial nome;
};

// Bilateral numerator sum_r (-1)^r p^binom(r,2) z^r / (1 - p^(r-1) x z) with
// each denominator expanded geometrically. Throws PoleAtTerm when some
// denominator is 1 - 1.
QSeries appell_numerator(const AppellCall& call, const Rational& order);

// m(x, z; p). Throws DegenerateZ when j(z; p) = 0.
QSeries eval_m(const AppellCall& call, const Rational& order);

inline QSeries appell_m(const Monomial& x, const Monomial& z, const Monomial& nome, const Rational& order) {
  return eval_m(AppellCall{x, z, nome}, order);
}

// j(y;p) m(p^2 x/y^2, y/x; p^3) + j(x;p) m(p^2 y/x^2, x/y; p^3).
QSeries f121_rhs(const Monomial& x, const Monomial& y, const Monomial& nome, const Rational& order);

// Two Appell terms plus the theta-quotient correction; every l gives the same
// series.
QSeries f131_rhs(const Monomial& x, const Monomial& y, const Monomial& nome, long l, const Rational& order);
QSeries f131_appell_part(const Monomial& x, const Monomial& y, const Monomial& nome, long l, const Rational& order);
QSeries f131_correction(const Monomial& x, const Monomial& y, const Monomial& nome, long l, const Rational& order);

// Theta-weighted Appell aggregate G_{a,b,c}(x, y, z1, z0; nome); needs
// b^2 - ac > 0.
QSeries G_abc(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& z1, const Monomial& z0,
              const Monomial& nome, const Rational& order);

// Theta aggregate of the general expansion f = G(x,y,-1,-1) + theta/(j(-1;q^aD) j(-1;q^cD)).
// f_terms overrides the length b of the innermost sum (used to evaluate a
// misprinted range). Throws DegenerateDenominator naming (d*, e*, f).
QSeries theta_abc(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& nome,
                  const Rational& order, std::optional<long> f_terms = std::nullopt);

// G + theta / (j(-1; q^aD) j(-1; q^cD)).
QSeries general_expansion(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& nome,
                          const Rational& order);

// sum_n q^{n^2} / (q;q^2)_n.
QSeries mock_psi(const Rational& order);
// 4 m(-q^3,-1;q^12) - J_{6,12}^2 / J_3^3, the relation used for mu(q^3) in the
// f_{4,4,3} formulas. It departs from the q-series mu(q^3) at q^6; that series
// equals 4 m(-q^3,-1;q^12) - J_{6,12}^4 / J_3^3 (see mu_series).
QSeries mock_mu3(const Rational& order);
// 2 m(q,-1;q^3).
QSeries mock_phi(const Rational& order);
// 1 + sum_{n>=1} q^{n(n+1)/2} / ((1+q)...(1+q^n)).
QSeries sigma_series(const Rational& order);
QSeries theta2_series(const Rational& order);

}  // namespace qhecke
