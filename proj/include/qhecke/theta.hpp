#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhecke/series.hpp"

namespace qhecke {

// Argument of j(x; nome).
struct ThetaArg {
  Monomial x;
  Monomial nome;

  // True iff x is an integer power of the nome itself; j vanishes there.
  bool degenerate() const;
};

// Bilateral sum  sum_n (-1)^n nome^binom(n,2) x^n.
QSeries theta_sum(const ThetaArg& arg, const Rational& order);
// Triple product (x)_inf (nome/x)_inf (nome)_inf, after moving x into the
// fundamental strip 0 < exp(x) <= exp(nome) with j(nome x) = -x^-1 j(x).
QSeries theta_prod(const ThetaArg& arg, const Rational& order);

inline QSeries theta(const Monomial& x, const Monomial& nome, const Rational& order) {
  return theta_sum(ThetaArg{x, nome}, order);
}

// J_{a,m} = j(q^a; q^m),  Jbar_{a,m} = j(-q^a; q^m),  J_m = J_{m,3m}.
QSeries big_j(long a, long m, const Rational& order);
QSeries big_jbar(long a, long m, const Rational& order);
QSeries big_jm(long m, const Rational& order);

struct SplitTerm {
  Monomial prefactor;
  ThetaArg arg;
};

// j(z;q) = sum_{k<m} (-1)^k q^binom(k,2) z^k j((-1)^(m+1) q^(binom(m,2)+mk) z^m; q^(m^2)).
std::vector<SplitTerm> theta_split(const ThetaArg& arg, long m);
QSeries evaluate_split(const std::vector<SplitTerm>& terms, const Rational& order);

// Outcome of comparing two sides of an identity coefficient by coefficient.
struct CheckReport {
  std::string name;
  Rational order;
  std::optional<Mismatch> mismatch;

  bool ok() const { return !mismatch.has_value(); }
};

CheckReport compare_series(std::string name, const QSeries& lhs, const QSeries& rhs, const Rational& order);

// Reflection, quasi-periodicity, the x^2 duplication and the nome-halving
// product formula, each at a spread of specializations of x.
std::vector<CheckReport> check_theta_identities(const Rational& order);

}  // namespace qhecke
