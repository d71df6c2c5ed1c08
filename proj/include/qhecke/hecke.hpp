#pragma once

#include <string>
#include <vector>

#include "qhecke/series.hpp"
#include "qhecke/theta.hpp"

namespace qhecke {

// (a, b, c) of a Hecke-type double sum.
struct HeckeParams {
  long a = 0;
  long b = 0;
  long c = 0;

  long discriminant() const { return b * b - a * c; }
  // Throws InvalidArgument unless a, b, c >= 0, not all zero, and a, c > 0
  // when b = 0.
  void validate() const;

  friend bool operator==(const HeckeParams&, const HeckeParams&) = default;
};

enum class HeckeKind { TypeI, TypeII };

// f_{a,b,c}(x, y; nome) (TypeI) or g_{a,b,c}(x, y; nome) (TypeII).
struct HeckeCall {
  HeckeParams params;
  Monomial x;
  Monomial y;
  Monomial nome;
  HeckeKind kind = HeckeKind::TypeI;

  friend bool operator==(const HeckeCall& l, const HeckeCall& r) {
    return l.params == r.params && l.x == r.x && l.y == r.y && l.nome == r.nome && l.kind == r.kind;
  }
};

// prefactor * call.
struct HeckeTerm {
  Monomial prefactor;
  HeckeCall call;

  friend bool operator==(const HeckeTerm& l, const HeckeTerm& r) {
    return l.prefactor == r.prefactor && l.call == r.call;
  }
};

std::string to_string(const HeckeCall& call);
std::string to_string(const HeckeTerm& term);

inline HeckeCall f_call(HeckeParams p, Monomial x, Monomial y, Monomial nome) {
  return HeckeCall{p, x, y, nome, HeckeKind::TypeI};
}
inline HeckeCall g_call(HeckeParams p, Monomial x, Monomial y, Monomial nome) {
  return HeckeCall{p, x, y, nome, HeckeKind::TypeII};
}

// Which quadrants enter the sum.
enum class Quadrant { Positive, Negative, Both };

// Signed lattice sum (-1)^(r+s) x^r y^s nome^(a binom(r,2) + b r s + c binom(s,2))
// over the chosen quadrant(s), exact to order. The negative quadrant enters
// with sign -1 for TypeI. Throws NonConvergent when some quadrant holds
// infinitely many terms of exponent <= order.
QSeries lattice_sum(const HeckeCall& call, Quadrant which, const Rational& order);

QSeries eval_hecke(const HeckeCall& call, const Rational& order);
inline QSeries eval_f(const HeckeCall& call, const Rational& order) {
  HeckeCall c = call;
  c.kind = HeckeKind::TypeI;
  return eval_hecke(c, order);
}
inline QSeries eval_g(const HeckeCall& call, const Rational& order) {
  HeckeCall c = call;
  c.kind = HeckeKind::TypeII;
  return eval_hecke(c, order);
}

QSeries eval_terms(const std::vector<HeckeTerm>& terms, const Rational& order);

// sg(n) = +1 for n >= 0 and -1 otherwise. The literal variant also sends 0 to
// -1, which is what reading both printed branches as overlapping gives.
int sg(long n);
int sg_literal(long n);

// sum_n sg(n - shift) (-1)^n p^binom(n,2) w^n.
QSeries sg_theta(const Monomial& w, const Monomial& p, long shift, const Rational& order, bool literal = false);

// Functional equations, each comparing both sides to order.
CheckReport check_f_functional(const HeckeCall& call, const Rational& order);
CheckReport check_g_functional(const HeckeCall& call, const Rational& order);
CheckReport check_f_shift(const HeckeCall& call, long l, long k, const Rational& order);
CheckReport check_g_shift(const HeckeCall& call, long l, long k, const Rational& order, bool literal_sg = false);

// Right sides of the shift identities. For g the second correction sum
// (over 0 <= s < k) is only present when with_k_correction is set; the
// printed form carries the l-correction alone.
QSeries g_shift_rhs(const HeckeCall& call, long l, long k, const Rational& order, bool literal_sg = false,
                    bool with_k_correction = true);
QSeries f_shift_rhs(const HeckeCall& call, long l, long k, const Rational& order);

// r = 2R + i, s = 2S + j: four sums at nome^4 whose total is the input.
std::vector<HeckeTerm> f_parity_split(const HeckeCall& call);

// (p)_inf^2 (xy, p/xy)_inf / (x, p/x, y, p/y)_inf.
QSeries kronecker_eval(const Monomial& x, const Monomial& y, const Monomial& nome, const Rational& order);

}  // namespace qhecke
