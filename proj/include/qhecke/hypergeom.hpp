#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhecke/series.hpp"

namespace qhecke {

enum class NamedSum {
  Wy1,
  Wy2,
  Wy3,
  Liu111a,
  Liu111b,
  Liu111c,
  Liu48,
  Liu410,
  Liu46,
  Sigma,
};

// Catalog ids such as "wy1-lhs" or "sigma".
std::string_view to_string(NamedSum s);
std::optional<NamedSum> named_sum_from_string(std::string_view id);
const std::vector<NamedSum>& all_named_sums();

QSeries eval_named_sum(NamedSum s, const Rational& order);

// sum_{n>=0} (-1)^n q^{3n^2} (q^3;q^6)_n / (-q^6;q^6)_n^2.
QSeries mu_series(const Rational& order);

// sum_{n>=1} (-1)^n q^{a n^2 + b n}; a > 0, or a == 0 with b > 0.
QSeries partial_theta(const Rational& a, const Rational& b, const Rational& order);

enum class MRange {
  Abs,      // |m| <= n
  HalfAbs,  // |m| <= floor(n/2)
  Lower,    // 0 <= m <= n
  AtMostN,  // m <= n, unbounded below
};

std::string_view to_string(MRange r);

// (1 + eps q^{alpha m + beta n + k}).
struct ExtraFactor {
  int eps = 1;
  Rational alpha{0};
  Rational beta{0};
  Rational k{0};

  friend bool operator==(const ExtraFactor&, const ExtraFactor&) = default;
};

// sum_{n >= start} sum_{m in range(n)} (-1)^{sn n + sm m} q^{(A n^2 + B m^2 + C n + D m + E)/F} * extra.
struct TriangularSumSpec {
  std::array<Rational, 6> quad{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)};
  int sign_n = 0;
  int sign_m = 0;
  MRange range = MRange::Abs;
  std::optional<ExtraFactor> extra;
  long start = 0;

  // Exponent of the base summand at (n, m).
  Rational exponent(const Rational& n, const Rational& m) const;

  friend bool operator==(const TriangularSumSpec&, const TriangularSumSpec&) = default;
};

// key=value pairs separated by spaces:
//   quad=A,B,C,D,E,F signs=sn,sm range=abs|half|lower|atmost extra=eps,alpha,beta,k start=n0
std::string to_string(const TriangularSumSpec& spec);
TriangularSumSpec parse_triangular_spec(std::string_view text);

// Throws NonConvergent when no lower bound on the row exponents tends to
// infinity, InvalidArgument on a negative exponent.
QSeries eval_triangular_sum(const TriangularSumSpec& spec, const Rational& order);

}  // namespace qhecke
