#pragma once

// Internal helpers shared by the summation modules.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>

#include "qhecke/error.hpp"
#include "qhecke/series.hpp"

namespace qhecke::detail {

// Collects terms on a fixed exponent grid k/den.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::int64_t den) : den_(den) {}

  std::int64_t den() const { return den_; }

  void add(const Rational& exp, const Rational& coeff) {
    Rational scaled = exp * Rational(static_cast<long>(den_));
    add_scaled(to_int64(scaled), coeff);
  }
  void add_scaled(std::int64_t num, const Rational& coeff) {
    if (coeff == 0) return;
    terms_[num] += coeff;
  }

  QSeries finish(Order order) const {
    // Coarsen the grid to the exponents that actually occur.
    std::int64_t g = den_;
    bool any = false;
    std::int64_t lo = 0, hi = 0;
    for (const auto& [k, v] : terms_) {
      if (v == 0) continue;
      g = std::gcd(g, k < 0 ? -k : k);
      if (!any) lo = k;
      hi = k;
      any = true;
    }
    if (!any) return QSeries::zero(std::move(order));
    lo /= g;
    hi /= g;
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [k, v] : terms_)
      if (v != 0) c[static_cast<std::size_t>(k / g - lo)] = v;
    return QSeries::from_grid(den_ / g, lo, std::move(c), std::move(order));
  }

 private:
  std::int64_t den_;
  std::map<std::int64_t, Rational> terms_;
};

// Visits every integer n in [lo, hi] (either side may be open) with
// P n^2 + Q n + R <= bound. Requires P > 0, or P == 0 with the slope pointing
// away from the one closed side.
template <class Visit>
void for_each_in_parabola(const Rational& P, const Rational& Q, const Rational& R,
                          std::optional<std::int64_t> lo, std::optional<std::int64_t> hi,
                          const Rational& bound, Visit&& visit) {
  auto value = [&](std::int64_t n) {
    Rational nn(static_cast<long>(n));
    return Rational(P * nn * nn + Q * nn + R);
  };
  std::int64_t start;
  if (P > 0) {
    start = to_int64(ceil_of(Rational(-Q / (2 * P))));
  } else if (P == 0 && Q > 0 && lo) {
    start = *lo;
  } else if (P == 0 && Q < 0 && hi) {
    start = *hi;
  } else {
    fail(ErrorKind::NonConvergent, "one-dimensional sum has infinitely many terms below the bound");
  }
  if (lo && start < *lo) start = *lo;
  if (hi && start > *hi) start = *hi;
  // Beyond start the values grow in both directions (or the range is empty).
  for (std::int64_t n = start; !hi || n <= *hi; ++n) {
    if (P == 0 && Q < 0) break;
    if (value(n) > bound) break;
    visit(n);
  }
  for (std::int64_t n = start - 1; !lo || n >= *lo; --n) {
    if (P == 0 && Q > 0) break;
    if (value(n) > bound) break;
    visit(n);
  }
}

inline std::int64_t grid_den(std::initializer_list<Rational> values) {
  std::int64_t den = 1;
  for (const auto& v : values) den = lcm64(den, den64(v));
  return den;
}

}  // namespace qhecke::detail
