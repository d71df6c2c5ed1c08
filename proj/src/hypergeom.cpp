#include "qhecke/hypergeom.hpp"

#include <algorithm>
#include <sstream>

#include "accumulate.hpp"
#include "qhecke/appell.hpp"
#include "qhecke/error.hpp"

namespace qhecke {

namespace {

Monomial qp(long e) { return Monomial::q(Rational(e)); }
Monomial mqp(long e) { return -Monomial::q(Rational(e)); }

// A product of (1 - w) and 1/(1 - w) factors, kept exact to a shrinking cap.
class Running {
 public:
  explicit Running(const Rational& cap) : s_(QSeries::constant(Rational(1))), cap_(cap) {}

  void set_cap(const Rational& cap) {
    cap_ = cap;
    s_ = s_.truncated(cap_);
  }
  void times(const Monomial& w) { s_ = times_one_minus(s_, w).truncated(cap_); }
  void over(const Monomial& w) { s_ = over_one_minus(s_, w, Order(cap_)); }
  const QSeries& value() const { return s_; }

 private:
  QSeries s_;
  Rational cap_;
};

// sum_{n >= n0} sign(n) q^{e(n)} R_n where step(n, R) turns R_{n-1} into R_n
// and e is increasing.
template <class Exp, class Sign, class Step>
QSeries hypergeometric(long n0, const Rational& order, Exp e, Sign sign, Step step) {
  QSeries out = QSeries::zero(order);
  Running r(order);
  for (long n = 1; n < n0; ++n) step(n, r);
  for (long n = n0;; ++n) {
    Rational en = e(n);
    if (en > order) break;
    r.set_cap(order - en);
    if (n > 0) step(n, r);
    QSeries term = r.value() * Monomial{Rational(sign(n)), en};
    out += term.truncated(order);
  }
  return out.truncated(order);
}

int one(long) { return 1; }
int alternating(long n) { return n % 2 == 0 ? 1 : -1; }

}  // namespace

std::string_view to_string(NamedSum s) {
  switch (s) {
    case NamedSum::Wy1: return "wy1-lhs";
    case NamedSum::Wy2: return "wy2-lhs";
    case NamedSum::Wy3: return "wy3-lhs";
    case NamedSum::Liu111a: return "liu111a-lhs";
    case NamedSum::Liu111b: return "liu111b-lhs";
    case NamedSum::Liu111c: return "liu111c-lhs";
    case NamedSum::Liu48: return "liu48-lhs";
    case NamedSum::Liu410: return "liu410-lhs";
    case NamedSum::Liu46: return "liu46-lhs";
    case NamedSum::Sigma: return "sigma";
  }
  return "?";
}

const std::vector<NamedSum>& all_named_sums() {
  static const std::vector<NamedSum> all{NamedSum::Wy1,     NamedSum::Wy2,     NamedSum::Wy3,   NamedSum::Liu111a,
                                         NamedSum::Liu111b, NamedSum::Liu111c, NamedSum::Liu48, NamedSum::Liu410,
                                         NamedSum::Liu46,   NamedSum::Sigma};
  return all;
}

std::optional<NamedSum> named_sum_from_string(std::string_view id) {
  for (NamedSum s : all_named_sums())
    if (to_string(s) == id) return s;
  return std::nullopt;
}

QSeries eval_named_sum(NamedSum s, const Rational& order) {
  const auto lin = [](long n) { return Rational(n); };
  const auto sq = [](long n) { return Rational(n * n); };
  switch (s) {
    case NamedSum::Wy1:
    case NamedSum::Wy2: {
      // The 1/(1+q^{2n}) factor is not part of the running product.
      const bool wy1 = s == NamedSum::Wy1;
      QSeries out = QSeries::zero(order);
      Running r(order);
      for (long n = 1;; ++n) {
        Rational en = wy1 ? lin(n) : sq(n);
        if (en > order) break;
        Rational cap = order - en;
        r.set_cap(cap);
        if (wy1) r.times(qp(2 * n - 1));
        r.over(mqp(2 * n - 1));
        QSeries term = over_one_minus(r.value(), mqp(2 * n), Order(cap)) * Monomial::q(en);
        out += term.truncated(order);
      }
      return out.truncated(order);
    }
    case NamedSum::Wy3:
      return hypergeometric(1, order, lin, [](long n) { return -alternating(n); },
                            [](long n, Running& r) {
                              if (n >= 2) r.times(qp(2 * (n - 1)));
                              r.over(mqp(2 * n));
                            });
    case NamedSum::Liu111a:
      return hypergeometric(0, order, lin, one, [](long n, Running& r) {
        r.times(qp(2 * n - 1));
        r.over(qp(2 * n));
      });
    case NamedSum::Liu111b:
      return hypergeometric(0, order, [](long n) { return Rational(n * n + n); }, alternating,
                            [](long n, Running& r) { r.over(qp(2 * n)); });
    case NamedSum::Liu111c:
      return hypergeometric(0, order, [](long n) { return Rational(n * (n + 1) / 2); }, alternating,
                            [](long n, Running& r) { r.over(qp(n)); });
    case NamedSum::Liu48:
      return hypergeometric(0, order, sq, one, [](long n, Running& r) {
        r.times(mqp(n));
        r.times(mqp(n));
        r.over(qp(2 * n - 1));
        r.over(qp(2 * n));
      });
    case NamedSum::Liu410:
      return hypergeometric(0, order, sq, one, [](long n, Running& r) { r.over(qp(2 * n - 1)); });
    case NamedSum::Liu46:
      return hypergeometric(0, order, [](long n) { return Rational(n * n + n); }, alternating,
                            [](long n, Running& r) {
                              r.times(qp(2 * n - 1));
                              r.over(mqp(2 * n - 1));
                              r.over(mqp(2 * n));
                            });
    case NamedSum::Sigma:
      return sigma_series(order);
  }
  fail(ErrorKind::InvalidArgument, "unknown named sum");
}

QSeries mu_series(const Rational& order) {
  return hypergeometric(0, order, [](long n) { return Rational(3 * n * n); }, alternating,
                        [](long n, Running& r) {
                          r.times(qp(6 * n - 3));
                          r.over(mqp(6 * n));
                          r.over(mqp(6 * n));
                        });
}

QSeries partial_theta(const Rational& a, const Rational& b, const Rational& order) {
  if (a < 0 || (a == 0 && b <= 0)) fail(ErrorKind::NonConvergent, "partial theta exponents do not grow");
  detail::TermAccumulator acc(detail::grid_den({a, b}));
  detail::for_each_in_parabola(a, b, Rational(0), std::int64_t{1}, std::nullopt, order, [&](std::int64_t n) {
    Rational nn(static_cast<long>(n));
    acc.add(Rational(a * nn * nn + b * nn), Rational(n % 2 == 0 ? 1 : -1));
  });
  return acc.finish(order);
}

std::string_view to_string(MRange r) {
  switch (r) {
    case MRange::Abs: return "abs";
    case MRange::HalfAbs: return "half";
    case MRange::Lower: return "lower";
    case MRange::AtMostN: return "atmost";
  }
  return "?";
}

Rational TriangularSumSpec::exponent(const Rational& n, const Rational& m) const {
  const auto& [A, B, C, D, E, F] = quad;
  return (A * n * n + B * m * m + C * n + D * m + E) / F;
}

std::string to_string(const TriangularSumSpec& spec) {
  std::ostringstream out;
  out << "quad=";
  for (std::size_t i = 0; i < 6; ++i) out << (i ? "," : "") << to_string(spec.quad[i]);
  out << " signs=" << spec.sign_n << "," << spec.sign_m << " range=" << to_string(spec.range);
  if (spec.extra)
    out << " extra=" << spec.extra->eps << "," << to_string(spec.extra->alpha) << "," << to_string(spec.extra->beta)
        << "," << to_string(spec.extra->k);
  out << " start=" << spec.start;
  return out.str();
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad_spec(const std::string& what) { fail(ErrorKind::ParseError, "spec string: " + what); }

Rational spec_rational(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    bad_spec("bad number '" + text + "'");
  }
}

int spec_bit(const std::string& text) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  bad_spec("sign flags must be 0 or 1, got '" + text + "'");
}

}  // namespace

TriangularSumSpec parse_triangular_spec(std::string_view text) {
  TriangularSumSpec spec;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) bad_spec("expected key=value, got '" + token + "'");
    std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    auto parts = split(value, ',');
    if (key == "quad") {
      if (parts.size() != 6) bad_spec("quad needs six values");
      for (std::size_t i = 0; i < 6; ++i) spec.quad[i] = spec_rational(parts[i]);
      if (spec.quad[5] == 0) bad_spec("quad denominator F is zero");
    } else if (key == "signs") {
      if (parts.size() != 2) bad_spec("signs needs two values");
      spec.sign_n = spec_bit(parts[0]);
      spec.sign_m = spec_bit(parts[1]);
    } else if (key == "range") {
      if (value == "abs") spec.range = MRange::Abs;
      else if (value == "half") spec.range = MRange::HalfAbs;
      else if (value == "lower") spec.range = MRange::Lower;
      else if (value == "atmost") spec.range = MRange::AtMostN;
      else bad_spec("unknown range '" + value + "'");
    } else if (key == "extra") {
      if (value == "none") {
        spec.extra.reset();
        continue;
      }
      if (parts.size() != 4) bad_spec("extra needs eps,alpha,beta,k");
      ExtraFactor x;
      if (parts[0] == "1" || parts[0] == "+1") x.eps = 1;
      else if (parts[0] == "-1") x.eps = -1;
      else bad_spec("extra sign must be 1 or -1");
      x.alpha = spec_rational(parts[1]);
      x.beta = spec_rational(parts[2]);
      x.k = spec_rational(parts[3]);
      spec.extra = x;
    } else if (key == "start") {
      Rational s = spec_rational(value);
      if (!is_integer(s) || s < 0) bad_spec("start must be a nonnegative integer");
      spec.start = static_cast<long>(to_int64(s));
    } else {
      bad_spec("unknown key '" + key + "'");
    }
  }
  return spec;
}

namespace {

// One summand family: sign * q^{(A n^2 + B m^2 + C n + D m + E)/F}.
struct Component {
  Rational A, B, C, D, E, F;
  int coeff;
};

// Lower bound (a2 n^2 + a1 n + a0)/F for the row minimum of a component.
struct RowBound {
  Rational a2, a1, a0, F;

  Rational at(long n) const {
    Rational nn(n);
    return (a2 * nn * nn + a1 * nn + a0) / F;
  }
  // From which n on the bound is nondecreasing.
  Rational vertex() const { return a2 > 0 ? Rational(-a1 / (2 * a2)) : Rational(0); }
};

RowBound row_bound(const Component& c, MRange range) {
  if (range == MRange::AtMostN) {
    if (c.B <= 0) fail(ErrorKind::NonConvergent, "inner sum over m <= n is unbounded below");
    return RowBound{c.A, c.C, c.E - c.D * c.D / (4 * c.B), c.F};
  }
  Rational lo, hi;
  switch (range) {
    case MRange::Abs: lo = -1, hi = 1; break;
    case MRange::HalfAbs: lo = Rational(-1, 2), hi = Rational(1, 2); break;
    default: lo = 0, hi = 1; break;
  }
  // m = lambda n with lambda in [lo, hi].
  Rational quad_min = c.B >= 0 ? (lo <= 0 && hi >= 0 ? c.A : c.A + c.B * std::min(lo * lo, hi * hi))
                               : c.A + c.B * std::max(lo * lo, hi * hi);
  Rational lin_min = c.C + std::min(Rational(c.D * lo), Rational(c.D * hi));
  return RowBound{quad_min, lin_min, c.E, c.F};
}

}  // namespace

QSeries eval_triangular_sum(const TriangularSumSpec& spec, const Rational& order) {
  auto [A, B, C, D, E, F] = spec.quad;
  if (F == 0) fail(ErrorKind::InvalidArgument, "quad denominator F is zero");
  if (F < 0) A = -A, B = -B, C = -C, D = -D, E = -E, F = -F;
  std::vector<Component> comps{{A, B, C, D, E, F, 1}};
  if (spec.extra) {
    const auto& x = *spec.extra;
    comps.push_back({A, B, C + F * x.beta, D + F * x.alpha, E + F * x.k, F, x.eps});
  }
  std::vector<RowBound> bounds;
  std::int64_t den = 1;
  for (const auto& c : comps) {
    RowBound b = row_bound(c, spec.range);
    if (b.a2 < 0 || (b.a2 == 0 && b.a1 <= 0))
      fail(ErrorKind::NonConvergent, "row-minimum exponent of the triangular sum does not increase");
    bounds.push_back(b);
    den = lcm64(den, detail::grid_den({c.A / c.F, c.B / c.F, c.C / c.F, c.D / c.F, c.E / c.F}));
  }
  detail::TermAccumulator acc(den);
  auto visit = [&](const Component& c, long n, long m) {
    Rational nn(n), mm(m);
    Rational e = (c.A * nn * nn + c.B * mm * mm + c.C * nn + c.D * mm + c.E) / c.F;
    if (e > order) return;
    if (e < 0)
      fail(ErrorKind::InvalidArgument, "negative exponent at n = " + std::to_string(n) + ", m = " + std::to_string(m));
    long parity = (spec.sign_n ? n : 0) + (spec.sign_m ? m : 0);
    int sign = parity % 2 == 0 ? c.coeff : -c.coeff;
    acc.add(e, Rational(sign));
  };
  for (long n = spec.start;; ++n) {
    bool done = true;
    for (const auto& b : bounds)
      if (b.at(n) <= order || Rational(n) < b.vertex()) done = false;
    if (done) break;
    for (const auto& c : comps) {
      switch (spec.range) {
        case MRange::Abs:
          for (long m = -n; m <= n; ++m) visit(c, n, m);
          break;
        case MRange::HalfAbs:
          for (long m = -(n / 2); m <= n / 2; ++m) visit(c, n, m);
          break;
        case MRange::Lower:
          for (long m = 0; m <= n; ++m) visit(c, n, m);
          break;
        case MRange::AtMostN: {
          Rational nn(n);
          detail::for_each_in_parabola(c.B / c.F, c.D / c.F, (c.A * nn * nn + c.C * nn + c.E) / c.F, std::nullopt,
                                       std::int64_t{n}, order, [&](std::int64_t m) { visit(c, n, m); });
          break;
        }
      }
    }
  }
  return acc.finish(order);
}

}  // namespace qhecke
