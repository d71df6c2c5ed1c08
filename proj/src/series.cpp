#include "qhecke/series.hpp"

#include <algorithm>
#include <sstream>

#include "qhecke/error.hpp"

namespace qhecke {

Order min_order(const Order& a, const Order& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

Order shift_order(const Order& o, const Rational& by) {
  if (!o) return std::nullopt;
  return Rational(*o + by);
}

bool order_at_least(const Order& o, const Rational& bound) { return !o || *o >= bound; }

std::string to_string(const Order& o) { return o ? to_string(*o) : std::string("inf"); }

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::pow(std::int64_t n) const {
  return Monomial{ipow(coeff, n), exp * Rational(static_cast<long>(n))};
}

Monomial Monomial::pow(const Rational& e) const {
  if (is_integer(e)) return pow(to_int64(e));
  if (coeff != 1)
    fail(ErrorKind::InvalidArgument,
         "fractional power " + to_string(e) + " of monomial with coefficient " + to_string(coeff));
  return Monomial{Rational(1), exp * e};
}

Monomial Monomial::inverse() const {
  if (coeff == 0) fail(ErrorKind::InvalidArgument, "inverse of the zero monomial");
  return Monomial{1 / coeff, -exp};
}

std::string to_string(const Monomial& m) {
  if (m.coeff == 0) return "0";
  std::string c;
  if (m.exp == 0) return to_string(m.coeff);
  if (m.coeff == -1)
    c = "-";
  else if (m.coeff != 1)
    c = to_string(m.coeff) + "*";
  if (m.exp == 1) return c + "q";
  if (is_integer(m.exp) && m.exp > 0) return c + "q^" + to_string(m.exp);
  return c + "q^{" + to_string(m.exp) + "}";
}

void require_nome(const Monomial& nome) {
  if (nome.exp <= 0 || (nome.coeff != 1 && nome.coeff != -1))
    fail(ErrorKind::InvalidArgument, "nome must be +-q^t with t > 0, got " + to_string(nome));
}

// ---------------------------------------------------------------------------
// QSeries construction and access

QSeries QSeries::zero(Order order) {
  QSeries s;
  s.order_ = std::move(order);
  return s;
}

QSeries QSeries::constant(const Rational& c, Order order) {
  return monomial(Monomial::scalar(c), std::move(order));
}

QSeries QSeries::monomial(const Monomial& m, Order order) {
  return from_terms({Term{m.exp, m.coeff}}, std::move(order));
}

QSeries QSeries::from_terms(const std::vector<Term>& terms, Order order) {
  std::int64_t den = 1;
  for (const auto& t : terms) den = lcm64(den, den64(t.exp));
  if (terms.empty()) return zero(std::move(order));
  std::int64_t lo = 0, hi = 0;
  bool first = true;
  for (const auto& t : terms) {
    std::int64_t k = to_int64(Rational(t.exp * den));
    if (first || k < lo) lo = k;
    if (first || k > hi) hi = k;
    first = false;
  }
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& t : terms) c[static_cast<std::size_t>(to_int64(Rational(t.exp * den)) - lo)] += t.coeff;
  return from_grid(den, lo, std::move(c), std::move(order));
}

QSeries QSeries::from_grid(std::int64_t den, std::int64_t lo, std::vector<Rational> coeffs, Order order) {
  if (den <= 0) fail(ErrorKind::InvalidArgument, "granularity must be positive");
  QSeries s;
  s.den_ = den;
  s.lo_ = lo;
  s.c_ = std::move(coeffs);
  s.order_ = std::move(order);
  s.normalize();
  return s;
}

std::int64_t QSeries::hi_index_bound(std::int64_t den) const {
  return to_int64(floor_of(Rational(*order_ * Rational(static_cast<long>(den)))));
}

void QSeries::normalize() {
  if (order_ && !c_.empty()) {
    std::int64_t max_num = hi_index_bound(den_);
    std::int64_t keep = max_num - lo_ + 1;
    if (keep <= 0)
      c_.clear();
    else if (static_cast<std::size_t>(keep) < c_.size())
      c_.resize(static_cast<std::size_t>(keep));
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    lo_ += static_cast<std::int64_t>(lead);
  }
}

QSeries QSeries::regridded(std::int64_t den) const {
  if (den == den_) return *this;
  std::int64_t k = den / den_;
  QSeries s;
  s.den_ = den;
  s.order_ = order_;
  s.lo_ = lo_ * k;
  if (!c_.empty()) {
    s.c_.resize((c_.size() - 1) * static_cast<std::size_t>(k) + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i * static_cast<std::size_t>(k)] = c_[i];
  }
  return s;
}

std::optional<Rational> QSeries::valuation() const {
  if (c_.empty()) return std::nullopt;
  return make_rational(static_cast<long>(lo_), static_cast<long>(den_));
}

Rational QSeries::valuation_or_order() const {
  if (!c_.empty()) return *valuation();
  if (!order_) fail(ErrorKind::InvalidArgument, "valuation of the exact zero series");
  return *order_;
}

Rational QSeries::leading_coeff() const {
  if (c_.empty()) fail(ErrorKind::ZeroSeries, "leading coefficient of a zero series");
  return c_.front();
}

Rational QSeries::coeff(const Rational& e) const {
  if (order_ && e > *order_)
    fail(ErrorKind::InsufficientOrder, "coefficient at " + to_string(e) + " beyond order " + to_string(*order_));
  Rational scaled = e * Rational(static_cast<long>(den_));
  if (!is_integer(scaled)) return Rational(0);
  std::int64_t k = to_int64(scaled) - lo_;
  if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

std::vector<Term> QSeries::terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      out.push_back(Term{make_rational(static_cast<long>(lo_ + static_cast<std::int64_t>(i)), static_cast<long>(den_)), c_[i]});
  return out;
}

std::size_t QSeries::term_count() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& r) { return r != 0; }));
}

bool QSeries::has_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.get_den() == 1; });
}

std::optional<Monomial> QSeries::as_monomial() const {
  if (order_ || term_count() != 1) return std::nullopt;
  return Monomial{c_.front(), *valuation()};
}

QSeries QSeries::truncated(const Rational& order) const {
  QSeries s = *this;
  s.order_ = min_order(order_, order);
  s.normalize();
  return s;
}

// ---------------------------------------------------------------------------
// Arithmetic

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

QSeries& QSeries::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    lo_ = 0;
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

QSeries& QSeries::operator+=(const QSeries& b) {
  std::int64_t den = lcm64(den_, b.den_);
  QSeries a = regridded(den);
  QSeries bb = b.regridded(den);
  a.order_ = min_order(a.order_, bb.order_);
  if (bb.c_.empty()) {
    a.normalize();
    *this = std::move(a);
    return *this;
  }
  if (a.c_.empty()) {
    bb.order_ = a.order_;
    bb.normalize();
    *this = std::move(bb);
    return *this;
  }
  std::int64_t lo = std::min(a.lo_, bb.lo_);
  std::int64_t hi = std::max(a.lo_ + static_cast<std::int64_t>(a.c_.size()), bb.lo_ + static_cast<std::int64_t>(bb.c_.size()));
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[static_cast<std::size_t>(a.lo_ - lo) + i] = std::move(a.c_[i]);
  for (std::size_t i = 0; i < bb.c_.size(); ++i) c[static_cast<std::size_t>(bb.lo_ - lo) + i] += bb.c_[i];
  a.lo_ = lo;
  a.c_ = std::move(c);
  a.normalize();
  *this = std::move(a);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& b) { return *this += -b; }

QSeries operator*(const QSeries& a, const Monomial& m) {
  if (m.coeff == 0) return QSeries::zero(a.order_ ? Order(Rational(*a.order_ + m.exp)) : std::nullopt);
  std::int64_t den = lcm64(a.den_, den64(m.exp));
  QSeries s = a.regridded(den);
  s.lo_ += to_int64(Rational(m.exp * Rational(static_cast<long>(den))));
  if (s.order_) *s.order_ += m.exp;
  for (auto& c : s.c_) c *= m.coeff;
  return s;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  if ((a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero())) return QSeries::zero();
  Order order;
  if (a.order_) order = *a.order_ + b.valuation_or_order();
  if (b.order_) order = min_order(order, Order(Rational(*b.order_ + a.valuation_or_order())));

  std::int64_t den = lcm64(a.den_, b.den_);
  QSeries x = a.regridded(den);
  QSeries y = b.regridded(den);
  QSeries out;
  out.den_ = den;
  out.order_ = order;
  if (x.c_.empty() || y.c_.empty()) return out;

  std::int64_t lo = x.lo_ + y.lo_;
  std::int64_t hi = x.lo_ + static_cast<std::int64_t>(x.c_.size()) - 1 + y.lo_ + static_cast<std::int64_t>(y.c_.size()) - 1;
  if (order) hi = std::min(hi, out.hi_index_bound(den));
  if (hi < lo) return out;
  out.lo_ = lo;
  out.c_.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));

  // Iterate the sparser factor in the outer loop; theta functions are sparse.
  const QSeries* outer = &x;
  const QSeries* inner = &y;
  if (x.term_count() > y.term_count()) std::swap(outer, inner);
  std::vector<std::size_t> inner_nz;
  for (std::size_t j = 0; j < inner->c_.size(); ++j)
    if (inner->c_[j] != 0) inner_nz.push_back(j);
  Rational tmp;
  for (std::size_t i = 0; i < outer->c_.size(); ++i) {
    const Rational& ci = outer->c_[i];
    if (ci == 0) continue;
    std::int64_t base = outer->lo_ + static_cast<std::int64_t>(i) + inner->lo_ - lo;
    for (std::size_t j : inner_nz) {
      std::int64_t k = base + static_cast<std::int64_t>(j);
      if (k > hi - lo) break;
      mpq_mul(tmp.get_mpq_t(), ci.get_mpq_t(), inner->c_[j].get_mpq_t());
      mpq_add(out.c_[static_cast<std::size_t>(k)].get_mpq_t(), out.c_[static_cast<std::size_t>(k)].get_mpq_t(), tmp.get_mpq_t());
    }
  }
  out.normalize();
  return out;
}

QSeries inverse(const QSeries& a, const Order& cap) {
  if (a.c_.empty()) fail(ErrorKind::ZeroSeries, "inverse of a series that vanishes to order " + to_string(a.order_));
  Rational v = *a.valuation();
  Order order = a.order_ ? Order(Rational(*a.order_ - 2 * v)) : std::nullopt;
  order = min_order(order, cap);
  if (!order) {
    if (auto m = a.as_monomial()) return QSeries::monomial(m->inverse());
    fail(ErrorKind::InsufficientOrder, "inverse of an exact polynomial needs an order cap");
  }
  QSeries out;
  out.den_ = a.den_;
  out.order_ = order;
  out.lo_ = -a.lo_;
  std::int64_t hi = out.hi_index_bound(a.den_);
  if (hi < out.lo_) return out;
  std::size_t n = static_cast<std::size_t>(hi - out.lo_ + 1);
  out.c_.assign(n, Rational(0));
  Rational inv_lead = 1 / a.c_.front();
  out.c_[0] = inv_lead;
  std::vector<std::size_t> nz;
  for (std::size_t i = 1; i < a.c_.size(); ++i)
    if (a.c_[i] != 0) nz.push_back(i);
  Rational acc, tmp;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    for (std::size_t i : nz) {
      if (i > k) break;
      mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), out.c_[k - i].get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
    }
    if (acc != 0) out.c_[k] = -acc * inv_lead;
  }
  out.normalize();
  return out;
}

QSeries divide(const QSeries& a, const QSeries& b, const Order& cap) {
  Order inv_cap;
  if (cap) inv_cap = *cap - a.valuation_or_order();
  return a * inverse(b, inv_cap);
}

QSeries pow(const QSeries& a, std::int64_t k, const Order& cap) {
  if (k < 0) return inverse(pow(a, -k, std::nullopt), cap);
  QSeries result = QSeries::constant(Rational(1));
  QSeries base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

QSeries times_one_minus(const QSeries& s, const Monomial& w) { return s - s * w; }

QSeries over_one_minus(const QSeries& s, const Monomial& w, const Order& cap) {
  if (w.exp <= 0) fail(ErrorKind::InvalidArgument, "over_one_minus needs a positive exponent");
  Order order = min_order(s.order_, cap);
  if (!order) fail(ErrorKind::InsufficientOrder, "geometric expansion needs an order cap");
  if (s.c_.empty()) return QSeries::zero(order);
  std::int64_t den = lcm64(s.den_, den64(w.exp));
  QSeries out = s.regridded(den);
  out.order_ = order;
  std::int64_t hi = out.hi_index_bound(den);
  if (hi < out.lo_) return QSeries::zero(order);
  out.c_.resize(static_cast<std::size_t>(hi - out.lo_ + 1));
  std::size_t step = static_cast<std::size_t>(to_int64(Rational(w.exp * Rational(static_cast<long>(den)))));
  for (std::size_t k = step; k < out.c_.size(); ++k)
    if (out.c_[k - step] != 0) out.c_[k] += w.coeff * out.c_[k - step];
  out.normalize();
  return out;
}

std::optional<Mismatch> first_mismatch(const QSeries& a, const QSeries& b, const Rational& upto) {
  if (!order_at_least(a.order(), upto) || !order_at_least(b.order(), upto))
    fail(ErrorKind::InsufficientOrder, "comparison beyond attained order");
  QSeries d = (a - b).truncated(upto);
  if (d.is_zero()) return std::nullopt;
  Rational e = *d.valuation();
  return Mismatch{e, a.coeff(e), b.coeff(e)};
}

// ---------------------------------------------------------------------------
// Pochhammer symbols

QSeries poch_finite(const Monomial& x, const Monomial& nome, std::int64_t n, const Order& order) {
  require_nome(nome);
  if (n < 0) fail(ErrorKind::InvalidArgument, "finite Pochhammer length must be nonnegative");
  QSeries out = QSeries::constant(Rational(1));
  Monomial factor = x;
  for (std::int64_t i = 0; i < n; ++i) {
    if (factor.is_zero()) break;
    // Once the factors have positive exponent nothing below the bound moves.
    if (order && factor.exp > 0 && out.is_exact()) out = out.truncated(*order);
    out = times_one_minus(out, factor);
    factor = factor * nome;
  }
  if (order) out = out.truncated(*order);
  return out;
}

QSeries poch_inf(const Monomial& x, const Monomial& nome, const Rational& order) {
  require_nome(nome);
  if (x.is_zero()) return QSeries::constant(Rational(1), order);
  // Factors with nonpositive exponent are multiplied exactly first; they fix
  // the valuation that decides how far the positive factors must be taken.
  QSeries head = QSeries::constant(Rational(1));
  Monomial factor = x;
  while (factor.exp <= 0) {
    head = times_one_minus(head, factor);
    factor = factor * nome;
  }
  if (head.is_zero()) return QSeries::zero(order);
  Rational v = head.valuation_or_order();
  QSeries out = head.truncated(order);
  while (factor.exp + v <= order) {
    out = times_one_minus(out, factor);
    factor = factor * nome;
  }
  return out;
}

std::string to_string(const QSeries& s, std::size_t max_terms) {
  std::ostringstream os;
  auto ts = s.terms();
  if (ts.empty()) os << "0";
  std::size_t shown = 0;
  for (const auto& t : ts) {
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    Monomial m{t.coeff, t.exp};
    std::string piece = to_string(m);
    if (shown == 0)
      os << piece;
    else if (piece[0] == '-')
      os << " - " << piece.substr(1);
    else
      os << " + " << piece;
    ++shown;
  }
  if (s.order()) os << " + O(q^" << to_string(*s.order()) << "+)";
  return os.str();
}

QSeries evaluate_to(const Rational& N, const std::function<QSeries(const Rational&)>& build) {
  Rational w = N;
  for (int attempt = 0; attempt < 12; ++attempt) {
    QSeries s = build(w);
    if (order_at_least(s.order(), N)) return s.truncated(N);
    Rational deficit = N - *s.order();
    w += deficit + 1;
  }
  fail(ErrorKind::InsufficientOrder, "could not reach order " + to_string(N));
}

QSeries product_to(const Rational& N, const Monomial& pre, const std::vector<Factor>& factors) {
  if (pre.is_zero()) return QSeries::zero(N);
  Rational T = N - pre.exp;
  std::vector<QSeries> probe;
  std::vector<Rational> val;
  probe.reserve(factors.size());
  for (const auto& f : factors) {
    QSeries s = f.build(T);
    if (f.inverted && s.is_zero()) {
      Rational wider = T + (T < 0 ? -T : T) + 16;
      s = f.build(wider);
      if (s.is_zero()) fail(ErrorKind::ZeroSeries, "denominator vanishes to order " + to_string(wider));
    } else if (!f.inverted && s.is_zero() && T < 0) {
      // An empty probe only bounds the valuation by T; look a little further
      // so the other factors are not sized against that bound.
      QSeries wide = f.build(Rational(16));
      if (!wide.is_zero()) s = std::move(wide);
    }
    val.push_back(f.inverted ? Rational(-*s.valuation()) : s.valuation_or_order());
    probe.push_back(std::move(s));
  }
  Rational total = 0;
  for (const auto& v : val) total += v;
  QSeries out = QSeries::constant(Rational(1));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    // Cutting a piece below its valuation would lower the bound the other
    // factors were sized against.
    Rational need = T - (total - val[i]);
    if (need < val[i]) need = val[i];
    QSeries piece;
    if (!factors[i].inverted) {
      piece = order_at_least(probe[i].order(), need) ? probe[i].truncated(need) : factors[i].build(need);
    } else {
      Rational v = -val[i];
      Rational src = need + 2 * v;
      QSeries a = order_at_least(probe[i].order(), src) ? probe[i] : factors[i].build(src);
      piece = inverse(a, Order(need));
    }
    out = out * piece;
  }
  return (out * pre).truncated(N);
}

}  // namespace qhecke
