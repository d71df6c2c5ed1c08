#include "qhecke/rational.hpp"

#include <numeric>

#include "qhecke/error.hpp"

namespace qhecke {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::PoleAtTerm: return "PoleAtTerm";
    case ErrorKind::DegenerateZ: return "DegenerateZ";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownIdentity: return "UnknownIdentity";
    case ErrorKind::InsufficientOrder: return "InsufficientOrder";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::InvalidArgument, "integer out of range: " + z.get_str());
  return z.get_si();
}

std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) fail(ErrorKind::InvalidArgument, "expected an integer, got " + to_string(r));
  return to_int64(r.get_num());
}

mpz_class floor_of(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Rational binom2(const Rational& w) {
  Rational out = w * (w - 1) / 2;
  out.canonicalize();
  return out;
}

Rational ipow(const Rational& c, std::int64_t n) {
  if (c == 1) return Rational(1);
  if (c == -1) return Rational((n % 2 == 0) ? 1 : -1);
  if (n < 0) {
    if (c == 0) fail(ErrorKind::InvalidArgument, "zero raised to a negative power");
    return 1 / ipow(c, -n);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(out.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(n));
  out.canonicalize();
  return out;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t den64(const Rational& r) { return to_int64(mpz_class(r.get_den())); }

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0)
    fail(ErrorKind::ParseError, "malformed rational '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace qhecke
