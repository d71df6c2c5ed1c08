#include "qhecke/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "qhecke/error.hpp"

namespace qhecke {

namespace {

// (n, m) = (n0 + nR R + nS S, m0 + mR R + mS S) on R, S >= 0.
struct ClassMap {
  std::string label;
  long n0, nR, nS, m0, mR, mS;
};

std::vector<ClassMap> class_maps(MRange range) {
  switch (range) {
    case MRange::Abs:
      // (r, s) = (n + m, n - m) in classes (2R, 2S) and (2R+1, 2S+1).
      return {{"A", 0, 1, 1, 0, 1, -1}, {"B", 1, 1, 1, 0, 1, -1}};
    case MRange::HalfAbs:
      // n = 2n' or 2n'+1 with |m| <= n', then the same two classes in n'.
      return {{"A", 0, 2, 2, 0, 1, -1}, {"B", 1, 2, 2, 0, 1, -1}, {"C", 2, 2, 2, 0, 1, -1}, {"D", 3, 2, 2, 0, 1, -1}};
    case MRange::Lower:
      return {{"A", 0, 1, 1, 0, 0, 1}};
    case MRange::AtMostN:
      break;
  }
  fail(ErrorKind::UnsupportedShape, "the decomposer handles |m| <= n, |m| <= floor(n/2) and 0 <= m <= n");
}

struct Summand {
  Rational A, B, C, D, E, F;
  int coeff;
};

QuadrantPiece make_piece(const TriangularSumSpec& spec, const Summand& s, const ClassMap& map, int part) {
  auto value = [&](long R, long S) {
    Rational n(map.n0 + map.nR * R + map.nS * S), m(map.m0 + map.mR * R + map.mS * S);
    return Rational((s.A * n * n + s.B * m * m + s.C * n + s.D * m + s.E) / s.F);
  };
  Rational p00 = value(0, 0), p10 = value(1, 0), p01 = value(0, 1), p11 = value(1, 1), p20 = value(2, 0),
           p02 = value(0, 2);
  // A quadratic is integer-valued on Z^2 exactly when these six values are.
  for (const auto& v : {p00, p10, p01, p11, p20, p02})
    if (!is_integer(v))
      fail(ErrorKind::UnsupportedShape, "exponent is not integral on parity class " + map.label + std::to_string(part));
  std::int64_t at = to_int64(p20 - 2 * p10 + p00), ct = to_int64(p02 - 2 * p01 + p00);
  std::int64_t bt = to_int64(p11 - p10 - p01 + p00);
  std::int64_t t = std::gcd(std::gcd(at, bt), ct);
  if (t == 0) fail(ErrorKind::UnsupportedShape, "class " + map.label + std::to_string(part) + " has no quadratic part");
  HeckeParams params{static_cast<long>(at / t), static_cast<long>(bt / t), static_cast<long>(ct / t)};
  try {
    params.validate();
  } catch (const Error& e) {
    fail(ErrorKind::UnsupportedShape, "class " + map.label + std::to_string(part) + ": " + e.what());
  }
  // Sign (-1)^{sn n + sm m} = (-1)^{w + u R + v S}.
  long u = spec.sign_n * map.nR + spec.sign_m * map.mR;
  long v = spec.sign_n * map.nS + spec.sign_m * map.mS;
  long w = spec.sign_n * map.n0 + spec.sign_m * map.m0;
  auto parity_sign = [](long k) { return Rational(((k % 2) + 2) % 2 == 0 ? 1 : -1); };
  Monomial x{parity_sign(u + 1), p10 - p00};
  Monomial y{parity_sign(v + 1), p01 - p00};
  Monomial pre{Rational(s.coeff) * parity_sign(w), p00};
  QuadrantPiece piece;
  piece.label = map.label + std::to_string(part);
  piece.part = part;
  piece.term = HeckeTerm{pre, HeckeCall{params, x, y, Monomial::q(Rational(static_cast<long>(t))), HeckeKind::TypeII}};
  return piece;
}

bool same_summand(const HeckeCall& a, const HeckeCall& b) {
  return a.params == b.params && a.x == b.x && a.y == b.y && a.nome == b.nome;
}

// Orientation of a matched pair and the term it produces.
struct Candidate {
  PiecePairing pair;
  HeckeTerm term;
};

std::optional<HeckeTerm> combine(const HeckeTerm& pos, const HeckeTerm& neg) {
  HeckeTerm r = reflect(neg);
  if (!same_summand(pos.call, r.call) || r.prefactor.exp != pos.prefactor.exp) return std::nullopt;
  Rational eta = r.prefactor.coeff / pos.prefactor.coeff;
  HeckeTerm out = pos;
  out.call.kind = eta == 1 ? HeckeKind::TypeII : HeckeKind::TypeI;
  return out;
}

// Ranking of a complete pairing; larger is preferred.
//  1. with an extra factor, the positive sides run over the plain summand's
//     own forms (the completed sum is written in terms of its first half);
//  2. more pairs formed inside one part;
//  3. more plain pieces on the positive side;
//  4. smaller total prefactor exponent over the plain positive pieces;
//  5. lexicographically smallest printed term list (determinism).
struct Score {
  int forms;
  int within;
  int plain_positive;
  Rational neg_kappa;
  std::vector<std::string> printed;

  bool better_than(const Score& o) const {
    if (forms != o.forms) return forms > o.forms;
    if (within != o.within) return within > o.within;
    if (plain_positive != o.plain_positive) return plain_positive > o.plain_positive;
    if (neg_kappa != o.neg_kappa) return neg_kappa > o.neg_kappa;
    return printed < o.printed;
  }
};

std::string form_key(const HeckeTerm& t) {
  HeckeCall c = t.call;
  c.kind = HeckeKind::TypeII;
  return to_string(c) + " @" + to_string(t.prefactor.exp);
}

Score score(const std::vector<QuadrantPiece>& pieces, const std::vector<Candidate>& chosen, bool has_extra) {
  Score s{0, 0, 0, Rational(0), {}};
  std::multiset<std::string> positive, plain;
  for (const auto& p : pieces)
    if (p.part == 1) plain.insert(form_key(p.term));
  for (const auto& c : chosen) {
    const auto& pos = pieces[c.pair.positive];
    const auto& neg = pieces[c.pair.negative];
    positive.insert(form_key(pos.term));
    if (pos.part == neg.part) ++s.within;
    if (pos.part == 1) {
      ++s.plain_positive;
      s.neg_kappa -= pos.term.prefactor.exp;
    }
    s.printed.push_back(to_string(c.term));
  }
  std::sort(s.printed.begin(), s.printed.end());
  s.forms = has_extra && positive == plain ? 1 : 0;
  return s;
}

void search(const std::vector<QuadrantPiece>& pieces, std::vector<bool>& used, std::vector<Candidate>& chosen,
            bool has_extra, std::optional<std::pair<Score, std::vector<Candidate>>>& best) {
  std::size_t first = 0;
  while (first < pieces.size() && used[first]) ++first;
  if (first == pieces.size()) {
    Score s = score(pieces, chosen, has_extra);
    if (!best || s.better_than(best->first)) best = std::make_pair(s, chosen);
    return;
  }
  used[first] = true;
  for (std::size_t j = first + 1; j < pieces.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    for (auto [pos, neg] : {std::pair{first, j}, std::pair{j, first}}) {
      if (auto t = combine(pieces[pos].term, pieces[neg].term)) {
        chosen.push_back(Candidate{PiecePairing{pos, neg}, *t});
        search(pieces, used, chosen, has_extra, best);
        chosen.pop_back();
      }
    }
    used[j] = false;
  }
  used[first] = false;
}

}  // namespace

HeckeTerm reflect(const HeckeTerm& piece) {
  const auto& c = piece.call;
  const Monomial& p = c.nome;
  const long a = c.params.a, b = c.params.b, cc = c.params.c;
  HeckeTerm out = piece;
  out.prefactor = piece.prefactor * c.x.inverse() * c.y.inverse() * p.pow(std::int64_t{a + b + cc});
  out.call.x = c.x.inverse() * p.pow(std::int64_t{2 * a + b});
  out.call.y = c.y.inverse() * p.pow(std::int64_t{b + 2 * cc});
  return out;
}

DecompositionResult decompose(const TriangularSumSpec& spec) {
  if (spec.start != 0) fail(ErrorKind::UnsupportedShape, "the decomposer needs the n-sum to start at 0");
  auto [A, B, C, D, E, F] = spec.quad;
  if (F == 0) fail(ErrorKind::InvalidArgument, "quad denominator F is zero");
  std::vector<Summand> parts{{A, B, C, D, E, F, 1}};
  if (spec.extra) {
    const auto& x = *spec.extra;
    parts.push_back({A, B, C + F * x.beta, D + F * x.alpha, E + F * x.k, F, x.eps});
  }
  DecompositionResult out;
  out.input = spec;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& map : class_maps(spec.range))
      out.pieces.push_back(make_piece(spec, parts[i], map, static_cast<int>(i + 1)));

  std::vector<bool> used(out.pieces.size(), false);
  std::vector<Candidate> chosen;
  std::optional<std::pair<Score, std::vector<Candidate>>> best;
  search(out.pieces, used, chosen, spec.extra.has_value(), best);
  if (!best) {
    // Name a piece that no other piece reflects onto.
    for (std::size_t i = 0; i < out.pieces.size(); ++i) {
      bool partner = false;
      for (std::size_t j = 0; j < out.pieces.size() && !partner; ++j)
        partner = j != i && combine(out.pieces[i].term, out.pieces[j].term).has_value();
      if (!partner)
        fail(ErrorKind::PairingFailure, "piece " + out.pieces[i].label + " = " + to_string(out.pieces[i].term) +
                                            " matches no reflected partner");
    }
    fail(ErrorKind::PairingFailure, "the pieces admit no complete pairing");
  }
  for (const auto& c : best->second) {
    out.pairing.push_back(c.pair);
    out.terms.push_back(c.term);
  }
  return out;
}

CheckReport verify_decomposition(const DecompositionResult& d, const Rational& order) {
  return compare_series("decomposition of " + to_string(d.input), eval_terms(d.terms, order),
                        eval_triangular_sum(d.input, order), order);
}

}  // namespace qhecke
