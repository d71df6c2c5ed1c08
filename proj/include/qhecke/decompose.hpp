#pragma once

#include <string>
#include <vector>

#include "qhecke/hecke.hpp"
#include "qhecke/hypergeom.hpp"
#include "qhecke/theta.hpp"

namespace qhecke {

// One positive-quadrant sub-series: prefactor * sum_{R,S>=0} (-1)^{R+S} x^R y^S
// nome^{a binom(R,2) + b R S + c binom(S,2)}. part is 1 for the plain summand
// and 2 for the one carrying the extra factor.
struct QuadrantPiece {
  std::string label;
  int part = 1;
  HeckeTerm term;
};

struct PiecePairing {
  std::size_t positive;  // index into pieces
  std::size_t negative;  // reflected into the negative quadrant
};

struct DecompositionResult {
  TriangularSumSpec input;
  std::vector<QuadrantPiece> pieces;
  std::vector<PiecePairing> pairing;
  std::vector<HeckeTerm> terms;
};

// The negative-quadrant image of a piece under R -> -R-1, S -> -S-1, written
// as prefactor * sum_{R,S<0} over the same kind of summand.
HeckeTerm reflect(const HeckeTerm& piece);

// Splits the triangular sum into parity classes, then pairs every piece with
// the reflection of another into an f (opposite signs) or g (same signs).
// Throws UnsupportedShape when a class does not land on an integral form with
// integer (a, b, c), PairingFailure when some piece has no partner.
DecompositionResult decompose(const TriangularSumSpec& spec);

// Evaluates the emitted terms against direct enumeration.
CheckReport verify_decomposition(const DecompositionResult& d, const Rational& order);

}  // namespace qhecke
