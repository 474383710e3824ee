#pragma once

#include <cstdint>

#include "certify/poly.hpp"

namespace certify {

struct GeneratorParams {
  enum class Kind { Polynomial, Signomial };
  Kind kind = Kind::Polynomial;
  int n = 2;
  int degree = 6;
  int terms = 8;  // target support size, clipped up to fit the scaffold
  std::uint64_t seed = 1;
};

// Deterministic in the seed. Polynomial instances carry a positive constant,
// even axis terms of full degree and mixed inner terms inside that simplex,
// so every non-square term is coverable with constant weight. Signomial
// instances put positive terms on a cross-polytope scaffold and negative
// terms strictly inside it.
SparsePolynomial generate_instance(const GeneratorParams& params);

}  // namespace certify
