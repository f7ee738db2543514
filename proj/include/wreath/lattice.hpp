#pragma once

#include <vector>

#include <gmpxx.h>

#include "wreath/abelian.hpp"
#include "wreath/int_matrix.hpp"

namespace wreath {

using IntVector = std::vector<mpz_class>;
using RatVector = std::vector<mpq_class>;

/// Linearly independent integer vectors of a common length.
struct LatticeBasis {
  std::size_t dim = 0;
  std::vector<IntVector> vectors;
};

IntMatrix to_matrix(const LatticeBasis& b);

/// Gram-Schmidt data: v_i* and mu_ij = <v_i, v_j*> / <v_j*, v_j*>.
struct GramSchmidt {
  std::vector<RatVector> ortho;
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> norm_sq;  // |v_i*|^2
};

GramSchmidt gram_schmidt(const std::vector<IntVector>& vs);

/// LLL reduction with factor 3/4 in exact rational arithmetic. Throws
/// PreconditionViolated on dependent input.
LatticeBasis lll_reduce(const LatticeBasis& basis);

/// Both conditions: |mu_ij| <= 1/2 for j < i, and
/// delta |v_i*|^2 <= |pi_i(v_{i+1})|^2 = |v_{i+1}*|^2 + mu_{i+1,i}^2 |v_i*|^2.
bool is_lll_reduced(const LatticeBasis& basis, const mpq_class& delta = mpq_class(3, 4));

/// Some basis of the lattice spanned by arbitrary integer vectors.
LatticeBasis basis_of_span(const std::vector<IntVector>& vs, std::size_t dim);

/// Rank of a set of rational vectors.
std::size_t rational_rank(const std::vector<RatVector>& vs);

/// v in Span_Q(vectors).
bool span_membership(const std::vector<RatVector>& vectors, const RatVector& v);

/// Integer basis of Span_Q(vs) ∩ Z^dim.
std::vector<IntVector> saturation(const std::vector<IntVector>& vs, std::size_t dim);

/// Lift of an element with each torsion coordinate x in Z_a replaced by its
/// representative of least absolute value (x or x - a).
IntVector symmetric_lift(const GroupElement& g);

/// Squared Euclidean norm of the symmetric lift. This is the norm the
/// bounded-generator construction controls.
mpz_class symmetric_norm_sq(const GroupElement& g);

/// Generators of S of controlled length.
///
/// Lifts the generators to Z^m, takes a basis of the lattice they span,
/// LLL-reduces it and maps the reduced vectors back to B, then drops zero and
/// redundant generators. Every output has symmetric norm at most
/// sqrt(2^(y-1)) * k where y is the rank of the lifted lattice.
/// `k_sq` bounds the squared symmetric norm of every input generator;
/// PreconditionViolated if one exceeds it.
std::vector<GroupElement> bounded_generators(const Subgroup& s, const mpz_class& k_sq);

}  // namespace wreath
