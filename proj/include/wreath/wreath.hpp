#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wreath/abelian.hpp"
#include "wreath/group_ring.hpp"
#include "wreath/qsp.hpp"

namespace wreath {

/// (delta, f) in A wr B with (d1, f1)(d2, f2) = (d1 + d2, f1^{d2} + f2).
struct WreathElement {
  GroupElement delta;
  SupportedFunction f;
  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

WreathElement wreath_identity(const GroupPresentation& A, const GroupPresentation& B);
bool is_identity(const WreathElement& u);

WreathElement wreath_multiply(const WreathElement& u, const WreathElement& v);
/// (delta, f)^{-1} = (-delta, -f^{-delta}).
WreathElement wreath_inverse(const WreathElement& u);
/// z^{-1} c z = (delta_c, f_z (1^0 - 1^{delta_c}) + f_c^{delta_z}).
WreathElement conjugate(const WreathElement& c, const WreathElement& z);
/// [x, y] = x^{-1} y^{-1} x y = (0, f_y (1^0 - 1^{delta_x}) - f_x (1^0 - 1^{delta_y})).
WreathElement commutator(const WreathElement& x, const WreathElement& y);

/// prod_{i<g} [x_i, y_i] * prod_j z_j^{-1} c_j z_j = 1.
struct OrientableEquation {
  GroupPresentation A;
  GroupPresentation B;
  std::size_t genus = 0;
  std::vector<WreathElement> constants;
};

struct EquationAssignment {
  std::vector<WreathElement> xs;
  std::vector<WreathElement> ys;
  std::vector<WreathElement> zs;
};

/// Throws GroupMismatch for constants outside A wr B.
void validate(const OrientableEquation& eq);

/// Left-hand side under the assignment. PreconditionViolated on a shape mismatch.
WreathElement evaluate(const OrientableEquation& eq, const EquationAssignment& asn);

struct Unsolvable {
  std::string reason;
};

/// The QSP instance together with the quotient map B -> B/<delta_c>.
struct Reduction {
  QspInstance instance;
  Quotient base_map;
};

/// Unsolvable("delta-sum nonzero") when sum delta_{c_i} != 0; otherwise the
/// instance (A, B/<delta_c>, pushforwards of f_{c_i}, 2g).
std::variant<Reduction, Unsolvable> reduce_to_qsp(const OrientableEquation& eq);

struct SolvableParams {
  std::size_t genus = 1;
  std::size_t constants = 2;
  Int radius = 3;           // geodesic length bound for sampled shifts and values
  std::size_t support = 3;  // max support size of sampled functions
};

struct GeneratedEquation {
  OrientableEquation equation;
  EquationAssignment assignment;
};

/// Samples x, y, z and c_1..c_{m-1}, then sets c_m = z_m P^{-1} z_m^{-1} where
/// P is the product of everything before the last conjugate. With no
/// constants, y_i = x_i.
GeneratedEquation gen_solvable(std::uint64_t seed, const GroupPresentation& A, const GroupPresentation& B,
                               const SolvableParams& params);

struct BruteForceResult {
  bool solvable = false;
  std::optional<EquationAssignment> witness;
  std::uint64_t tried = 0;
};

/// Tries every assignment whose shifts lie in the radius ball of B, whose
/// functions are supported in that ball and whose values lie in A (if finite)
/// or the radius ball of A. BudgetExceeded past `max_assignments`.
BruteForceResult equation_brute_force(const OrientableEquation& eq, Int radius,
                                      std::uint64_t max_assignments = 50'000'000);

}  // namespace wreath
