#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wreath/checked.hpp"
#include "wreath/int_matrix.hpp"

namespace wreath {

namespace detail {
struct GroupData {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
};
}  // namespace detail

class GroupElement;

/// A finitely generated abelian group Z_{a_1} x ... x Z_{a_t} x Z^r in
/// invariant-factor form (a_1 | a_2 | ... | a_t, every a_i >= 2).
///
/// Presentations are interned: two presentations with the same invariants
/// share one identity, so equality and the "same ambient group" checks on
/// elements are pointer comparisons. Element coordinates list the torsion
/// factors first, then the free ones.
class GroupPresentation {
 public:
  /// The trivial group.
  GroupPresentation();
  /// Factors equal to 1 are dropped. Throws PreconditionViolated if a factor
  /// is < 1 or the remaining list is not a divisibility chain.
  GroupPresentation(std::size_t free_rank, std::vector<Int> torsion);

  static GroupPresentation free(std::size_t n) { return {n, {}}; }
  static GroupPresentation cyclic(Int n) { return n == 0 ? free(1) : GroupPresentation(0, {n}); }

  std::size_t free_rank() const { return data_->free_rank; }
  const std::vector<Int>& torsion() const { return data_->torsion; }
  /// Number of coordinates; equals the rank (minimum number of generators).
  std::size_t dim() const { return data_->torsion.size() + data_->free_rank; }
  std::size_t rank() const { return dim(); }
  bool is_trivial() const { return dim() == 0; }
  bool is_finite() const { return data_->free_rank == 0; }
  /// Order of a finite group. Throws PreconditionViolated for infinite groups.
  Int order() const;
  /// Modulus of coordinate i: a_i for torsion coordinates, 0 for free ones.
  Int modulus(std::size_t i) const {
    return i < data_->torsion.size() ? data_->torsion[i] : 0;
  }

  GroupElement zero() const;
  /// Reduces torsion coordinates into [0, a_i).
  GroupElement element(std::vector<Int> coords) const;
  /// The i-th standard generator.
  GroupElement generator(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const GroupPresentation& a, const GroupPresentation& b) {
    return a.data_ == b.data_;
  }

 private:
  friend class GroupElement;
  explicit GroupPresentation(const detail::GroupData* d) : data_(d) {}
  const detail::GroupData* data_;
};

/// rank(G) = free rank + number of invariant factors.
inline std::size_t group_rank(const GroupPresentation& g) { return g.rank(); }

class GroupElement {
 public:
  /// Identity of the trivial group.
  GroupElement() : GroupElement(GroupPresentation().zero()) {}

  GroupPresentation group() const { return GroupPresentation(group_); }
  const std::vector<Int>& coords() const { return coords_; }
  Int operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& o);
  GroupElement& operator-=(const GroupElement& o);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator*(Int k, const GroupElement& a);

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.coords_ == b.coords_;
  }
  /// Lexicographic on canonical coordinates. Only meaningful within one group.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords_ <=> b.coords_;
  }

  std::string to_string() const;

 private:
  friend class GroupPresentation;
  GroupElement(const detail::GroupData* g, std::vector<Int> c) : group_(g), coords_(std::move(c)) {}
  void check_same(const GroupElement& o) const;

  const detail::GroupData* group_;
  std::vector<Int> coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& e) const noexcept;
};

/// Word length in the standard generators: |x| on free coordinates and
/// min(x, a - x) on torsion coordinates.
Int geodesic_length(const GroupElement& g);

/// Squared Euclidean norm of the canonical integer lift.
mpz_class euclidean_norm_sq(const GroupElement& g);

/// Canonical integer lift as a row vector.
std::vector<mpz_class> lift(const GroupElement& g);

/// Group generated by a finite list of elements of one ambient group.
class Subgroup {
 public:
  explicit Subgroup(GroupPresentation ambient) : ambient_(ambient) {}
  /// Throws GroupMismatch if a generator lives elsewhere.
  Subgroup(GroupPresentation ambient, std::vector<GroupElement> generators);

  /// The whole ambient group, generated by the standard generators.
  static Subgroup whole(const GroupPresentation& g);

  const GroupPresentation& ambient() const { return ambient_; }
  const std::vector<GroupElement>& generators() const { return gens_; }

 private:
  GroupPresentation ambient_;
  std::vector<GroupElement> gens_;
};

/// Minimum number of generators of the subgroup.
///
/// Builds the relation module of the generators (integer vectors l with
/// sum l_i s_i = 0 in the ambient group) from the left kernel of the lifted
/// generator matrix stacked over the torsion relations, then counts the
/// non-unit invariant factors of Z^k / relations.
std::size_t subgroup_rank(const Subgroup& s);

/// Canonical epimorphism G -> G/N together with its target presentation.
///
/// The map sends the lift x to x * P and reduces coordinate j modulo the j-th
/// target factor, where P holds the kept columns of the Smith transform.
class Quotient {
 public:
  Quotient(const GroupPresentation& g, const Subgroup& n);

  const GroupPresentation& source() const { return source_; }
  const GroupPresentation& target() const { return target_; }
  GroupElement project(const GroupElement& x) const;
  /// Some preimage of y (not canonical beyond determinism).
  GroupElement lift(const GroupElement& y) const;
  /// True iff x lies in N.
  bool in_kernel(const GroupElement& x) const { return project(x).is_zero(); }

 private:
  GroupPresentation source_;
  GroupPresentation target_;
  std::vector<std::vector<Int>> proj_;  // source dim x target dim
  std::vector<std::vector<Int>> lift_;  // target dim x source dim
};

inline Quotient quotient(const GroupPresentation& g, const Subgroup& n) { return Quotient(g, n); }

/// Z^n modulo the row span of `relations`, in invariant-factor form.
/// Normalizes a presentation given by generators and relations.
Quotient present(std::size_t generators, const IntMatrix& relations);

/// Membership test N ∋ x, via a Smith-form solve.
bool contains(const Subgroup& n, const GroupElement& x);

/// True iff both subgroups of the same ambient group coincide.
bool same_subgroup(const Subgroup& a, const Subgroup& b);

namespace detail {
/// Hermite form of the full preimage of N in Z^dim (lifts plus torsion
/// relations). Equal keys iff equal subgroups.
IntMatrix subgroup_key(const Subgroup& s);
}  // namespace detail

inline constexpr std::uint64_t kDefaultBallCap = 10'000'000;

/// Lazy enumeration of the Cayley ball of radius r, lexicographic in the
/// canonical coordinates. Throws BudgetExceeded once more than `cap`
/// elements have been produced.
class BallStream {
 public:
  BallStream(GroupPresentation g, Int radius, std::uint64_t cap = kDefaultBallCap);

  std::optional<GroupElement> next();
  std::uint64_t produced() const { return produced_; }

 private:
  Int first_value(std::size_t j, Int budget) const;
  std::optional<Int> next_value(std::size_t j, Int v, Int budget) const;
  Int cost(std::size_t j, Int v) const;
  void fill(std::size_t from);

  GroupPresentation g_;
  Int radius_;
  std::uint64_t cap_;
  std::uint64_t produced_ = 0;
  bool started_ = false;
  bool done_ = false;
  std::vector<Int> vals_;
  std::vector<Int> prefix_;  // prefix_[j] = cost of vals_[0..j)
};

std::vector<GroupElement> enumerate_ball(const GroupPresentation& g, Int radius,
                                         std::uint64_t cap = kDefaultBallCap);

/// Every element of a finite group, in lexicographic order.
std::vector<GroupElement> all_elements(const GroupPresentation& g,
                                       std::uint64_t cap = kDefaultBallCap);

}  // namespace wreath

template <>
struct std::hash<wreath::GroupElement> : wreath::GroupElementHash {};
