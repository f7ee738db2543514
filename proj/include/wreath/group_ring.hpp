#pragma once

#include <utility>
#include <vector>

#include "wreath/abelian.hpp"

namespace wreath {

/// A finitely supported function B -> A, i.e. an element of the group ring
/// A^B. Terms are kept sorted by support point with zero values pruned.
class SupportedFunction {
 public:
  struct Term {
    GroupElement point;  // in B
    GroupElement coeff;  // in A, nonzero
    friend bool operator==(const Term&, const Term&) = default;
  };

  SupportedFunction() = default;
  SupportedFunction(GroupPresentation a, GroupPresentation b) : A_(a), B_(b) {}

  /// Sums duplicate points and drops zero values.
  static SupportedFunction from_terms(GroupPresentation a, GroupPresentation b, std::vector<Term> terms);
  /// The function with value `coeff` at `point` and 0 elsewhere.
  static SupportedFunction delta(const GroupElement& coeff, const GroupElement& point);
  /// a^b in exponent notation: value a at the point -b.
  static SupportedFunction power(const GroupElement& a, const GroupElement& b) { return delta(a, -b); }
  /// The ring unity 1^0 (all-ones coefficient at 0).
  static SupportedFunction unity(GroupPresentation a, GroupPresentation b);

  const GroupPresentation& coeff_group() const { return A_; }
  const GroupPresentation& base_group() const { return B_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  std::vector<GroupElement> support() const;
  /// f(p); zero outside the support.
  GroupElement at(const GroupElement& p) const;

  SupportedFunction operator-() const;
  SupportedFunction& operator+=(const SupportedFunction& o);
  SupportedFunction& operator-=(const SupportedFunction& o) { return *this += -o; }
  friend SupportedFunction operator+(SupportedFunction f, const SupportedFunction& g) { return f += g; }
  friend SupportedFunction operator-(SupportedFunction f, const SupportedFunction& g) { return f -= g; }
  friend SupportedFunction operator*(Int k, const SupportedFunction& f);

  friend bool operator==(const SupportedFunction& f, const SupportedFunction& g) {
    return f.A_ == g.A_ && f.B_ == g.B_ && f.terms_ == g.terms_;
  }

 private:
  void check_same(const SupportedFunction& o) const;
  void normalize();

  GroupPresentation A_;
  GroupPresentation B_;
  std::vector<Term> terms_;
};

/// f^delta: every support point p moves to p - delta, so f^delta(x) = f(delta + x).
SupportedFunction shift(const SupportedFunction& f, const GroupElement& delta);

/// Multiplication in A, viewed as the ring Z_{a_1} x ... x Z^r with
/// componentwise products.
GroupElement coeff_multiply(const GroupElement& a, const GroupElement& b);

/// Group-ring product: sum over term pairs of (a_i c_j) at p_i + q_j.
SupportedFunction ring_multiply(const SupportedFunction& f, const SupportedFunction& g);

/// phi_*(f)(x) = sum of f(y) over phi(y) = x, as a function on B/N.
SupportedFunction pushforward(const SupportedFunction& f, const Quotient& q);
SupportedFunction pushforward(const SupportedFunction& f, const Subgroup& n);

bool is_zero_mod(const SupportedFunction& f, const Quotient& q);
bool is_zero_mod(const SupportedFunction& f, const Subgroup& n);

/// lambda(f_1..f_k) = f_1 (1^0 - 1^{b_1}) + ... + f_k (1^0 - 1^{b_k}).
SupportedFunction lambda_map(const std::vector<SupportedFunction>& fs, const std::vector<GroupElement>& bs);

/// Sum of all values, an element of A.
GroupElement total_sum(const SupportedFunction& f);

/// sum over terms of |coeff| + |point| (geodesic lengths).
Int function_size(const SupportedFunction& f);

/// Largest Cayley distance between two support points.
Int diameter(const SupportedFunction& f);

}  // namespace wreath
