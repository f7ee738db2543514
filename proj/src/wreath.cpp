#include "wreath/wreath.hpp"

#include <algorithm>

#include "wreath/errors.hpp"
#include "wreath/random.hpp"

namespace wreath {

namespace {

void check_groups(const WreathElement& u, const GroupPresentation& A, const GroupPresentation& B) {
  if (!(u.delta.group() == B) || !(u.f.base_group() == B) || !(u.f.coeff_group() == A))
    throw GroupMismatch("wreath element outside " + A.to_string() + " wr " + B.to_string());
}

void check_pair(const WreathElement& u, const WreathElement& v) {
  check_groups(v, u.f.coeff_group(), u.delta.group());
  check_groups(u, u.f.coeff_group(), u.delta.group());
}

}  // namespace

WreathElement wreath_identity(const GroupPresentation& A, const GroupPresentation& B) {
  return {B.zero(), SupportedFunction(A, B)};
}

bool is_identity(const WreathElement& u) { return u.delta.is_zero() && u.f.is_zero(); }

WreathElement wreath_multiply(const WreathElement& u, const WreathElement& v) {
  check_pair(u, v);
  return {u.delta + v.delta, shift(u.f, v.delta) + v.f};
}

WreathElement wreath_inverse(const WreathElement& u) {
  check_groups(u, u.f.coeff_group(), u.delta.group());
  return {-u.delta, -shift(u.f, -u.delta)};
}

WreathElement conjugate(const WreathElement& c, const WreathElement& z) {
  check_pair(c, z);
  return {c.delta, z.f - shift(z.f, c.delta) + shift(c.f, z.delta)};
}

WreathElement commutator(const WreathElement& x, const WreathElement& y) {
  check_pair(x, y);
  SupportedFunction f = (y.f - shift(y.f, x.delta)) - (x.f - shift(x.f, y.delta));
  return {x.delta.group().zero(), std::move(f)};
}

void validate(const OrientableEquation& eq) {
  for (const auto& c : eq.constants) check_groups(c, eq.A, eq.B);
}

WreathElement evaluate(const OrientableEquation& eq, const EquationAssignment& asn) {
  validate(eq);
  if (asn.xs.size() != eq.genus || asn.ys.size() != eq.genus || asn.zs.size() != eq.constants.size())
    throw PreconditionViolated("assignment shape does not match the equation");
  WreathElement acc = wreath_identity(eq.A, eq.B);
  for (std::size_t i = 0; i < eq.genus; ++i) acc = wreath_multiply(acc, commutator(asn.xs[i], asn.ys[i]));
  for (std::size_t j = 0; j < eq.constants.size(); ++j)
    acc = wreath_multiply(acc, conjugate(eq.constants[j], asn.zs[j]));
  return acc;
}

std::variant<Reduction, Unsolvable> reduce_to_qsp(const OrientableEquation& eq) {
  validate(eq);
  GroupElement total = eq.B.zero();
  std::vector<GroupElement> deltas;
  for (const auto& c : eq.constants) {
    total += c.delta;
    deltas.push_back(c.delta);
  }
  if (!total.is_zero()) return Unsolvable{"delta-sum nonzero"};
  Quotient q(eq.B, Subgroup(eq.B, deltas));
  QspInstance inst{eq.A, q.target(), {}, static_cast<Int>(2 * eq.genus)};
  for (const auto& c : eq.constants) inst.fs.push_back(pushforward(c.f, q));
  return Reduction{std::move(inst), std::move(q)};
}

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, const GroupPresentation& A, const GroupPresentation& B, const SolvableParams& p)
      : rng_(seed), A_(A), B_(B), p_(p), ball_b_(enumerate_ball(B, p.radius)) {
    for (auto& a : enumerate_ball(A, p.radius))
      if (!a.is_zero()) ball_a_.push_back(std::move(a));
  }

  WreathElement element() {
    GroupElement d = ball_b_[rng_.below(ball_b_.size())];
    std::vector<SupportedFunction::Term> terms;
    if (!ball_a_.empty()) {
      const std::size_t k = rng_.below(std::min(p_.support, ball_b_.size()) + 1);
      std::vector<GroupElement> pts = ball_b_;
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t r = i + rng_.below(pts.size() - i);
        std::swap(pts[i], pts[r]);
        terms.push_back({pts[i], ball_a_[rng_.below(ball_a_.size())]});
      }
    }
    return {std::move(d), SupportedFunction::from_terms(A_, B_, std::move(terms))};
  }

 private:
  Rng rng_;
  GroupPresentation A_, B_;
  SolvableParams p_;
  std::vector<GroupElement> ball_b_;
  std::vector<GroupElement> ball_a_;
};

}  // namespace

GeneratedEquation gen_solvable(std::uint64_t seed, const GroupPresentation& A, const GroupPresentation& B,
                               const SolvableParams& params) {
  if (params.genus == 0 && params.constants == 0)
    throw PreconditionViolated("an equation needs a commutator or a constant");
  Sampler s(seed, A, B, params);
  GeneratedEquation out;
  auto& eq = out.equation;
  auto& asn = out.assignment;
  eq.A = A;
  eq.B = B;
  eq.genus = params.genus;
  for (std::size_t i = 0; i < params.genus; ++i) {
    asn.xs.push_back(s.element());
    asn.ys.push_back(params.constants == 0 ? asn.xs.back() : s.element());
  }
  WreathElement prefix = wreath_identity(A, B);
  for (std::size_t i = 0; i < params.genus; ++i) prefix = wreath_multiply(prefix, commutator(asn.xs[i], asn.ys[i]));
  for (std::size_t j = 0; j < params.constants; ++j) {
    WreathElement z = s.element();
    asn.zs.push_back(z);
    if (j + 1 < params.constants) {
      WreathElement c = s.element();
      prefix = wreath_multiply(prefix, conjugate(c, z));
      eq.constants.push_back(std::move(c));
    } else {
      eq.constants.push_back(wreath_multiply(wreath_multiply(z, wreath_inverse(prefix)), wreath_inverse(z)));
    }
  }
  return out;
}

namespace {

std::vector<WreathElement> window_elements(const GroupPresentation& A, const GroupPresentation& B, Int radius,
                                           std::uint64_t cap) {
  auto pts = enumerate_ball(B, radius, cap);
  std::vector<GroupElement> vals = A.is_finite() ? all_elements(A, cap) : enumerate_ball(A, radius, cap);
  // Functions supported in the window: one value per window point.
  std::vector<SupportedFunction> fns;
  std::vector<std::size_t> idx(pts.size(), 0);
  for (;;) {
    std::vector<SupportedFunction::Term> terms;
    for (std::size_t i = 0; i < pts.size(); ++i) terms.push_back({pts[i], vals[idx[i]]});
    fns.push_back(SupportedFunction::from_terms(A, B, std::move(terms)));
    if (fns.size() > cap) throw BudgetExceeded("too many window functions");
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == vals.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  std::vector<WreathElement> out;
  for (const auto& d : pts)
    for (const auto& f : fns) out.push_back({d, f});
  return out;
}

}  // namespace

BruteForceResult equation_brute_force(const OrientableEquation& eq, Int radius, std::uint64_t max_assignments) {
  validate(eq);
  auto cands = window_elements(eq.A, eq.B, radius, max_assignments);
  const std::size_t vars = 2 * eq.genus + eq.constants.size();
  long double total = 1;
  for (std::size_t i = 0; i < vars; ++i) total *= static_cast<long double>(cands.size());
  if (total > static_cast<long double>(max_assignments))
    throw BudgetExceeded("equation brute force would try more than " + std::to_string(max_assignments) +
                         " assignments");
  BruteForceResult res;
  std::vector<std::size_t> idx(vars, 0);
  for (;;) {
    EquationAssignment asn;
    for (std::size_t i = 0; i < eq.genus; ++i) {
      asn.xs.push_back(cands[idx[2 * i]]);
      asn.ys.push_back(cands[idx[2 * i + 1]]);
    }
    for (std::size_t j = 0; j < eq.constants.size(); ++j) asn.zs.push_back(cands[idx[2 * eq.genus + j]]);
    ++res.tried;
    if (is_identity(evaluate(eq, asn))) {
      res.solvable = true;
      res.witness = std::move(asn);
      return res;
    }
    std::size_t i = 0;
    while (i < vars && ++idx[i] == cands.size()) idx[i++] = 0;
    if (i == vars) break;
  }
  return res;
}

}  // namespace wreath
