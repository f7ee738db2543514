#include "wreath/group_ring.hpp"

#include <algorithm>
#include <map>

#include "wreath/errors.hpp"

namespace wreath {

void SupportedFunction::check_same(const SupportedFunction& o) const {
  if (!(A_ == o.A_) || !(B_ == o.B_))
    throw GroupMismatch("functions over " + A_.to_string() + "^" + B_.to_string() + " and " +
                        o.A_.to_string() + "^" + o.B_.to_string());
}

void SupportedFunction::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.point < y.point; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().point == t.point)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(out);
}

SupportedFunction SupportedFunction::from_terms(GroupPresentation a, GroupPresentation b, std::vector<Term> terms) {
  SupportedFunction f(a, b);
  for (const auto& t : terms) {
    if (!(t.point.group() == b)) throw GroupMismatch("support point " + t.point.to_string() + " is not in " + b.to_string());
    if (!(t.coeff.group() == a)) throw GroupMismatch("value " + t.coeff.to_string() + " is not in " + a.to_string());
  }
  f.terms_ = std::move(terms);
  f.normalize();
  return f;
}

SupportedFunction SupportedFunction::delta(const GroupElement& coeff, const GroupElement& point) {
  return from_terms(coeff.group(), point.group(), {{point, coeff}});
}

SupportedFunction SupportedFunction::unity(GroupPresentation a, GroupPresentation b) {
  return delta(a.element(std::vector<Int>(a.dim(), 1)), b.zero());
}

std::vector<GroupElement> SupportedFunction::support() const {
  std::vector<GroupElement> s;
  s.reserve(terms_.size());
  for (const auto& t : terms_) s.push_back(t.point);
  return s;
}

GroupElement SupportedFunction::at(const GroupElement& p) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                             [](const Term& t, const GroupElement& q) { return t.point < q; });
  if (it != terms_.end() && it->point == p) return it->coeff;
  return A_.zero();
}

SupportedFunction SupportedFunction::operator-() const {
  SupportedFunction r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

SupportedFunction& SupportedFunction::operator+=(const SupportedFunction& o) {
  check_same(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->point < j->point)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->point < i->point) {
      out.push_back(*j++);
    } else {
      GroupElement c = i->coeff + j->coeff;
      if (!c.is_zero()) out.push_back({i->point, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

SupportedFunction operator*(Int k, const SupportedFunction& f) {
  SupportedFunction r = f;
  for (auto& t : r.terms_) t.coeff = k * t.coeff;
  std::erase_if(r.terms_, [](const SupportedFunction::Term& t) { return t.coeff.is_zero(); });
  return r;
}

SupportedFunction shift(const SupportedFunction& f, const GroupElement& delta) {
  if (!(delta.group() == f.base_group())) throw GroupMismatch("shift by an element outside the base group");
  if (delta.is_zero()) return f;
  std::vector<SupportedFunction::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) terms.push_back({t.point - delta, t.coeff});
  return SupportedFunction::from_terms(f.coeff_group(), f.base_group(), std::move(terms));
}

GroupElement coeff_multiply(const GroupElement& a, const GroupElement& b) {
  if (!(a.group() == b.group())) throw GroupMismatch("ring product across groups");
  const auto A = a.group();
  std::vector<Int> c(A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) {
    Int m = A.modulus(i);
    c[i] = m == 0 ? checked_mul(a[i], b[i]) : mod_floor(checked_mul(a[i], b[i]), m);
  }
  return A.element(std::move(c));
}

SupportedFunction ring_multiply(const SupportedFunction& f, const SupportedFunction& g) {
  if (!(f.coeff_group() == g.coeff_group()) || !(f.base_group() == g.base_group()))
    throw GroupMismatch("ring product of functions over different groups");
  std::vector<SupportedFunction::Term> terms;
  terms.reserve(f.terms().size() * g.terms().size());
  for (const auto& s : f.terms())
    for (const auto& t : g.terms()) terms.push_back({s.point + t.point, coeff_multiply(s.coeff, t.coeff)});
  return SupportedFunction::from_terms(f.coeff_group(), f.base_group(), std::move(terms));
}

SupportedFunction pushforward(const SupportedFunction& f, const Quotient& q) {
  if (!(q.source() == f.base_group())) throw GroupMismatch("pushforward along a quotient of another group");
  std::vector<SupportedFunction::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) terms.push_back({q.project(t.point), t.coeff});
  return SupportedFunction::from_terms(f.coeff_group(), q.target(), std::move(terms));
}

SupportedFunction pushforward(const SupportedFunction& f, const Subgroup& n) {
  return pushforward(f, Quotient(f.base_group(), n));
}

bool is_zero_mod(const SupportedFunction& f, const Quotient& q) {
  if (f.is_zero()) return true;
  return pushforward(f, q).is_zero();
}

bool is_zero_mod(const SupportedFunction& f, const Subgroup& n) {
  if (f.is_zero()) return true;
  if (n.generators().empty()) return false;
  return is_zero_mod(f, Quotient(f.base_group(), n));
}

SupportedFunction lambda_map(const std::vector<SupportedFunction>& fs, const std::vector<GroupElement>& bs) {
  if (fs.size() != bs.size())
    throw PreconditionViolated("lambda_map needs as many shifts as functions");
  if (fs.empty()) throw PreconditionViolated("lambda_map of an empty list has no ambient group");
  SupportedFunction out(fs[0].coeff_group(), fs[0].base_group());
  for (std::size_t i = 0; i < fs.size(); ++i) out += fs[i] - shift(fs[i], bs[i]);
  return out;
}

GroupElement total_sum(const SupportedFunction& f) {
  GroupElement s = f.coeff_group().zero();
  for (const auto& t : f.terms()) s += t.coeff;
  return s;
}

Int function_size(const SupportedFunction& f) {
  Int s = 0;
  for (const auto& t : f.terms()) s = checked_add(s, checked_add(geodesic_length(t.coeff), geodesic_length(t.point)));
  return s;
}

Int diameter(const SupportedFunction& f) {
  Int d = 0;
  const auto& ts = f.terms();
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) d = std::max(d, geodesic_length(ts[i].point - ts[j].point));
  return d;
}

}  // namespace wreath
