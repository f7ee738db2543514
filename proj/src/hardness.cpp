#include "wreath/hardness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wreath/checked.hpp"
#include "wreath/errors.hpp"

namespace wreath {

ThreePartInstance::ThreePartInstance(std::vector<Int> values) : values_(std::move(values)) {
  if (values_.empty() || values_.size() % 3 != 0)
    throw PreconditionViolated("3PART needs 3k values with k >= 1");
  Int sum = 0;
  for (Int v : values_) {
    if (v <= 0) throw PreconditionViolated("3PART values must be positive");
    sum = checked_add(sum, v);
  }
  if (sum % k() != 0) throw PreconditionViolated("3PART values do not sum to a multiple of k");
  target_ = sum / k();
  for (Int v : values_)
    if (!(checked_mul(4, v) > target_ && checked_mul(2, v) < target_))
      throw PreconditionViolated("3PART value " + std::to_string(v) + " outside the window (L/4, L/2) for L = " +
                                 std::to_string(target_));
}

ZoeInstance::ZoeInstance(std::vector<std::vector<Int>> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw PreconditionViolated("ZOE matrix must be square");
    for (Int v : r)
      if (v != 0 && v != 1) throw PreconditionViolated("ZOE matrix entries must be 0 or 1");
  }
}

namespace {

// Sum of y copies of a at the points 0, b, ..., (y-1) b, shifted to start at `start`.
SupportedFunction run(const GroupElement& a, const GroupElement& b, Int y, const GroupElement& start) {
  const GroupPresentation& B = b.group();
  std::vector<SupportedFunction::Term> terms;
  for (Int i = 0; i < y; ++i) terms.push_back({start + i * b, a});
  return SupportedFunction::from_terms(a.group(), B, std::move(terms));
}

void check_unary(const ThreePartInstance& t, Int cap) {
  if (checked_mul(t.target(), t.k()) > cap)
    throw PreconditionViolated("3PART instance too large: L*k = " + std::to_string(t.target() * t.k()) +
                               " exceeds the cap " + std::to_string(cap));
}

QspInstance runs_instance(const ThreePartInstance& t, const GroupElement& a, const GroupElement& b,
                          SupportedFunction extra) {
  const GroupPresentation& B = b.group();
  QspInstance inst{a.group(), B, {}, 0};
  for (Int v : t.values()) inst.fs.push_back(run(a, b, v, B.zero()));
  const Int L = t.target();
  SupportedFunction c = std::move(extra);
  for (Int i = 0; i < t.k(); ++i) c += run(a, b, L, checked_mul(checked_add(L, 1), i) * b);
  inst.fs.push_back(-c);
  return inst;
}

}  // namespace

QspInstance gen_3part_h0(const ThreePartInstance& t, const GroupElement& a, const GroupElement& b, Int unary_cap) {
  if (a.is_zero()) throw PreconditionViolated("gen_3part_h0 needs a nonzero a");
  const GroupPresentation& B = b.group();
  bool infinite = false;
  for (std::size_t j = B.torsion().size(); j < B.dim(); ++j) infinite = infinite || b[j] != 0;
  if (!infinite) throw PreconditionViolated("gen_3part_h0 needs b of infinite order");
  check_unary(t, unary_cap);
  return runs_instance(t, a, b, SupportedFunction(a.group(), B));
}

QspInstance gen_3part_midh(const ThreePartInstance& t, Int h, Int unary_cap) {
  if (h < 1) throw PreconditionViolated("gen_3part_midh needs h >= 1");
  check_unary(t, unary_cap);
  const auto A = GroupPresentation::free(1);
  const auto B = GroupPresentation::free(static_cast<std::size_t>(h));
  const GroupElement a = A.element({1});
  const Int M = checked_mul(t.k(), checked_add(t.target(), 1));
  SupportedFunction sentinels(A, B);
  Int weight = M;
  for (Int i = 1; i < h; ++i) {
    weight = checked_mul(weight, 2);
    const GroupElement bi = B.generator(static_cast<std::size_t>(i - 1));
    sentinels += SupportedFunction::power(weight * a, bi) - SupportedFunction::power(weight * a, 2 * bi);
  }
  QspInstance inst = runs_instance(t, a, B.generator(static_cast<std::size_t>(h - 1)), std::move(sentinels));
  inst.h = h - 1;
  return inst;
}

QspInstance gen_zoe(const ZoeInstance& m) {
  const std::size_t n = m.n();
  const auto A = GroupPresentation::free(n);
  const auto B = GroupPresentation::cyclic(2);
  const GroupElement p0 = B.zero(), p1 = B.element({1});
  QspInstance inst{A, B, {}, 0};
  std::vector<Int> rest(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> col(n);
    for (std::size_t r = 0; r < n; ++r) {
      col[r] = m.rows()[r][i];
      rest[r] -= col[r];
    }
    inst.fs.push_back(SupportedFunction::delta(A.element(col), p0));
  }
  std::vector<Int> minus_ones(n, -1);
  inst.fs.push_back(SupportedFunction::delta(A.element(minus_ones), p0) +
                    SupportedFunction::delta(A.element(rest), p1));
  return inst;
}

Decision solve_3part_bruteforce(const ThreePartInstance& t, std::size_t max_values) {
  if (t.values().size() > max_values)
    throw BudgetExceeded("3PART brute force limited to " + std::to_string(max_values) + " values");
  std::vector<Int> v = t.values();
  std::sort(v.begin(), v.end(), std::greater<>());
  std::vector<bool> used(v.size(), false);
  const Int L = t.target();
  // Always complete the triple containing the first unused value; skip
  // equal values at the same position to avoid repeating work.
  std::function<bool(std::size_t)> place = [&](std::size_t left) -> bool {
    if (left == 0) return true;
    std::size_t first = 0;
    while (used[first]) ++first;
    used[first] = true;
    for (std::size_t j = first + 1; j < v.size(); ++j) {
      if (used[j] || (j > first + 1 && v[j] == v[j - 1] && !used[j - 1])) continue;
      used[j] = true;
      for (std::size_t l = j + 1; l < v.size(); ++l) {
        if (used[l] || (l > j + 1 && v[l] == v[l - 1] && !used[l - 1])) continue;
        if (v[first] + v[j] + v[l] != L) continue;
        used[l] = true;
        if (place(left - 1)) return true;
        used[l] = false;
      }
      used[j] = false;
    }
    used[first] = false;
    return false;
  };
  return place(static_cast<std::size_t>(t.k())) ? Decision::positive : Decision::negative;
}

Decision solve_zoe_bruteforce(const ZoeInstance& m, std::size_t max_n) {
  const std::size_t n = m.n();
  if (n > max_n) throw BudgetExceeded("ZOE brute force limited to n = " + std::to_string(max_n));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) {
      Int s = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (mask >> c & 1) s += m.rows()[r][c];
      ok = s == 1;
    }
    if (ok) return Decision::positive;
  }
  return Decision::negative;
}

}  // namespace wreath
